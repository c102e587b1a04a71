/*
 * scholar_tracker.h - C interface to the scholar-tracker library.
 *
 * All strings are UTF-8 and NUL-terminated. Strings returned through
 * `char** out` parameters are allocated by the library and must be released
 * with st_string_free(). Functions returning st_status store a description
 * of the most recent failure, retrievable on the same thread with
 * st_last_error_message().
 */
#ifndef SCHOLAR_TRACKER_H
#define SCHOLAR_TRACKER_H

#include <stddef.h>
#include <stdint.h>

#if defined(SCHOLAR_TRACKER_BUILDING)
#  define ST_API __attribute__((visibility("default")))
#else
#  define ST_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum st_status {
    ST_OK = 0,
    ST_E_INVALID_ID = 1,
    ST_E_MISSING_USER_PARAM = 2,
    ST_E_NOT_A_NUMBER = 3,
    ST_E_BLOCKED_PAGE = 4,
    ST_E_MALFORMED_PROFILE = 5,
    ST_E_CONFIG_SYNTAX = 6,
    ST_E_CONFIG_INVALID = 7,
    ST_E_ALREADY_TRACKED = 8,
    ST_E_NOT_TRACKED = 9,
    ST_E_STORE_CORRUPT = 10,
    ST_E_STORE_LOCKED = 11,
    ST_E_IO_DENIED = 12,
    ST_E_UNKNOWN_FORMAT = 13,
    ST_E_DUPLICATE_ID = 14,
    ST_E_ID_MISMATCH = 15,
    ST_E_TIME_ORDER = 16,
    ST_E_INVALID_ARGUMENT = 17,
    ST_E_INTERNAL = 99
} st_status;

/* Library version, e.g. "0.1.0". */
ST_API const char* st_version(void);

/* Symbolic name of a status, e.g. "InvalidId". */
ST_API const char* st_status_name(st_status status);

/* Process exit code for a failed command: 2 for usage and configuration
 * errors, 3 for environmental failures (store, I/O), 0 for ST_OK. */
ST_API int st_exit_code_for(st_status status);

/* Message for the last failure on the calling thread ("" if none). */
ST_API const char* st_last_error_message(void);

ST_API void st_string_free(char* s);

/* ---- stateless helpers ------------------------------------------------ */

/* Bare ID or Scholar citations URL -> bare ID. */
ST_API st_status st_extract_scholar_id(const char* input, char** out_id);

/* https://scholar.google.com/citations?user=<id>&hl=en */
ST_API st_status st_profile_url(const char* id, char** out_url);

ST_API st_status st_parse_count(const char* text, int64_t* out_value);

/* 1 if the page is a block/captcha page or lacks every profile marker. */
ST_API int st_detect_block(const char* html, size_t html_len);

/* Profile page -> JSON object with the ResearcherProfile fields. */
ST_API st_status st_parse_profile(const char* html, size_t html_len, const char* id, char** out_json);

ST_API st_status st_compute_h_index(const int64_t* citation_counts, size_t count, int64_t* out_h);

/* ---- transport and clock injection ------------------------------------ */

typedef enum st_transport_result {
    ST_TRANSPORT_OK = 0,
    ST_TRANSPORT_TIMEOUT = 1,
    ST_TRANSPORT_CONNECTION_FAILED = 2
} st_transport_result;

typedef struct st_http_request {
    const char* method;  /* "GET" */
    const char* url;     /* absolute URL */
    const char* headers; /* "Name: value\n" lines */
    int64_t timeout_ms;
} st_http_request;

/* Filled by the callback. The pointers must stay valid until the callback
 * is invoked again or the tracker is closed. `headers` uses the same
 * "Name: value\n" format as requests and may be NULL. */
typedef struct st_http_response {
    int status;
    const char* headers;
    const char* body;
    size_t body_len;
} st_http_response;

typedef st_transport_result (*st_transport_fn)(void* user, const st_http_request* request,
                                               st_http_response* response);

typedef struct st_clock {
    int64_t (*wall_seconds)(void* user);   /* seconds since the Unix epoch, UTC */
    int64_t (*monotonic_ms)(void* user);
    void (*sleep_ms)(void* user, int64_t ms);
    void* user;
} st_clock;

/* ---- tracker handle ---------------------------------------------------- */

typedef struct st_tracker st_tracker;

/* Loads the configuration. `config_path` NULL resolves to
 * $SCHOLAR_TRACKER_CONFIG, then ./config.json. `store_path` non-NULL
 * overrides the configured store directory. */
ST_API st_status st_tracker_open(const char* config_path, const char* store_path, st_tracker** out);
ST_API void st_tracker_close(st_tracker* tracker);

/* Replace the network transport; NULL restores the built-in one. */
ST_API void st_tracker_set_transport(st_tracker* tracker, st_transport_fn fn, void* user);
/* Replace the system clock; NULL restores it. The struct is copied. */
ST_API void st_tracker_set_clock(st_tracker* tracker, const st_clock* clock);
/* Allow `update` to break a store lock older than one hour. */
ST_API void st_tracker_set_force_unlock(st_tracker* tracker, int enabled);
/* Age after which `rank` flags a row as stale (default 7 days). */
ST_API void st_tracker_set_stale_seconds(st_tracker* tracker, int64_t seconds);
/* Receives one line per finished ID during `update`. */
ST_API void st_tracker_set_progress(st_tracker* tracker, void (*fn)(void* user, const char* line), void* user);

/* Accumulated warnings (config unknown keys, discarded partial store
 * lines), newline-separated; clears them. *out is "" when there are none. */
ST_API st_status st_tracker_take_warnings(st_tracker* tracker, char** out);

/* Path of the config file in use and of the store directory. */
ST_API const char* st_tracker_config_path(const st_tracker* tracker);
ST_API const char* st_tracker_store_path(const st_tracker* tracker);

/* Config edits; both save the config file atomically. *out_id receives the
 * normalized ID (may be NULL). */
ST_API st_status st_tracker_add(st_tracker* tracker, const char* id_or_url, char** out_id);
ST_API st_status st_tracker_remove(st_tracker* tracker, const char* id_or_url, char** out_id);

/* Commands. `json` != 0 selects JSON output. */
ST_API st_status st_tracker_list(st_tracker* tracker, int json, char** out);
ST_API st_status st_tracker_rank(st_tracker* tracker, int json, char** out);
ST_API st_status st_tracker_history(st_tracker* tracker, const char* id_or_url, int json, char** out);
/* `format` is "json" or "csv". */
ST_API st_status st_tracker_export(st_tracker* tracker, const char* format, char** out);

/* Fetches every tracked ID and appends snapshots. Returns ST_OK whenever the
 * run itself completed; *out_exit_code is 0 (all updated), 1 (some failed)
 * or 3 (none updated). */
ST_API st_status st_tracker_update(st_tracker* tracker, int json, char** out, int* out_exit_code);

#ifdef __cplusplus
}
#endif

#endif /* SCHOLAR_TRACKER_H */

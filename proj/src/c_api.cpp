#include "scholar_tracker.h"

#include "scholar/commands.hpp"
#include "scholar/config.hpp"
#include "scholar/errors.hpp"
#include "scholar/httplib_transport.hpp"
#include "scholar/metrics.hpp"
#include "scholar/profile_parser.hpp"
#include "scholar/render.hpp"
#include "scholar/snapshot.hpp"

#include <cstdlib>
#include <cstring>
#include <new>
#include <optional>
#include <string>
#include <vector>

namespace {

thread_local std::string last_error;

char* duplicate(std::string_view s)
{
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out == nullptr)
        throw std::bad_alloc();
    std::memcpy(out, s.data(), s.size());
    out[s.size()] = '\0';
    return out;
}

void set_out(char** out, std::string_view s)
{
    if (out != nullptr)
        *out = duplicate(s);
}

template <typename F>
st_status guarded(F&& body) noexcept
{
    try {
        last_error.clear();
        body();
        return ST_OK;
    } catch (const scholar::Error& e) {
        last_error = e.what();
        return static_cast<st_status>(e.code());
    } catch (const std::bad_alloc&) {
        last_error = "out of memory";
    } catch (const std::exception& e) {
        last_error = e.what();
    } catch (...) {
        last_error = "unknown error";
    }
    return ST_E_INTERNAL;
}

void require(const void* p, const char* what)
{
    if (p == nullptr)
        throw scholar::Error(scholar::ErrorCode::InvalidArgument, std::string(what) + " must not be NULL");
}

scholar::Headers parse_header_lines(const char* text)
{
    scholar::Headers headers;
    if (text == nullptr)
        return headers;
    std::string_view rest(text);
    while (!rest.empty()) {
        const auto nl = rest.find('\n');
        std::string_view line = rest.substr(0, nl);
        rest = nl == std::string_view::npos ? std::string_view{} : rest.substr(nl + 1);
        if (!line.empty() && line.back() == '\r')
            line.remove_suffix(1);
        const auto colon = line.find(':');
        if (colon == std::string_view::npos)
            continue;
        std::string_view value = line.substr(colon + 1);
        while (!value.empty() && value.front() == ' ')
            value.remove_prefix(1);
        headers.emplace_back(std::string(line.substr(0, colon)), std::string(value));
    }
    return headers;
}

class CallbackTransport final : public scholar::HttpTransport {
public:
    CallbackTransport(st_transport_fn fn, void* user) : fn_(fn), user_(user) {}

    scholar::TransportResult send(const scholar::HttpRequest& request) override
    {
        std::string header_text;
        for (const auto& [name, value] : request.headers)
            header_text += name + ": " + value + "\n";
        const st_http_request c_request{request.method.c_str(), request.url.c_str(), header_text.c_str(),
                                        static_cast<int64_t>(request.timeout.count())};
        st_http_response c_response{};
        switch (fn_(user_, &c_request, &c_response)) {
        case ST_TRANSPORT_OK: break;
        case ST_TRANSPORT_TIMEOUT: return scholar::TransportFailure::Timeout;
        default: return scholar::TransportFailure::ConnectionFailed;
        }
        scholar::HttpResponse response;
        response.status = c_response.status;
        response.headers = parse_header_lines(c_response.headers);
        if (c_response.body != nullptr)
            response.body.assign(c_response.body, c_response.body_len);
        return response;
    }

private:
    st_transport_fn fn_;
    void* user_;
};

class CallbackClock final : public scholar::Clock {
public:
    explicit CallbackClock(const st_clock& c) : c_(c) {}

    scholar::Timestamp now() override { return scholar::Timestamp(std::chrono::seconds(c_.wall_seconds(c_.user))); }
    std::chrono::milliseconds monotonic() override { return std::chrono::milliseconds(c_.monotonic_ms(c_.user)); }
    void sleep_for(std::chrono::milliseconds d) override { c_.sleep_ms(c_.user, d.count()); }

private:
    st_clock c_;
};

} // namespace

struct st_tracker {
    std::filesystem::path config_path;
    std::string config_path_text;
    scholar::TrackerConfig config;
    std::optional<std::string> store_override;
    std::string store_path;
    std::vector<std::string> warnings;

    st_transport_fn transport_fn = nullptr;
    void* transport_user = nullptr;
    std::optional<st_clock> clock;
    bool force_unlock = false;
    std::chrono::seconds stale_after = scholar::default_stale_after;
    void (*progress_fn)(void*, const char*) = nullptr;
    void* progress_user = nullptr;

    scholar::HttplibTransport network;
    scholar::SystemClock system_clock;

    void refresh_store_path() { store_path = store_override ? *store_override : config.store_path; }

    scholar::SnapshotStore open_store(scholar::StoreMode mode, scholar::Clock& lock_clock)
    {
        scholar::StoreOptions options;
        options.mode = mode;
        options.force_unlock = force_unlock;
        options.clock = &lock_clock;
        auto store = scholar::SnapshotStore::open(store_path, options);
        warnings.insert(warnings.end(), store.warnings().begin(), store.warnings().end());
        return store;
    }

    template <typename F>
    auto with_clock(F&& body)
    {
        if (clock) {
            CallbackClock c(*clock);
            return body(static_cast<scholar::Clock&>(c));
        }
        return body(static_cast<scholar::Clock&>(system_clock));
    }
};

extern "C" {

const char* st_version(void)
{
    return SCHOLAR_TRACKER_VERSION;
}

const char* st_status_name(st_status status)
{
    if (status == ST_OK)
        return "Ok";
    if (status == ST_E_INTERNAL)
        return "Internal";
    return scholar::to_string(static_cast<scholar::ErrorCode>(status));
}

int st_exit_code_for(st_status status)
{
    switch (status) {
    case ST_OK: return 0;
    case ST_E_STORE_CORRUPT:
    case ST_E_STORE_LOCKED:
    case ST_E_IO_DENIED:
    case ST_E_INTERNAL:
        return 3;
    default:
        return 2;
    }
}

const char* st_last_error_message(void)
{
    return last_error.c_str();
}

void st_string_free(char* s)
{
    std::free(s);
}

st_status st_extract_scholar_id(const char* input, char** out_id)
{
    return guarded([&] {
        require(input, "input");
        require(out_id, "out_id");
        set_out(out_id, scholar::extract_scholar_id(input).value());
    });
}

st_status st_profile_url(const char* id, char** out_url)
{
    return guarded([&] {
        require(id, "id");
        require(out_url, "out_url");
        set_out(out_url, scholar::profile_url(scholar::ScholarId::parse(id)));
    });
}

st_status st_parse_count(const char* text, int64_t* out_value)
{
    return guarded([&] {
        require(text, "text");
        require(out_value, "out_value");
        *out_value = scholar::parse_count(text);
    });
}

int st_detect_block(const char* html, size_t html_len)
{
    if (html == nullptr)
        return 1;
    try {
        return scholar::detect_block(std::string_view(html, html_len)) ? 1 : 0;
    } catch (...) {
        return 1;
    }
}

st_status st_parse_profile(const char* html, size_t html_len, const char* id, char** out_json)
{
    return guarded([&] {
        require(html, "html");
        require(id, "id");
        require(out_json, "out_json");
        const auto profile = scholar::parse_profile(std::string_view(html, html_len), scholar::ScholarId::parse(id));
        set_out(out_json, scholar::profile_to_json(profile).dump());
    });
}

st_status st_compute_h_index(const int64_t* citation_counts, size_t count, int64_t* out_h)
{
    return guarded([&] {
        if (count > 0)
            require(citation_counts, "citation_counts");
        require(out_h, "out_h");
        *out_h = scholar::compute_h_index(std::span<const int64_t>(citation_counts, count));
    });
}

st_status st_tracker_open(const char* config_path, const char* store_path, st_tracker** out)
{
    return guarded([&] {
        require(out, "out");
        *out = nullptr;
        auto tracker = std::make_unique<st_tracker>();
        tracker->config_path = scholar::resolve_config_path(
            config_path ? std::optional<std::string>(config_path) : std::nullopt);
        tracker->config_path_text = tracker->config_path.string();
        auto loaded = scholar::load_config(tracker->config_path);
        tracker->config = std::move(loaded.config);
        tracker->warnings = std::move(loaded.warnings);
        if (store_path != nullptr && *store_path != '\0')
            tracker->store_override = store_path;
        tracker->refresh_store_path();
        *out = tracker.release();
    });
}

void st_tracker_close(st_tracker* tracker)
{
    delete tracker;
}

void st_tracker_set_transport(st_tracker* tracker, st_transport_fn fn, void* user)
{
    if (tracker == nullptr)
        return;
    tracker->transport_fn = fn;
    tracker->transport_user = user;
}

void st_tracker_set_clock(st_tracker* tracker, const st_clock* clock)
{
    if (tracker == nullptr)
        return;
    if (clock == nullptr || clock->wall_seconds == nullptr || clock->monotonic_ms == nullptr ||
        clock->sleep_ms == nullptr)
        tracker->clock.reset();
    else
        tracker->clock = *clock;
}

void st_tracker_set_force_unlock(st_tracker* tracker, int enabled)
{
    if (tracker != nullptr)
        tracker->force_unlock = enabled != 0;
}

void st_tracker_set_stale_seconds(st_tracker* tracker, int64_t seconds)
{
    if (tracker != nullptr && seconds >= 0)
        tracker->stale_after = std::chrono::seconds(seconds);
}

void st_tracker_set_progress(st_tracker* tracker, void (*fn)(void*, const char*), void* user)
{
    if (tracker == nullptr)
        return;
    tracker->progress_fn = fn;
    tracker->progress_user = user;
}

st_status st_tracker_take_warnings(st_tracker* tracker, char** out)
{
    return guarded([&] {
        require(tracker, "tracker");
        require(out, "out");
        std::string joined;
        for (const auto& w : tracker->warnings)
            joined += w + "\n";
        tracker->warnings.clear();
        set_out(out, joined);
    });
}

const char* st_tracker_config_path(const st_tracker* tracker)
{
    return tracker ? tracker->config_path_text.c_str() : "";
}

const char* st_tracker_store_path(const st_tracker* tracker)
{
    return tracker ? tracker->store_path.c_str() : "";
}

st_status st_tracker_add(st_tracker* tracker, const char* id_or_url, char** out_id)
{
    return guarded([&] {
        require(tracker, "tracker");
        require(id_or_url, "id_or_url");
        auto updated = scholar::add_id(tracker->config, id_or_url);
        scholar::save_config(tracker->config_path, updated);
        tracker->config = std::move(updated);
        tracker->refresh_store_path();
        set_out(out_id, tracker->config.scholar_ids.back().value());
    });
}

st_status st_tracker_remove(st_tracker* tracker, const char* id_or_url, char** out_id)
{
    return guarded([&] {
        require(tracker, "tracker");
        require(id_or_url, "id_or_url");
        const auto id = scholar::extract_scholar_id(id_or_url);
        auto updated = scholar::remove_id(tracker->config, id);
        scholar::save_config(tracker->config_path, updated);
        tracker->config = std::move(updated);
        set_out(out_id, id.value());
    });
}

st_status st_tracker_list(st_tracker* tracker, int json, char** out)
{
    return guarded([&] {
        require(tracker, "tracker");
        require(out, "out");
        tracker->with_clock([&](scholar::Clock& clock) {
            const auto store = tracker->open_store(scholar::StoreMode::ReadOnly, clock);
            const auto entries = scholar::cmd_list(tracker->config, store);
            set_out(out, json ? scholar::render::list_json(entries) : scholar::render::list_text(entries));
        });
    });
}

st_status st_tracker_rank(st_tracker* tracker, int json, char** out)
{
    return guarded([&] {
        require(tracker, "tracker");
        require(out, "out");
        tracker->with_clock([&](scholar::Clock& clock) {
            const auto store = tracker->open_store(scholar::StoreMode::ReadOnly, clock);
            const auto view = scholar::cmd_rank(tracker->config, store, clock.now(), tracker->stale_after);
            set_out(out, json ? scholar::render::rank_json(view)
                              : scholar::render::rank_text(view, tracker->config.scholar_ids.size()));
        });
    });
}

st_status st_tracker_history(st_tracker* tracker, const char* id_or_url, int json, char** out)
{
    return guarded([&] {
        require(tracker, "tracker");
        require(id_or_url, "id_or_url");
        require(out, "out");
        tracker->with_clock([&](scholar::Clock& clock) {
            const auto store = tracker->open_store(scholar::StoreMode::ReadOnly, clock);
            const auto rows = scholar::cmd_history(tracker->config, store, id_or_url);
            const auto id = scholar::extract_scholar_id(id_or_url);
            set_out(out, json ? scholar::render::history_json(rows) : scholar::render::history_text(id, rows));
        });
    });
}

st_status st_tracker_export(st_tracker* tracker, const char* format, char** out)
{
    return guarded([&] {
        require(tracker, "tracker");
        require(format, "format");
        require(out, "out");
        if (std::string_view(format) != "json" && std::string_view(format) != "csv")
            throw scholar::Error(scholar::ErrorCode::UnknownFormat,
                                 "unknown export format '" + std::string(format) + "' (expected json or csv)");
        tracker->with_clock([&](scholar::Clock& clock) {
            const auto store = tracker->open_store(scholar::StoreMode::ReadOnly, clock);
            set_out(out, scholar::cmd_export(store, format));
        });
    });
}

st_status st_tracker_update(st_tracker* tracker, int json, char** out, int* out_exit_code)
{
    return guarded([&] {
        require(tracker, "tracker");
        require(out, "out");
        tracker->with_clock([&](scholar::Clock& clock) {
            auto store = tracker->open_store(scholar::StoreMode::ReadWrite, clock);
            std::optional<CallbackTransport> callback;
            scholar::HttpTransport* transport = &tracker->network;
            if (tracker->transport_fn != nullptr) {
                callback.emplace(tracker->transport_fn, tracker->transport_user);
                transport = &*callback;
            }
            scholar::UpdateProgress progress;
            if (tracker->progress_fn != nullptr) {
                progress = [tracker](const scholar::UpdateEntry& e) {
                    std::string line = std::string(scholar::to_string(e.status)) + " " + e.scholar_id.value();
                    if (e.snapshot)
                        line += " " + std::to_string(e.snapshot->profile.citations_all) + " citations";
                    else if (!e.detail.empty())
                        line += ": " + e.detail;
                    tracker->progress_fn(tracker->progress_user, line.c_str());
                };
            }
            const auto report = scholar::cmd_update(tracker->config, store, *transport, clock, progress);
            set_out(out, json ? scholar::render::update_json(report) : scholar::render::update_text(report));
            if (out_exit_code != nullptr)
                *out_exit_code = report.exit_code();
        });
    });
}

} // extern "C"

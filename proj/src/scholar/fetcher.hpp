#pragma once

#include "scholar/clock.hpp"
#include "scholar/profile_parser.hpp"
#include "scholar/scholar_id.hpp"
#include "scholar/timestamp.hpp"
#include "scholar/transport.hpp"

#include <chrono>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace scholar {

/// `scholar-tracker/<version>`, followed by ` (+<url>)` when the build sets a
/// project URL.
std::string default_user_agent();

struct FetchPolicy {
    std::chrono::milliseconds rate_limit{2000}; // minimum gap between request starts
    std::chrono::milliseconds timeout{10000};
    int max_retries = 2;
    std::chrono::milliseconds backoff_base{500};
    std::string user_agent = default_user_agent();
    /// Consecutive Blocked results after which a sequence skips the remaining
    /// IDs. 0 disables the breaker.
    int block_breaker_threshold = 3;
    int max_redirects = 5;

    /// Throws Error(InvalidArgument) naming the first out-of-range field.
    void validate() const;

    friend bool operator==(const FetchPolicy&, const FetchPolicy&) = default;
};

struct PageFetch {
    ScholarId scholar_id;
    std::string html;
    Timestamp fetched_at;
};

enum class FetchErrorKind {
    NotFound,            // HTTP 404
    RateLimitedByServer, // HTTP 429
    Blocked,             // block page, HTTP 403, or breaker-skipped
    NetworkFailure,      // retries exhausted or unexpected status
};

const char* to_string(FetchErrorKind kind) noexcept;

struct FetchError {
    FetchErrorKind kind;
    ScholarId scholar_id;
    int attempts = 0;
    std::string detail;
};

using FetchOutcome = std::variant<PageFetch, FetchError>;

struct SequenceEntry {
    ScholarId scholar_id;
    FetchOutcome outcome;
};

/// Issues requests through one transport while keeping request starts at
/// least policy.rate_limit apart. Not thread-safe; one instance per sequence.
class Fetcher {
public:
    Fetcher(FetchPolicy policy, HttpTransport& transport, Clock& clock);

    FetchOutcome fetch(const ScholarId& id);

    const FetchPolicy& policy() const noexcept { return policy_; }

private:
    struct Attempt {
        std::optional<HttpResponse> response;
        std::optional<TransportFailure> failure;
        bool redirect_overflow = false;
    };

    Attempt request_following_redirects(const std::string& url);
    TransportResult paced_send(const std::string& url);

    FetchPolicy policy_;
    HttpTransport& transport_;
    Clock& clock_;
    std::optional<std::chrono::milliseconds> last_request_start_;
};

FetchOutcome fetch_profile_page(const ScholarId& id, const FetchPolicy& policy, HttpTransport& transport,
                                Clock& clock);

using SequenceCallback = std::function<void(const SequenceEntry&)>;

/// Fetches `ids` in order. Every ID appears exactly once in the result;
/// `on_result`, if set, sees each entry as soon as it is known. After
/// policy.block_breaker_threshold consecutive Blocked results the remaining
/// IDs are reported as Blocked with zero attempts.
/// Throws Error(DuplicateId) if `ids` repeats an ID.
std::vector<SequenceEntry> paced_sequence(std::span<const ScholarId> ids, const FetchPolicy& policy,
                                          HttpTransport& transport, Clock& clock,
                                          const SequenceCallback& on_result = {});

} // namespace scholar

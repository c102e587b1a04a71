#include "scholar/fetcher.hpp"

#include "scholar/errors.hpp"

#include <unordered_set>

namespace scholar {

namespace {

bool is_redirect(int status) noexcept
{
    return status == 301 || status == 302 || status == 303 || status == 307 || status == 308;
}

// Resolves a Location header against the URL that produced it.
std::string resolve_location(const std::string& base, const std::string& location)
{
    if (location.find("://") != std::string::npos)
        return location;
    const auto scheme_end = base.find("://");
    const std::string scheme = scheme_end == std::string::npos ? "https" : base.substr(0, scheme_end);
    if (location.starts_with("//"))
        return scheme + ":" + location;
    const auto host_start = scheme_end == std::string::npos ? 0 : scheme_end + 3;
    const auto path_start = base.find('/', host_start);
    const std::string origin = base.substr(0, path_start);
    if (location.starts_with("/"))
        return origin + location;
    // Relative path: replace the last segment of the base path.
    std::string base_path = path_start == std::string::npos ? "/" : base.substr(path_start);
    base_path = base_path.substr(0, base_path.find_first_of("?#"));
    return origin + base_path.substr(0, base_path.rfind('/') + 1) + location;
}

} // namespace

std::string default_user_agent()
{
    std::string ua = "scholar-tracker/" SCHOLAR_TRACKER_VERSION;
    const std::string url = SCHOLAR_TRACKER_PROJECT_URL;
    if (!url.empty())
        ua += " (+" + url + ")";
    return ua;
}

void FetchPolicy::validate() const
{
    const auto bad = [](const std::string& what) { throw Error(ErrorCode::InvalidArgument, what); };
    if (rate_limit.count() < 0)
        bad("rate_limit_ms must be >= 0");
    if (timeout.count() <= 0)
        bad("timeout_ms must be > 0");
    if (max_retries < 0)
        bad("max_retries must be >= 0");
    if (backoff_base.count() <= 0)
        bad("backoff_base_ms must be > 0");
    if (user_agent.empty())
        bad("user_agent must not be empty");
    if (block_breaker_threshold < 0)
        bad("block_breaker_threshold must be >= 0");
    if (max_redirects < 0)
        bad("max_redirects must be >= 0");
}

const char* to_string(FetchErrorKind kind) noexcept
{
    switch (kind) {
    case FetchErrorKind::NotFound: return "NotFound";
    case FetchErrorKind::RateLimitedByServer: return "RateLimitedByServer";
    case FetchErrorKind::Blocked: return "Blocked";
    case FetchErrorKind::NetworkFailure: return "NetworkFailure";
    }
    return "Unknown";
}

Fetcher::Fetcher(FetchPolicy policy, HttpTransport& transport, Clock& clock)
    : policy_(std::move(policy)), transport_(transport), clock_(clock)
{
    policy_.validate();
}

TransportResult Fetcher::paced_send(const std::string& url)
{
    if (last_request_start_) {
        const auto since_last = clock_.monotonic() - *last_request_start_;
        if (since_last < policy_.rate_limit)
            clock_.sleep_for(policy_.rate_limit - since_last);
    }
    last_request_start_ = clock_.monotonic();

    HttpRequest request;
    request.url = url;
    request.timeout = policy_.timeout;
    request.headers = {
        {"User-Agent", policy_.user_agent},
        {"Accept", "text/html,application/xhtml+xml"},
        {"Accept-Language", "en"},
    };
    return transport_.send(request);
}

Fetcher::Attempt Fetcher::request_following_redirects(const std::string& url)
{
    std::string current = url;
    for (int hop = 0;; ++hop) {
        TransportResult result = paced_send(current);
        if (auto* failure = std::get_if<TransportFailure>(&result))
            return Attempt{std::nullopt, *failure};

        auto& response = std::get<HttpResponse>(result);
        if (!is_redirect(response.status))
            return Attempt{std::move(response), std::nullopt};

        const auto location = find_header(response.headers, "Location");
        if (!location || location->empty())
            return Attempt{std::move(response), std::nullopt};
        if (hop >= policy_.max_redirects)
            return Attempt{std::nullopt, std::nullopt, true};
        current = resolve_location(current, *location);
    }
}

FetchOutcome Fetcher::fetch(const ScholarId& id)
{
    const std::string url = profile_url(id);
    const auto error = [&](FetchErrorKind kind, int attempts, std::string detail) -> FetchOutcome {
        return FetchError{kind, id, attempts, std::move(detail)};
    };

    std::string last_problem;
    for (int attempt = 0; attempt <= policy_.max_retries; ++attempt) {
        if (attempt > 0)
            clock_.sleep_for(policy_.backoff_base * (std::int64_t{1} << (attempt - 1)));

        const int attempts = attempt + 1;
        Attempt result = request_following_redirects(url);
        if (result.redirect_overflow)
            return error(FetchErrorKind::NetworkFailure, attempts,
                         "more than " + std::to_string(policy_.max_redirects) + " redirects");
        if (result.failure) {
            last_problem = to_string(*result.failure);
            continue;
        }

        const HttpResponse& response = *result.response;
        if (response.status == 200) {
            if (detect_block(response.body))
                return error(FetchErrorKind::Blocked, attempts, "server returned a block or captcha page");
            return PageFetch{id, response.body, clock_.now()};
        }
        if (response.status == 404)
            return error(FetchErrorKind::NotFound, attempts, "HTTP 404: no such profile");
        if (response.status == 429)
            return error(FetchErrorKind::RateLimitedByServer, attempts, "HTTP 429: rate limited by server");
        if (response.status == 403)
            return error(FetchErrorKind::Blocked, attempts, "HTTP 403: access denied");
        if (response.status >= 500 && response.status <= 599) {
            last_problem = "HTTP " + std::to_string(response.status);
            continue;
        }
        return error(FetchErrorKind::NetworkFailure, attempts,
                     "unexpected HTTP status " + std::to_string(response.status));
    }
    return error(FetchErrorKind::NetworkFailure, policy_.max_retries + 1,
                 "retries exhausted (last: " + last_problem + ")");
}

FetchOutcome fetch_profile_page(const ScholarId& id, const FetchPolicy& policy, HttpTransport& transport,
                                Clock& clock)
{
    return Fetcher(policy, transport, clock).fetch(id);
}

std::vector<SequenceEntry> paced_sequence(std::span<const ScholarId> ids, const FetchPolicy& policy,
                                          HttpTransport& transport, Clock& clock,
                                          const SequenceCallback& on_result)
{
    std::unordered_set<ScholarId> seen;
    for (const auto& id : ids) {
        if (!seen.insert(id).second)
            throw Error(ErrorCode::DuplicateId, "duplicate Scholar ID in fetch list: " + id.value());
    }

    Fetcher fetcher(policy, transport, clock);
    std::vector<SequenceEntry> results;
    results.reserve(ids.size());
    int consecutive_blocked = 0;
    for (const auto& id : ids) {
        if (policy.block_breaker_threshold > 0 && consecutive_blocked >= policy.block_breaker_threshold) {
            results.push_back({id, FetchError{FetchErrorKind::Blocked, id, 0,
                                              "skipped: " + std::to_string(consecutive_blocked) +
                                                  " consecutive blocked responses"}});
            if (on_result)
                on_result(results.back());
            continue;
        }
        FetchOutcome outcome = fetcher.fetch(id);
        const auto* failure = std::get_if<FetchError>(&outcome);
        consecutive_blocked = (failure && failure->kind == FetchErrorKind::Blocked) ? consecutive_blocked + 1 : 0;
        results.push_back({id, std::move(outcome)});
        if (on_result)
            on_result(results.back());
    }
    return results;
}

} // namespace scholar

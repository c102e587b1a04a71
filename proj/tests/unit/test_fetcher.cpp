#include "scholar/errors.hpp"
#include "scholar/fetcher.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "support/stub_transport.hpp"

#include <doctest.h>

#include <map>

using namespace scholar;
using namespace std::chrono_literals;
using testing::ok;
using testing::status;

namespace {

const Timestamp kStart = std::chrono::sys_days{std::chrono::year{2026} / 10 / 16} + 9h;

std::string profile_body()
{
    static const std::string body = testing::load_profile_fixtures().front().html;
    return body;
}

FetchError error_of(const FetchOutcome& outcome)
{
    REQUIRE(std::holds_alternative<FetchError>(outcome));
    return std::get<FetchError>(outcome);
}

bool retryable(const TransportResult& r)
{
    if (std::holds_alternative<TransportFailure>(r))
        return true;
    return std::get<HttpResponse>(r).status >= 500;
}

int status_of(const TransportResult& r)
{
    return std::holds_alternative<HttpResponse>(r) ? std::get<HttpResponse>(r).status : 0;
}

FetchPolicy fast_policy()
{
    FetchPolicy p;
    p.rate_limit = 2000ms;
    p.backoff_base = 500ms;
    p.max_retries = 2;
    return p;
}

} // namespace

TEST_CASE("200 with a profile body returns the page")
{
    ManualClock clock(kStart);
    testing::ScriptedTransport transport(clock);
    const auto id = ScholarId::parse("vAx7VsoAAAAJ");
    transport.script(id, {ok(profile_body())});

    const auto outcome = fetch_profile_page(id, fast_policy(), transport, clock);
    REQUIRE(std::holds_alternative<PageFetch>(outcome));
    const auto& page = std::get<PageFetch>(outcome);
    CHECK(page.scholar_id == id);
    CHECK(page.html == profile_body());
    CHECK(page.fetched_at == kStart);
    CHECK(page.fetched_at <= clock.now());

    REQUIRE(transport.log.size() == 1);
    const auto& req = transport.log[0].request;
    CHECK(req.method == "GET");
    CHECK(req.url == profile_url(id));
    CHECK(find_header(req.headers, "user-agent") == fast_policy().user_agent);
    CHECK(req.timeout == fast_policy().timeout);
}

TEST_CASE("404 is NotFound after exactly one attempt")
{
    ManualClock clock(kStart);
    testing::ScriptedTransport transport(clock);
    const auto id = ScholarId::parse("vAx7VsoAAAAJ");
    transport.script(id, {status(404)});
    const auto& err = error_of(fetch_profile_page(id, fast_policy(), transport, clock));
    CHECK(err.kind == FetchErrorKind::NotFound);
    CHECK(err.attempts == 1);
    CHECK(err.scholar_id == id);
    CHECK(transport.log.size() == 1);
}

TEST_CASE("429 is never retried")
{
    ManualClock clock(kStart);
    testing::ScriptedTransport transport(clock);
    const auto id = ScholarId::parse("vAx7VsoAAAAJ");
    transport.script(id, {status(429)});
    const auto& err = error_of(fetch_profile_page(id, fast_policy(), transport, clock));
    CHECK(err.kind == FetchErrorKind::RateLimitedByServer);
    CHECK(err.attempts == 1);
    CHECK(transport.log.size() == 1);
}

TEST_CASE("two connection failures then success with max_retries=2")
{
    ManualClock clock(kStart);
    testing::ScriptedTransport transport(clock);
    const auto id = ScholarId::parse("vAx7VsoAAAAJ");
    transport.script(id, {TransportFailure::ConnectionFailed, TransportFailure::ConnectionFailed, ok(profile_body())});
    FetchPolicy policy = fast_policy();
    policy.rate_limit = 0ms;
    const auto outcome = fetch_profile_page(id, policy, transport, clock);
    CHECK(std::holds_alternative<PageFetch>(outcome));
    CHECK(transport.log.size() == 3);
    // backoff: 500 ms after the first failure, 1000 ms after the second
    CHECK(transport.log[1].at - transport.log[0].at == 500ms);
    CHECK(transport.log[2].at - transport.log[1].at == 1000ms);
}

TEST_CASE("timeouts and 5xx are retried until exhausted")
{
    ManualClock clock(kStart);
    testing::ScriptedTransport transport(clock);
    const auto id = ScholarId::parse("vAx7VsoAAAAJ");
    transport.script(id, {TransportFailure::Timeout, status(503), status(500)});
    const auto& err = error_of(fetch_profile_page(id, fast_policy(), transport, clock));
    CHECK(err.kind == FetchErrorKind::NetworkFailure);
    CHECK(err.attempts == 3);
    CHECK(transport.log.size() == 3);
    CHECK(err.detail.find("500") != std::string::npos);
}

TEST_CASE("max_retries=0 means a single attempt")
{
    ManualClock clock(kStart);
    testing::ScriptedTransport transport(clock);
    const auto id = ScholarId::parse("vAx7VsoAAAAJ");
    FetchPolicy policy = fast_policy();
    policy.max_retries = 0;
    const auto& err = error_of(fetch_profile_page(id, policy, transport, clock));
    CHECK(err.attempts == 1);
    CHECK(transport.log.size() == 1);
}

TEST_CASE("block page with status 200 is Blocked, not retried")
{
    ManualClock clock(kStart);
    testing::ScriptedTransport transport(clock);
    const auto id = ScholarId::parse("vAx7VsoAAAAJ");
    transport.script(id, {ok(testing::page_fixture("block_unusual_traffic.html"))});
    const auto& err = error_of(fetch_profile_page(id, fast_policy(), transport, clock));
    CHECK(err.kind == FetchErrorKind::Blocked);
    CHECK(err.attempts == 1);
}

TEST_CASE("403 is Blocked; other 4xx fail without retry")
{
    ManualClock clock(kStart);
    testing::ScriptedTransport transport(clock);
    const auto a = ScholarId::parse("aaaaaaaaaaaa");
    const auto b = ScholarId::parse("bbbbbbbbbbbb");
    transport.script(a, {status(403)});
    transport.script(b, {status(410)});
    CHECK(error_of(fetch_profile_page(a, fast_policy(), transport, clock)).kind == FetchErrorKind::Blocked);
    const auto& err = error_of(fetch_profile_page(b, fast_policy(), transport, clock));
    CHECK(err.kind == FetchErrorKind::NetworkFailure);
    CHECK(err.attempts == 1);
}

TEST_CASE("redirects are followed up to five hops")
{
    ManualClock clock(kStart);
    testing::ScriptedTransport transport(clock);
    const auto id = ScholarId::parse("vAx7VsoAAAAJ");
    transport.script(id, {HttpResponse{302, {{"Location", "https://scholar.google.de/citations?user=vAx7VsoAAAAJ"}}, ""}});
    transport.script("https://scholar.google.de/citations?user=vAx7VsoAAAAJ",
                     {HttpResponse{301, {{"location", "/x/hop"}}, ""}});
    transport.script("https://scholar.google.de/x/hop", {ok(profile_body())});
    FetchPolicy policy = fast_policy();
    const auto outcome = fetch_profile_page(id, policy, transport, clock);
    CHECK(std::holds_alternative<PageFetch>(outcome));
    CHECK(transport.log.size() == 3);
    // each hop is a request start and is paced
    CHECK(transport.log[1].at - transport.log[0].at >= policy.rate_limit);

    ManualClock clock2(kStart);
    testing::ScriptedTransport loop(clock2);
    loop.script(id, {HttpResponse{302, {{"Location", profile_url(id)}}, ""}});
    const auto& err = error_of(fetch_profile_page(id, policy, loop, clock2));
    CHECK(err.kind == FetchErrorKind::NetworkFailure);
    CHECK(err.attempts == 1);
    CHECK(loop.log.size() == 6); // original request + 5 followed hops
}

TEST_CASE("policy validation")
{
    ManualClock clock(kStart);
    testing::ScriptedTransport transport(clock);
    FetchPolicy p;
    p.timeout = 0ms;
    CHECK_THROWS_AS(Fetcher(p, transport, clock), Error);
    p = FetchPolicy{};
    p.user_agent.clear();
    CHECK_THROWS_AS(Fetcher(p, transport, clock), Error);
    CHECK(FetchPolicy{}.rate_limit == 2000ms);
    CHECK(FetchPolicy{}.timeout == 10000ms);
    CHECK(FetchPolicy{}.max_retries == 2);
    CHECK(FetchPolicy{}.backoff_base == 500ms);
    CHECK(default_user_agent().starts_with("scholar-tracker/"));
}

TEST_CASE("paced_sequence keeps order and isolates failures")
{
    ManualClock clock(kStart);
    testing::ScriptedTransport transport(clock);
    std::mt19937_64 rng(3);
    const auto ids = testing::gen::distinct_ids(rng, 3);
    transport.script(ids[0], {ok(profile_body())});
    transport.script(ids[1], {status(404)});
    transport.script(ids[2], {ok(profile_body())});

    const auto results = paced_sequence(ids, fast_policy(), transport, clock);
    REQUIRE(results.size() == 3);
    for (std::size_t i = 0; i < 3; ++i)
        CHECK(results[i].scholar_id == ids[i]);
    CHECK(std::holds_alternative<PageFetch>(results[0].outcome));
    CHECK(error_of(results[1].outcome).kind == FetchErrorKind::NotFound);
    CHECK(std::holds_alternative<PageFetch>(results[2].outcome));
    CHECK(transport.log[1].at - transport.log[0].at >= 2000ms);
    CHECK(transport.log[2].at - transport.log[1].at >= 2000ms);
}

TEST_CASE("single ID sequence has no pacing delay")
{
    ManualClock clock(kStart);
    testing::ScriptedTransport transport(clock);
    const auto id = ScholarId::parse("vAx7VsoAAAAJ");
    transport.script(id, {ok(profile_body())});
    const std::vector<ScholarId> ids{id};
    const auto results = paced_sequence(ids, fast_policy(), transport, clock);
    CHECK(results.size() == 1);
    CHECK(clock.total_slept() == 0ms);
}

TEST_CASE("pacing accounts for time already spent in the request")
{
    ManualClock clock(kStart);
    testing::ScriptedTransport transport(clock);
    transport.latency = 1500ms;
    std::mt19937_64 rng(5);
    const auto ids = testing::gen::distinct_ids(rng, 2);
    transport.fallback = ok(profile_body());
    paced_sequence(ids, fast_policy(), transport, clock);
    CHECK(transport.log[1].at - transport.log[0].at == 2000ms);
    CHECK(clock.total_slept() == 500ms);
}

TEST_CASE("duplicate IDs are rejected")
{
    ManualClock clock(kStart);
    testing::ScriptedTransport transport(clock);
    const auto id = ScholarId::parse("vAx7VsoAAAAJ");
    const std::vector<ScholarId> ids{id, id};
    CHECK_THROWS_AS(paced_sequence(ids, fast_policy(), transport, clock), Error);
    CHECK(transport.log.empty());
}

TEST_CASE("circuit breaker skips the rest after three consecutive blocks")
{
    ManualClock clock(kStart);
    testing::ScriptedTransport transport(clock);
    std::mt19937_64 rng(9);
    const auto ids = testing::gen::distinct_ids(rng, 6);
    transport.fallback = ok(testing::page_fixture("block_unusual_traffic.html"));
    transport.script(ids[0], {ok(profile_body())});

    const auto results = paced_sequence(ids, fast_policy(), transport, clock);
    REQUIRE(results.size() == 6);
    CHECK(transport.log.size() == 4); // ok + three blocked
    for (std::size_t i = 1; i < 6; ++i)
        CHECK(error_of(results[i].outcome).kind == FetchErrorKind::Blocked);
    CHECK(error_of(results[4].outcome).attempts == 0);
    CHECK(error_of(results[5].outcome).attempts == 0);

    ManualClock clock2(kStart);
    testing::ScriptedTransport transport2(clock2);
    transport2.fallback = transport.fallback;
    FetchPolicy no_breaker = fast_policy();
    no_breaker.block_breaker_threshold = 0;
    paced_sequence(ids, no_breaker, transport2, clock2);
    CHECK(transport2.log.size() == 6);
}

TEST_CASE("property: gaps, attempt bounds and completeness under random scripts")
{
    std::mt19937_64 rng(2024);
    for (int round = 0; round < 200; ++round) {
        ManualClock clock(kStart);
        testing::ScriptedTransport transport(clock);
        transport.latency = std::chrono::milliseconds(rng() % 3000);
        FetchPolicy policy;
        policy.rate_limit = std::chrono::milliseconds(rng() % 4000);
        policy.max_retries = static_cast<int>(rng() % 4);
        policy.backoff_base = std::chrono::milliseconds(1 + rng() % 700);
        policy.block_breaker_threshold = static_cast<int>(rng() % 4);

        const auto ids = testing::gen::distinct_ids(rng, 1 + rng() % 8);
        std::map<ScholarId, std::vector<TransportResult>> scripts;
        for (const auto& id : ids) {
            auto& script = scripts[id];
            const int len = 1 + static_cast<int>(rng() % 4);
            for (int i = 0; i < len; ++i) {
                switch (rng() % 7) {
                case 0: script.push_back(ok(profile_body())); break;
                case 1: script.push_back(status(404)); break;
                case 2: script.push_back(status(429)); break;
                case 3: script.push_back(status(503)); break;
                case 4: script.push_back(TransportFailure::Timeout); break;
                case 5: script.push_back(TransportFailure::ConnectionFailed); break;
                default: script.push_back(ok(testing::page_fixture("block_unusual_traffic.html"))); break;
                }
            }
            transport.script(id, script);
        }

        const auto results = paced_sequence(ids, policy, transport, clock);
        REQUIRE(results.size() == ids.size());
        for (std::size_t i = 0; i < ids.size(); ++i) {
            REQUIRE(results[i].scholar_id == ids[i]);
            const auto n = transport.requests_to(profile_url(ids[i]));
            REQUIRE(n <= static_cast<std::size_t>(policy.max_retries + 1));
            if (const auto* err = std::get_if<FetchError>(&results[i].outcome)) {
                REQUIRE(err->attempts == static_cast<int>(n));
                if (err->kind == FetchErrorKind::NotFound || err->kind == FetchErrorKind::RateLimitedByServer) {
                    // the 404/429 was the last request for this ID; everything before it was retryable
                    const auto& script = scripts[ids[i]];
                    const auto at = [&](std::size_t k) { return script[std::min(k, script.size() - 1)]; };
                    REQUIRE(n >= 1);
                    REQUIRE(status_of(at(n - 1)) == (err->kind == FetchErrorKind::NotFound ? 404 : 429));
                    for (std::size_t k = 0; k + 1 < n; ++k)
                        REQUIRE(retryable(at(k)));
                }
            }
        }
        REQUIRE(transport.log.size() <= ids.size() * static_cast<std::size_t>(policy.max_retries + 1));
        for (std::size_t i = 1; i < transport.log.size(); ++i)
            REQUIRE(transport.log[i].at - transport.log[i - 1].at >= policy.rate_limit);
    }
}

#include "scholar/timestamp.hpp"

#include <doctest.h>

#include <random>

using namespace scholar;
using namespace std::chrono;

TEST_CASE("format and parse the epoch")
{
    const Timestamp epoch{seconds{0}};
    CHECK(format_iso8601(epoch) == "1970-01-01T00:00:00Z");
    CHECK(parse_iso8601("1970-01-01T00:00:00Z") == epoch);
}

TEST_CASE("known instant")
{
    const Timestamp t = sys_days{year{2026} / October / 16} + hours{9} + minutes{5} + seconds{7};
    CHECK(format_iso8601(t) == "2026-10-16T09:05:07Z");
}

TEST_CASE("rejects anything but the canonical form")
{
    for (const char* bad : {"", "2026-10-16", "2026-10-16T09:05:07", "2026-10-16T09:05:07+00:00",
                            "2026-10-16T09:05:07.5Z", "2026-02-30T00:00:00Z", "2026-10-16T24:00:00Z",
                            "2026-1O-16T09:05:07Z", "2026-10-16 09:05:07Z"}) {
        CAPTURE(bad);
        CHECK_FALSE(parse_iso8601(bad).has_value());
    }
}

TEST_CASE("roundtrip over random instants")
{
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::int64_t> secs(0, 4102444799); // through 2099
    for (int i = 0; i < 2000; ++i) {
        const Timestamp t{seconds{secs(rng)}};
        REQUIRE(parse_iso8601(format_iso8601(t)) == t);
    }
}

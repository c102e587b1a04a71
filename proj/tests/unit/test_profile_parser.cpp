#include "scholar/errors.hpp"
#include "scholar/profile_parser.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

#include <doctest.h>

#include <random>

using namespace scholar;

namespace {

const ScholarId kId = ScholarId::parse("vAx7VsoAAAAJ");

ErrorCode parse_error_code(const std::string& html)
{
    try {
        parse_profile(html, kId);
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected parse_profile to throw");
    return ErrorCode::InvalidArgument;
}

std::string parse_error_message(const std::string& html)
{
    try {
        parse_profile(html, kId);
    } catch (const Error& e) {
        return e.what();
    }
    return {};
}

std::string minimal_page(const std::string& name, const std::string& since, const std::string& cells)
{
    return "<html><body><div id=\"gsc_prf_in\">" + name + "</div><table id=\"gsc_rsb_st\"><thead><tr><th></th>"
           "<th>All</th><th>" + since + "</th></tr></thead><tbody>" + cells + "</tbody></table></body></html>";
}

std::string rows(const std::string& a1, const std::string& a2, const std::string& b1, const std::string& b2,
                 const std::string& c1, const std::string& c2)
{
    return "<tr><td><a>Citations</a></td><td>" + a1 + "</td><td>" + a2 + "</td></tr>" +
           "<tr><td><a>h-index</a></td><td>" + b1 + "</td><td>" + b2 + "</td></tr>" +
           "<tr><td><a>i10-index</a></td><td>" + c1 + "</td><td>" + c2 + "</td></tr>";
}

} // namespace

TEST_CASE("parse_count examples")
{
    CHECK(parse_count("0") == 0);
    CHECK(parse_count("12,345") == 12345);
    CHECK(parse_count("1\xE2\x80\xAF" "234") == 1234);
    CHECK(parse_count("1\xC2\xA0" "234") == 1234);
    CHECK(parse_count("1 234") == 1234);
}

TEST_CASE("parse_count rejects non-digits")
{
    for (const char* bad : {"", ",", " ", "12a", "-5", "1.5", "1\t2", "\xC2\xA0", "99999999999999999999"}) {
        CAPTURE(bad);
        try {
            parse_count(bad);
            FAIL("expected NotANumber");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::NotANumber);
        }
    }
}

TEST_CASE("parse_count matches the strip-then-parse oracle")
{
    std::mt19937_64 rng(1234);
    const std::vector<std::string> separators = {",", " ", "\xC2\xA0", "\xE2\x80\xAF"};
    std::uniform_int_distribution<int> len(1, 15), digit(0, 9), sep_count(0, 3),
        sep_pick(0, static_cast<int>(separators.size()) - 1);
    for (int i = 0; i < 2000; ++i) {
        std::string text;
        const int n = len(rng);
        for (int d = 0; d < n; ++d) {
            for (int s = sep_count(rng); s > 0 && rng() % 3 == 0; --s)
                text += separators[static_cast<std::size_t>(sep_pick(rng))];
            text += static_cast<char>('0' + digit(rng));
        }
        if (rng() % 4 == 0)
            text += separators[static_cast<std::size_t>(sep_pick(rng))];
        CAPTURE(text);
        REQUIRE(parse_count(text) == testing::oracle::strip_and_parse(text));
    }
}

TEST_CASE("captured fixtures parse to their expected records")
{
    const auto fixtures = testing::load_profile_fixtures();
    REQUIRE(fixtures.size() >= 5);
    for (const auto& f : fixtures) {
        CAPTURE(f.name);
        CHECK_FALSE(detect_block(f.html));
        const auto parsed = parse_profile(f.html, f.expected.scholar_id);
        CHECK(parsed == f.expected);
        CHECK(parse_profile(f.html, f.expected.scholar_id) == parsed); // deterministic
    }
}

TEST_CASE("minimal all-zero page")
{
    const auto html = minimal_page("Test Person", "Since 2020", rows("0", "0", "0", "0", "0", "0"));
    const auto p = parse_profile(html, kId);
    CHECK(p.name == "Test Person");
    CHECK(p.scholar_id == kId);
    CHECK(p.citations_all == 0);
    CHECK(p.citations_recent == 0);
    CHECK(p.h_index_all == 0);
    CHECK(p.h_index_recent == 0);
    CHECK(p.i10_all == 0);
    CHECK(p.i10_recent == 0);
    CHECK(p.recent_since_year == 2020);
}

TEST_CASE("unreadable since-year degrades to absent")
{
    const auto cells = rows("10", "5", "2", "1", "1", "0");
    CHECK_FALSE(parse_profile(minimal_page("A", "Since ????", cells), kId).recent_since_year);
    CHECK_FALSE(parse_profile(minimal_page("A", "Since 1850", cells), kId).recent_since_year);
    CHECK(parse_profile(minimal_page("A", "Since 1850", cells), kId).citations_all == 10);
}

TEST_CASE("block detection")
{
    CHECK(detect_block(""));
    CHECK(detect_block("<p>Our systems have detected unusual traffic from your computer network.</p>"));
    CHECK(detect_block("<p>Please show you're NOT A ROBOT</p><div id=\"gsc_prf_in\">x</div>"));
    CHECK(detect_block("<html><body>Nothing relevant</body></html>"));
    CHECK(detect_block(testing::page_fixture("block_unusual_traffic.html")));
    CHECK_FALSE(detect_block("<div id=\"gsc_prf_in\">Name</div>"));
    CHECK_FALSE(detect_block("<table id=\"gsc_rsb_st\"></table>"));

    ProfileSelectors custom;
    custom.block_phrases = {"sorry"};
    CHECK(detect_block("<div id=\"gsc_prf_in\">sorry</div>", custom));
    CHECK_FALSE(detect_block("<div id=\"gsc_prf_in\">unusual traffic</div>", custom));
}

TEST_CASE("block page is reported as BlockedPage")
{
    CHECK(parse_error_code(testing::page_fixture("block_unusual_traffic.html")) == ErrorCode::BlockedPage);
    CHECK(parse_error_code("") == ErrorCode::BlockedPage);
}

TEST_CASE("malformed profiles name the failing element")
{
    const auto missing_table = testing::page_fixture("missing_stats_table.html");
    CHECK(parse_error_code(missing_table) == ErrorCode::MalformedProfile);
    CHECK(parse_error_message(missing_table).find("gsc_rsb_st") != std::string::npos);

    const auto no_since = testing::page_fixture("missing_since_column.html");
    CHECK(parse_error_code(no_since) == ErrorCode::MalformedProfile);
    CHECK(parse_error_message(no_since).find("Since") != std::string::npos);

    const auto bad_cell = testing::page_fixture("bad_metric_cell.html");
    CHECK(parse_error_code(bad_cell) == ErrorCode::MalformedProfile);
    CHECK(parse_error_message(bad_cell).find("Citations") != std::string::npos);

    const auto table_only = "<table id=\"gsc_rsb_st\"><tr><th><th>All<th>Since 2020" + rows("1", "1", "1", "1", "0", "0") +
                            "</table>";
    CHECK(parse_error_code(table_only) == ErrorCode::MalformedProfile);
    CHECK(parse_error_message(table_only).find("gsc_prf_in") != std::string::npos);

    const auto missing_row = minimal_page("A", "Since 2020",
                                          "<tr><td>Citations</td><td>3</td><td>1</td></tr>"
                                          "<tr><td>h-index</td><td>1</td><td>1</td></tr>");
    CHECK(parse_error_message(missing_row).find("i10-index") != std::string::npos);

    CHECK(parse_error_code(minimal_page("   ", "Since 2020", rows("1", "1", "1", "1", "0", "0"))) ==
          ErrorCode::MalformedProfile);
}

TEST_CASE("recent above all-time is rejected, never returned")
{
    CHECK(parse_error_code(testing::page_fixture("recent_exceeds_all.html")) == ErrorCode::MalformedProfile);
    CHECK(parse_error_code(minimal_page("A", "Since 2020", rows("10", "5", "3", "4", "1", "0"))) ==
          ErrorCode::MalformedProfile);
    CHECK(parse_error_code(minimal_page("A", "Since 2020", rows("10", "5", "3", "3", "1", "2"))) ==
          ErrorCode::MalformedProfile);
    // h-index above total citations is impossible
    CHECK(parse_error_code(minimal_page("A", "Since 2020", rows("2", "1", "3", "1", "0", "0"))) ==
          ErrorCode::MalformedProfile);
}

TEST_CASE("custom selectors")
{
    ProfileSelectors s;
    s.name_element_id = "who";
    s.stats_table_id = "stats";
    const std::string html = "<h1 id=\"who\">Renamed</h1><table id=\"stats\"><tr><th><th>All<th>Since 2015" +
                             rows("4", "2", "2", "1", "0", "0") + "</table>";
    const auto p = parse_profile(html, kId, s);
    CHECK(p.name == "Renamed");
    CHECK(p.citations_all == 4);
    CHECK(p.recent_since_year == 2015);
}

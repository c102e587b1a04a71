#include "scholar/profile_parser.hpp"

#include "scholar/errors.hpp"
#include "scholar/html_scan.hpp"

#include <array>
#include <limits>

namespace scholar {

namespace {

constexpr std::string_view kNbsp = "\xC2\xA0";
constexpr std::string_view kNarrowNbsp = "\xE2\x80\xAF";
constexpr int kMinSinceYear = 1900;
constexpr int kMaxSinceYear = 2100;

char ascii_lower(char c) noexcept
{
    return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

bool iequals(std::string_view a, std::string_view b) noexcept
{
    if (a.size() != b.size())
        return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (ascii_lower(a[i]) != ascii_lower(b[i]))
            return false;
    }
    return true;
}

bool icontains(std::string_view haystack, std::string_view needle) noexcept
{
    if (needle.empty())
        return true;
    if (needle.size() > haystack.size())
        return false;
    for (std::size_t i = 0; i + needle.size() <= haystack.size(); ++i) {
        if (iequals(haystack.substr(i, needle.size()), needle))
            return true;
    }
    return false;
}

std::string_view trim_spaces(std::string_view s) noexcept
{
    while (true) {
        if (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
            s.remove_prefix(1);
        else if (s.starts_with(kNbsp))
            s.remove_prefix(kNbsp.size());
        else
            break;
    }
    while (true) {
        if (!s.empty() && (s.back() == ' ' || s.back() == '\t'))
            s.remove_suffix(1);
        else if (s.ends_with(kNbsp))
            s.remove_suffix(kNbsp.size());
        else
            break;
    }
    return s;
}

[[noreturn]] void malformed(const ScholarId& id, const std::string& what)
{
    throw Error(ErrorCode::MalformedProfile, "profile " + id.value() + ": " + what);
}

// Header text "Since 2019" -> 2019. Unreadable years degrade to nullopt.
std::optional<int> parse_since_year(std::string_view header, std::string_view prefix)
{
    std::string_view rest = trim_spaces(header.substr(prefix.size()));
    if (rest.size() != 4)
        return std::nullopt;
    int year = 0;
    for (char c : rest) {
        if (c < '0' || c > '9')
            return std::nullopt;
        year = year * 10 + (c - '0');
    }
    if (year < kMinSinceYear || year > kMaxSinceYear)
        return std::nullopt;
    return year;
}

bool has_prefix_icase(std::string_view text, std::string_view prefix) noexcept
{
    return text.size() >= prefix.size() && iequals(text.substr(0, prefix.size()), prefix);
}

} // namespace

const ProfileSelectors& ProfileSelectors::defaults()
{
    static const ProfileSelectors instance;
    return instance;
}

std::optional<std::string> profile_violation(const ResearcherProfile& p)
{
    if (p.name.empty())
        return "name is empty";
    const std::array<std::pair<const char*, Count>, 6> fields{{
        {"citations_all", p.citations_all},
        {"citations_recent", p.citations_recent},
        {"h_index_all", p.h_index_all},
        {"h_index_recent", p.h_index_recent},
        {"i10_all", p.i10_all},
        {"i10_recent", p.i10_recent},
    }};
    for (const auto& [field, value] : fields) {
        if (value < 0)
            return std::string(field) + " is negative";
    }
    if (p.citations_recent > p.citations_all)
        return "citations_recent exceeds citations_all";
    if (p.h_index_recent > p.h_index_all)
        return "h_index_recent exceeds h_index_all";
    if (p.i10_recent > p.i10_all)
        return "i10_recent exceeds i10_all";
    if (p.h_index_all > p.citations_all)
        return "h_index_all exceeds citations_all";
    if (p.recent_since_year && (*p.recent_since_year < kMinSinceYear || *p.recent_since_year > kMaxSinceYear))
        return "recent_since_year outside 1900-2100";
    return std::nullopt;
}

Count parse_count(std::string_view text)
{
    const auto fail = [&]() -> Count {
        throw Error(ErrorCode::NotANumber, "not a count: '" + std::string(text) + "'");
    };

    Count value = 0;
    bool any_digit = false;
    std::size_t i = 0;
    while (i < text.size()) {
        const std::string_view rest = text.substr(i);
        const char c = text[i];
        if (c == ',' || c == ' ') {
            ++i;
        } else if (rest.starts_with(kNbsp)) {
            i += kNbsp.size();
        } else if (rest.starts_with(kNarrowNbsp)) {
            i += kNarrowNbsp.size();
        } else if (c >= '0' && c <= '9') {
            const int digit = c - '0';
            if (value > (std::numeric_limits<Count>::max() - digit) / 10)
                return fail();
            value = value * 10 + digit;
            any_digit = true;
            ++i;
        } else {
            return fail();
        }
    }
    if (!any_digit)
        return fail();
    return value;
}

bool detect_block(std::string_view html, const ProfileSelectors& selectors)
{
    for (const auto& phrase : selectors.block_phrases) {
        if (icontains(html, phrase))
            return true;
    }
    const auto tokens = html::tokenize(html);
    return !html::element_by_id(tokens, selectors.name_element_id) &&
           !html::element_by_id(tokens, selectors.stats_table_id);
}

ResearcherProfile parse_profile(std::string_view html, const ScholarId& id, const ProfileSelectors& selectors)
{
    if (detect_block(html, selectors))
        throw Error(ErrorCode::BlockedPage, "profile " + id.value() + ": page looks like a block or captcha page");

    const auto tokens = html::tokenize(html);

    const auto name_element = html::element_by_id(tokens, selectors.name_element_id);
    if (!name_element)
        malformed(id, "missing profile name element #" + selectors.name_element_id);
    std::string name = std::string(trim_spaces(html::text_content(*name_element)));
    if (name.empty())
        malformed(id, "profile name element #" + selectors.name_element_id + " is empty");

    const auto table = html::element_by_id(tokens, selectors.stats_table_id);
    if (!table)
        malformed(id, "missing statistics table #" + selectors.stats_table_id);
    const auto rows = html::table_rows(*table);

    // Locate the "All" and "Since YYYY" columns from the first row that has them.
    std::optional<std::size_t> all_col;
    std::optional<std::size_t> recent_col;
    std::optional<int> since_year;
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            const std::string_view cell = trim_spaces(row[c]);
            if (!all_col && iequals(cell, selectors.all_column_header)) {
                all_col = c;
            } else if (!recent_col && has_prefix_icase(cell, selectors.recent_column_prefix)) {
                recent_col = c;
                since_year = parse_since_year(cell, selectors.recent_column_prefix);
            }
        }
        if (all_col || recent_col)
            break;
    }
    if (!all_col)
        malformed(id, "statistics table has no '" + selectors.all_column_header + "' column");
    if (!recent_col)
        malformed(id, "statistics table has no '" + selectors.recent_column_prefix + " YYYY' column");

    struct MetricRow {
        const std::string* label;
        Count* all;
        Count* recent;
        bool found = false;
    };
    ResearcherProfile profile{id, std::move(name)};
    std::array<MetricRow, 3> metrics{{
        {&selectors.citations_label, &profile.citations_all, &profile.citations_recent},
        {&selectors.h_index_label, &profile.h_index_all, &profile.h_index_recent},
        {&selectors.i10_label, &profile.i10_all, &profile.i10_recent},
    }};

    const auto read_cell = [&](const std::vector<std::string>& row, std::size_t col, const std::string& label,
                               const char* column) -> Count {
        if (col >= row.size())
            malformed(id, "row '" + label + "' has no " + column + " cell");
        try {
            return parse_count(row[col]);
        } catch (const Error& e) {
            malformed(id, "row '" + label + "' " + column + " cell: " + e.what());
        }
    };

    for (const auto& row : rows) {
        if (row.empty())
            continue;
        const std::string_view label = trim_spaces(row.front());
        for (auto& metric : metrics) {
            if (metric.found || !iequals(label, *metric.label))
                continue;
            *metric.all = read_cell(row, *all_col, *metric.label, "all-time");
            *metric.recent = read_cell(row, *recent_col, *metric.label, "recent");
            metric.found = true;
        }
    }
    for (const auto& metric : metrics) {
        if (!metric.found)
            malformed(id, "statistics table has no '" + *metric.label + "' row");
    }
    profile.recent_since_year = since_year;

    if (const auto violation = profile_violation(profile))
        malformed(id, *violation);
    return profile;
}

} // namespace scholar

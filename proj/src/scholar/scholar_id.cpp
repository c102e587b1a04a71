#include "scholar/scholar_id.hpp"

#include "scholar/errors.hpp"

#include <optional>

namespace scholar {

namespace {

constexpr std::string_view kProfileBase = "https://scholar.google.com/citations?user=";
constexpr std::string_view kCitationsPath = "/citations";

bool is_id_char(char c) noexcept
{
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_' ||
           c == '-';
}

std::string_view trim(std::string_view s) noexcept
{
    const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; };
    while (!s.empty() && is_space(s.front()))
        s.remove_prefix(1);
    while (!s.empty() && is_space(s.back()))
        s.remove_suffix(1);
    return s;
}

int hex_value(char c) noexcept
{
    if (c >= '0' && c <= '9')
        return c - '0';
    if (c >= 'a' && c <= 'f')
        return c - 'a' + 10;
    if (c >= 'A' && c <= 'F')
        return c - 'A' + 10;
    return -1;
}

std::string percent_decode(std::string_view s)
{
    std::string out;
    out.reserve(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '%' && i + 2 < s.size()) {
            const int hi = hex_value(s[i + 1]);
            const int lo = hex_value(s[i + 2]);
            if (hi >= 0 && lo >= 0) {
                out.push_back(static_cast<char>(hi * 16 + lo));
                i += 2;
                continue;
            }
        }
        out.push_back(s[i] == '+' ? ' ' : s[i]);
    }
    return out;
}

bool looks_like_url(std::string_view s) noexcept
{
    return s.find_first_of("/?=:") != std::string_view::npos;
}

std::optional<std::string> query_param(std::string_view query, std::string_view key)
{
    while (!query.empty()) {
        const auto amp = query.find('&');
        const auto pair = query.substr(0, amp);
        const auto eq = pair.find('=');
        if (percent_decode(pair.substr(0, eq)) == key)
            return percent_decode(eq == std::string_view::npos ? std::string_view{} : pair.substr(eq + 1));
        if (amp == std::string_view::npos)
            break;
        query.remove_prefix(amp + 1);
    }
    return std::nullopt;
}

} // namespace

bool ScholarId::is_valid(std::string_view text) noexcept
{
    if (text.size() < min_length || text.size() > max_length)
        return false;
    for (char c : text) {
        if (!is_id_char(c))
            return false;
    }
    return true;
}

ScholarId ScholarId::parse(std::string_view text)
{
    if (!is_valid(text)) {
        throw Error(ErrorCode::InvalidId,
                    "invalid Scholar ID '" + std::string(text) + "': expected 10-16 characters from [A-Za-z0-9_-]");
    }
    return ScholarId(std::string(text));
}

ScholarId extract_scholar_id(std::string_view input)
{
    const std::string_view text = trim(input);
    if (!looks_like_url(text))
        return ScholarId::parse(text);

    std::string_view rest = text;
    if (const auto scheme = rest.find("://"); scheme != std::string_view::npos)
        rest.remove_prefix(scheme + 3);
    if (const auto hash = rest.find('#'); hash != std::string_view::npos)
        rest = rest.substr(0, hash);

    const auto query_start = rest.find('?');
    const std::string_view before_query = rest.substr(0, query_start);
    const std::string_view query =
        query_start == std::string_view::npos ? std::string_view{} : rest.substr(query_start + 1);

    // Host is everything before the first '/', the remainder is the path.
    const auto slash = before_query.find('/');
    const std::string_view path =
        slash == std::string_view::npos ? std::string_view{} : before_query.substr(slash);
    std::string_view normalized_path = path;
    while (normalized_path.size() > 1 && normalized_path.back() == '/')
        normalized_path.remove_suffix(1);
    if (normalized_path != kCitationsPath) {
        throw Error(ErrorCode::InvalidId,
                    "'" + std::string(text) + "' is neither a Scholar ID nor a Scholar citations URL");
    }

    const auto user = query_param(query, "user");
    if (!user || user->empty())
        throw Error(ErrorCode::MissingUserParam, "citations URL has no user= parameter: " + std::string(text));
    return ScholarId::parse(*user);
}

std::string profile_url(const ScholarId& id)
{
    std::string url(kProfileBase);
    url += id.value();
    url += "&hl=en";
    return url;
}

} // namespace scholar

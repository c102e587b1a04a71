#pragma once

// Reference implementations used only to check the library. Each one follows
// the plain definition as literally as possible and shares no code with the
// implementation under test.

#include "scholar/snapshot.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <string>
#include <vector>

namespace testing::oracle {

/// h-index by definition: try every h from n down to 0 and count papers.
inline std::int64_t h_index(const std::vector<std::int64_t>& counts)
{
    for (std::int64_t h = static_cast<std::int64_t>(counts.size()); h >= 0; --h) {
        std::int64_t at_least_h = 0;
        for (auto c : counts) {
            if (c >= h)
                ++at_least_h;
        }
        if (at_least_h >= h)
            return h;
    }
    return 0;
}

/// Remove the allowed separators, then decimal-parse.
inline std::int64_t strip_and_parse(const std::string& text)
{
    std::string digits;
    for (std::size_t i = 0; i < text.size();) {
        if (text.compare(i, 2, "\xC2\xA0") == 0) {
            i += 2;
        } else if (text.compare(i, 3, "\xE2\x80\xAF") == 0) {
            i += 3;
        } else if (text[i] == ',' || text[i] == ' ') {
            ++i;
        } else {
            digits += text[i++];
        }
    }
    return std::stoll(digits);
}

/// Ranking order by brute force: a is before b iff it has more citations,
/// or equal citations and a lexicographically smaller (lower(name), id).
inline bool before(const scholar::Snapshot& a, const scholar::Snapshot& b)
{
    const auto lower = [](std::string s) {
        for (auto& c : s)
            c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        return s;
    };
    if (a.profile.citations_all != b.profile.citations_all)
        return a.profile.citations_all > b.profile.citations_all;
    const auto la = lower(a.profile.name);
    const auto lb = lower(b.profile.name);
    if (la != lb)
        return la < lb;
    return a.scholar_id().value() < b.scholar_id().value();
}

/// Selection sort with `before`, producing the expected ID order.
inline std::vector<std::string> ranked_ids(std::vector<scholar::Snapshot> items)
{
    std::vector<std::string> out;
    while (!items.empty()) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < items.size(); ++i) {
            if (before(items[i], items[best]))
                best = i;
        }
        out.push_back(items[best].scholar_id().value());
        items.erase(items.begin() + static_cast<std::ptrdiff_t>(best));
    }
    return out;
}

} // namespace testing::oracle

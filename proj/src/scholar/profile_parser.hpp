#pragma once

#include "scholar/scholar_id.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace scholar {

using Count = std::int64_t;

/// Metrics read from one Scholar profile page. "all" values are the
/// all-time column, "recent" values the "Since YYYY" column.
struct ResearcherProfile {
    ScholarId scholar_id;
    std::string name;
    Count citations_all = 0;
    Count citations_recent = 0;
    Count h_index_all = 0;
    Count h_index_recent = 0;
    Count i10_all = 0;
    Count i10_recent = 0;
    std::optional<int> recent_since_year;

    friend bool operator==(const ResearcherProfile&, const ResearcherProfile&) = default;
};

/// Describes the first broken invariant of `profile`, or nullopt if none.
std::optional<std::string> profile_violation(const ResearcherProfile& profile);

/// Every page marker the parser depends on. A Scholar redesign should only
/// require edits here (and new fixtures).
struct ProfileSelectors {
    std::string name_element_id = "gsc_prf_in";
    std::string stats_table_id = "gsc_rsb_st";
    std::string citations_label = "Citations";
    std::string h_index_label = "h-index";
    std::string i10_label = "i10-index";
    std::string all_column_header = "All";
    std::string recent_column_prefix = "Since";
    std::vector<std::string> block_phrases = {"unusual traffic", "not a robot"};

    static const ProfileSelectors& defaults();
};

/// Parses a rendered metric cell. Strips ASCII commas, spaces, U+00A0 and
/// U+202F; the rest must be decimal digits. Throws Error(NotANumber).
Count parse_count(std::string_view text);

/// True when the page is a block/captcha interstitial or carries neither the
/// profile-name element nor the statistics table.
bool detect_block(std::string_view html, const ProfileSelectors& selectors = ProfileSelectors::defaults());

/// Throws Error(BlockedPage) or Error(MalformedProfile).
ResearcherProfile parse_profile(std::string_view html, const ScholarId& id,
                                const ProfileSelectors& selectors = ProfileSelectors::defaults());

} // namespace scholar

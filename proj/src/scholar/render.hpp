#pragma once

#include "scholar/commands.hpp"

#include <chrono>
#include <string>
#include <vector>

// Plain-text and JSON renderings of command results. Text output is aligned
// columns with no styling and no trailing whitespace, so it can be diffed.
namespace scholar::render {

/// "45m", "6h", "3d".
std::string format_age(std::chrono::seconds age);

/// "+12", "-3", "0"; empty for nullopt.
std::string format_delta(const std::optional<Count>& delta);

/// Left-aligned columns separated by two spaces; columns flagged in
/// `right_align` are right-aligned. Widths count UTF-8 code points.
std::string table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows,
                  const std::vector<bool>& right_align);

std::string update_text(const UpdateReport& report);
std::string update_json(const UpdateReport& report);

std::string rank_text(const RankView& view, std::size_t configured);
std::string rank_json(const RankView& view);

std::string history_text(const ScholarId& id, const std::vector<HistoryRow>& rows);
std::string history_json(const std::vector<HistoryRow>& rows);

std::string list_text(const std::vector<ListEntry>& entries);
std::string list_json(const std::vector<ListEntry>& entries);

} // namespace scholar::render

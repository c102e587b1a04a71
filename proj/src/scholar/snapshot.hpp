#pragma once

#include "scholar/profile_parser.hpp"
#include "scholar/timestamp.hpp"

#include <json.hpp>

#include <string>
#include <string_view>

namespace scholar {

/// A parsed profile stamped with its fetch time; the unit of persistence.
struct Snapshot {
    ResearcherProfile profile;
    Timestamp fetched_at;

    const ScholarId& scholar_id() const noexcept { return profile.scholar_id; }

    friend bool operator==(const Snapshot&, const Snapshot&) = default;
};

/// Profile fields by their ResearcherProfile names; `recent_since_year` is
/// null when absent.
nlohmann::json profile_to_json(const ResearcherProfile& profile);
/// Throws Error(InvalidArgument) describing the first bad field.
ResearcherProfile profile_from_json(const nlohmann::json& object);

/// Profile fields plus `fetched_at`.
nlohmann::json snapshot_to_json(const Snapshot& snapshot);
Snapshot snapshot_from_json(const nlohmann::json& object);

/// Single-line JSON, no trailing newline.
std::string snapshot_to_line(const Snapshot& snapshot);
Snapshot snapshot_from_line(std::string_view line);

} // namespace scholar

#pragma once

#include "scholar/clock.hpp"
#include "scholar/config.hpp"
#include "scholar/metrics.hpp"
#include "scholar/store.hpp"
#include "scholar/transport.hpp"

#include <array>
#include <chrono>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace scholar {

enum class UpdateStatus { Updated, NotFound, Blocked, RateLimited, NetworkFailed, ParseFailed };

inline constexpr std::size_t update_status_count = 6;

/// Snake-case name used in reports: "updated", "not_found", ...
const char* to_string(UpdateStatus status) noexcept;

struct UpdateEntry {
    ScholarId scholar_id;
    UpdateStatus status = UpdateStatus::Updated;
    std::optional<Snapshot> snapshot;
    std::optional<CitationDelta> delta;
    int attempts = 0;
    std::string detail;
};

struct UpdateReport {
    std::vector<UpdateEntry> entries; // one per configured ID, config order
    std::array<int, update_status_count> counts{};
    Timestamp started_at;
    Timestamp finished_at;

    int count(UpdateStatus status) const { return counts[static_cast<std::size_t>(status)]; }

    /// 0 when every ID updated (or none configured), 3 when none did, else 1.
    int exit_code() const;
};

using UpdateProgress = std::function<void(const UpdateEntry&)>;

/// Fetches every configured ID, parses, and appends one snapshot per success
/// as soon as it is parsed. Per-ID failures are recorded in the report.
/// `store` must be writable. Throws only for store I/O failures.
UpdateReport cmd_update(const TrackerConfig& config, SnapshotStore& store, HttpTransport& transport, Clock& clock,
                        const UpdateProgress& progress = {});

inline constexpr std::chrono::seconds default_stale_after = std::chrono::hours(24 * 7);

struct RankEntry {
    RankedRow row;
    Timestamp fetched_at;
    std::chrono::seconds age{0};
    bool stale = false;
};

struct RankView {
    std::vector<RankEntry> entries;
    std::vector<ScholarId> never_fetched; // configured, no snapshot; config order
};

/// Ranking of the configured IDs from cached snapshots only.
RankView cmd_rank(const TrackerConfig& config, const SnapshotStore& store, Timestamp now,
                  std::chrono::seconds stale_after = default_stale_after);

struct HistoryRow {
    Snapshot snapshot;
    std::optional<Count> delta_citations; // vs. the preceding row
};

/// Errors: InvalidId, MissingUserParam, NotTracked.
std::vector<HistoryRow> cmd_history(const TrackerConfig& config, const SnapshotStore& store, std::string_view raw_id);

struct ListEntry {
    ScholarId scholar_id;
    std::optional<Snapshot> latest;
};

std::vector<ListEntry> cmd_list(const TrackerConfig& config, const SnapshotStore& store);

inline constexpr std::string_view csv_header =
    "scholar_id,name,citations_all,citations_recent,h_index_all,h_index_recent,i10_all,i10_recent,fetched_at";

/// Latest snapshot of every ID in the store, ordered by ID, as a JSON array
/// ("json") or CSV with csv_header ("csv"). Throws Error(UnknownFormat).
std::string cmd_export(const SnapshotStore& store, std::string_view format);

} // namespace scholar

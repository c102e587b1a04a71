#pragma once

#include "scholar/snapshot.hpp"

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace scholar {

struct RankedRow {
    int rank = 0; // 1-based position; ties still get distinct ranks
    ScholarId scholar_id;
    std::string name;
    Count citations_all = 0;
    std::optional<Count> delta_citations; // vs. the previous snapshot, when known

    friend bool operator==(const RankedRow&, const RankedRow&) = default;
};

struct CitationDelta {
    ScholarId scholar_id;
    Timestamp previous_at;
    Timestamp current_at;
    Count d_citations_all = 0;
    Count d_h_index_all = 0;
    Count d_i10_all = 0;

    friend bool operator==(const CitationDelta&, const CitationDelta&) = default;
};

/// Orders by citations_all descending, then name (ASCII case-insensitive),
/// then scholar_id bytes. `previous` supplies the prior snapshot per ID for
/// delta_citations. Throws Error(DuplicateId).
std::vector<RankedRow> rank(std::span<const Snapshot> latest,
                            const std::map<ScholarId, Snapshot>& previous = {});

/// True if `a` sorts strictly before `b` under the ranking order.
bool ranks_before(const Snapshot& a, const Snapshot& b) noexcept;

/// Largest h such that at least h of the counts are >= h.
Count compute_h_index(std::span<const Count> citation_counts);

/// curr - prev for the three all-time metrics.
/// Throws Error(IdMismatch) or Error(TimeOrder).
CitationDelta delta(const Snapshot& prev, const Snapshot& curr);

} // namespace scholar

#include "scholar/metrics.hpp"

#include "scholar/errors.hpp"

#include <algorithm>
#include <unordered_set>

namespace scholar {

namespace {

// -1, 0, 1 comparison of ASCII-lower-cased names.
int compare_names(std::string_view a, std::string_view b) noexcept
{
    const auto lower = [](unsigned char c) { return (c >= 'A' && c <= 'Z') ? c - 'A' + 'a' : c; };
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        const int ca = lower(static_cast<unsigned char>(a[i]));
        const int cb = lower(static_cast<unsigned char>(b[i]));
        if (ca != cb)
            return ca < cb ? -1 : 1;
    }
    if (a.size() == b.size())
        return 0;
    return a.size() < b.size() ? -1 : 1;
}

} // namespace

bool ranks_before(const Snapshot& a, const Snapshot& b) noexcept
{
    if (a.profile.citations_all != b.profile.citations_all)
        return a.profile.citations_all > b.profile.citations_all;
    if (const int c = compare_names(a.profile.name, b.profile.name); c != 0)
        return c < 0;
    return a.scholar_id().value() < b.scholar_id().value();
}

std::vector<RankedRow> rank(std::span<const Snapshot> latest, const std::map<ScholarId, Snapshot>& previous)
{
    std::unordered_set<ScholarId> seen;
    std::vector<const Snapshot*> order;
    order.reserve(latest.size());
    for (const auto& s : latest) {
        if (!seen.insert(s.scholar_id()).second)
            throw Error(ErrorCode::DuplicateId, "more than one snapshot for " + s.scholar_id().value());
        order.push_back(&s);
    }
    std::sort(order.begin(), order.end(), [](const Snapshot* a, const Snapshot* b) { return ranks_before(*a, *b); });

    std::vector<RankedRow> rows;
    rows.reserve(order.size());
    for (const Snapshot* s : order) {
        RankedRow row{static_cast<int>(rows.size()) + 1, s->scholar_id(), s->profile.name, s->profile.citations_all};
        if (const auto it = previous.find(s->scholar_id()); it != previous.end())
            row.delta_citations = s->profile.citations_all - it->second.profile.citations_all;
        rows.push_back(std::move(row));
    }
    return rows;
}

Count compute_h_index(std::span<const Count> citation_counts)
{
    // papers_with[k] = number of papers with exactly k citations, with every
    // count above n folded into bucket n (h can never exceed n).
    const std::size_t n = citation_counts.size();
    std::vector<std::size_t> papers_with(n + 1, 0);
    for (const Count c : citation_counts) {
        const auto bucket = c <= 0 ? 0 : std::min<std::size_t>(static_cast<std::size_t>(c), n);
        ++papers_with[bucket];
    }
    std::size_t at_least = 0;
    for (std::size_t h = n; h > 0; --h) {
        at_least += papers_with[h];
        if (at_least >= h)
            return static_cast<Count>(h);
    }
    return 0;
}

CitationDelta delta(const Snapshot& prev, const Snapshot& curr)
{
    if (prev.scholar_id() != curr.scholar_id())
        throw Error(ErrorCode::IdMismatch,
                    "cannot diff snapshots of " + prev.scholar_id().value() + " and " + curr.scholar_id().value());
    if (curr.fetched_at < prev.fetched_at)
        throw Error(ErrorCode::TimeOrder, "current snapshot (" + format_iso8601(curr.fetched_at) +
                                              ") predates previous (" + format_iso8601(prev.fetched_at) + ")");
    return CitationDelta{
        curr.scholar_id(),
        prev.fetched_at,
        curr.fetched_at,
        curr.profile.citations_all - prev.profile.citations_all,
        curr.profile.h_index_all - prev.profile.h_index_all,
        curr.profile.i10_all - prev.profile.i10_all,
    };
}

} // namespace scholar

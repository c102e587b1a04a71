#include "scholar/commands.hpp"

#include "scholar/errors.hpp"
#include "scholar/fetcher.hpp"
#include "scholar/profile_parser.hpp"

#include <json.hpp>

#include <sstream>

namespace scholar {

namespace {

UpdateStatus status_for(FetchErrorKind kind) noexcept
{
    switch (kind) {
    case FetchErrorKind::NotFound: return UpdateStatus::NotFound;
    case FetchErrorKind::RateLimitedByServer: return UpdateStatus::RateLimited;
    case FetchErrorKind::Blocked: return UpdateStatus::Blocked;
    case FetchErrorKind::NetworkFailure: return UpdateStatus::NetworkFailed;
    }
    return UpdateStatus::NetworkFailed;
}

std::string csv_field(std::string_view value)
{
    if (value.find_first_of(",\"\r\n") == std::string_view::npos)
        return std::string(value);
    std::string out = "\"";
    for (char c : value) {
        if (c == '"')
            out += '"';
        out += c;
    }
    out += '"';
    return out;
}

} // namespace

const char* to_string(UpdateStatus status) noexcept
{
    switch (status) {
    case UpdateStatus::Updated: return "updated";
    case UpdateStatus::NotFound: return "not_found";
    case UpdateStatus::Blocked: return "blocked";
    case UpdateStatus::RateLimited: return "rate_limited";
    case UpdateStatus::NetworkFailed: return "network_failed";
    case UpdateStatus::ParseFailed: return "parse_failed";
    }
    return "unknown";
}

int UpdateReport::exit_code() const
{
    if (entries.empty())
        return 0;
    const int updated = count(UpdateStatus::Updated);
    if (updated == static_cast<int>(entries.size()))
        return 0;
    return updated == 0 ? 3 : 1;
}

UpdateReport cmd_update(const TrackerConfig& config, SnapshotStore& store, HttpTransport& transport, Clock& clock,
                        const UpdateProgress& progress)
{
    if (!store.writable())
        throw Error(ErrorCode::IoDenied, "update needs a writable store");

    UpdateReport report;
    report.started_at = clock.now();

    const auto record = [&](UpdateEntry entry) {
        ++report.counts[static_cast<std::size_t>(entry.status)];
        report.entries.push_back(std::move(entry));
        if (progress)
            progress(report.entries.back());
    };

    paced_sequence(config.scholar_ids, config.policy, transport, clock, [&](const SequenceEntry& result) {
        UpdateEntry entry{result.scholar_id};
        if (const auto* failure = std::get_if<FetchError>(&result.outcome)) {
            entry.status = status_for(failure->kind);
            entry.attempts = failure->attempts;
            entry.detail = failure->detail;
            record(std::move(entry));
            return;
        }

        const auto& page = std::get<PageFetch>(result.outcome);
        entry.attempts = 1;
        try {
            Snapshot snapshot{parse_profile(page.html, page.scholar_id), page.fetched_at};
            if (const auto prior = store.latest(page.scholar_id)) {
                if (prior->fetched_at <= snapshot.fetched_at)
                    entry.delta = delta(*prior, snapshot);
            }
            store.append(snapshot);
            entry.snapshot = std::move(snapshot);
            entry.status = UpdateStatus::Updated;
        } catch (const Error& e) {
            if (e.code() == ErrorCode::IoDenied)
                throw;
            entry.status = e.code() == ErrorCode::BlockedPage ? UpdateStatus::Blocked : UpdateStatus::ParseFailed;
            entry.detail = e.what();
        }
        record(std::move(entry));
    });

    report.finished_at = clock.now();
    return report;
}

RankView cmd_rank(const TrackerConfig& config, const SnapshotStore& store, Timestamp now,
                  std::chrono::seconds stale_after)
{
    RankView view;
    std::vector<Snapshot> latest;
    std::map<ScholarId, Snapshot> previous;
    for (const auto& id : config.scholar_ids) {
        auto history = store.history(id);
        if (history.empty()) {
            view.never_fetched.push_back(id);
            continue;
        }
        if (history.size() >= 2)
            previous.emplace(id, history[history.size() - 2]);
        latest.push_back(std::move(history.back()));
    }

    std::map<ScholarId, Timestamp> fetched_at;
    for (const auto& s : latest)
        fetched_at.emplace(s.scholar_id(), s.fetched_at);

    for (auto& row : rank(latest, previous)) {
        const Timestamp when = fetched_at.at(row.scholar_id);
        const auto age = now > when ? now - when : std::chrono::seconds{0};
        view.entries.push_back(RankEntry{std::move(row), when, age, age > stale_after});
    }
    return view;
}

std::vector<HistoryRow> cmd_history(const TrackerConfig& config, const SnapshotStore& store, std::string_view raw_id)
{
    const ScholarId id = extract_scholar_id(raw_id);
    if (!config.tracks(id))
        throw Error(ErrorCode::NotTracked, id.value() + " is not tracked");

    std::vector<HistoryRow> rows;
    for (auto& snapshot : store.history(id)) {
        HistoryRow row{std::move(snapshot)};
        if (!rows.empty())
            row.delta_citations = row.snapshot.profile.citations_all - rows.back().snapshot.profile.citations_all;
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<ListEntry> cmd_list(const TrackerConfig& config, const SnapshotStore& store)
{
    std::vector<ListEntry> out;
    for (const auto& id : config.scholar_ids)
        out.push_back(ListEntry{id, store.latest(id)});
    return out;
}

std::string cmd_export(const SnapshotStore& store, std::string_view format)
{
    const auto latest = store.all_latest();
    if (format == "json") {
        nlohmann::json array = nlohmann::json::array();
        for (const auto& [id, snapshot] : latest)
            array.push_back(snapshot_to_json(snapshot));
        return array.dump(2) + "\n";
    }
    if (format == "csv") {
        std::ostringstream out;
        out << csv_header << '\n';
        for (const auto& [id, s] : latest) {
            const auto& p = s.profile;
            out << csv_field(id.value()) << ',' << csv_field(p.name) << ',' << p.citations_all << ','
                << p.citations_recent << ',' << p.h_index_all << ',' << p.h_index_recent << ',' << p.i10_all << ','
                << p.i10_recent << ',' << format_iso8601(s.fetched_at) << '\n';
        }
        return out.str();
    }
    throw Error(ErrorCode::UnknownFormat, "unknown export format '" + std::string(format) + "' (expected json or csv)");
}

} // namespace scholar

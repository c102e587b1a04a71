#include "scholar/render.hpp"

#include <json.hpp>

#include <sstream>

namespace scholar::render {

namespace {

using nlohmann::json;

std::size_t display_width(std::string_view s) noexcept
{
    std::size_t n = 0;
    for (unsigned char c : s) {
        if ((c & 0xC0) != 0x80)
            ++n;
    }
    return n;
}

json optional_count(const std::optional<Count>& value)
{
    return value ? json(*value) : json(nullptr);
}

json delta_json(const CitationDelta& d)
{
    return {
        {"previous_at", format_iso8601(d.previous_at)},
        {"current_at", format_iso8601(d.current_at)},
        {"d_citations_all", d.d_citations_all},
        {"d_h_index_all", d.d_h_index_all},
        {"d_i10_all", d.d_i10_all},
    };
}

} // namespace

std::string format_age(std::chrono::seconds age)
{
    using namespace std::chrono;
    if (age < hours(1))
        return std::to_string(duration_cast<minutes>(age).count()) + "m";
    if (age < hours(24))
        return std::to_string(duration_cast<hours>(age).count()) + "h";
    return std::to_string(duration_cast<hours>(age).count() / 24) + "d";
}

std::string format_delta(const std::optional<Count>& delta)
{
    if (!delta)
        return {};
    if (*delta > 0)
        return "+" + std::to_string(*delta);
    return std::to_string(*delta);
}

std::string table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows,
                  const std::vector<bool>& right_align)
{
    std::vector<std::size_t> widths(header.size(), 0);
    const auto widen = [&](const std::vector<std::string>& row) {
        for (std::size_t c = 0; c < row.size() && c < widths.size(); ++c)
            widths[c] = std::max(widths[c], display_width(row[c]));
    };
    widen(header);
    for (const auto& row : rows)
        widen(row);

    std::ostringstream out;
    const auto emit = [&](const std::vector<std::string>& row) {
        std::string line;
        for (std::size_t c = 0; c < widths.size(); ++c) {
            const std::string& cell = c < row.size() ? row[c] : std::string();
            const std::string pad(widths[c] - display_width(cell), ' ');
            if (c > 0)
                line += "  ";
            const bool right = c < right_align.size() && right_align[c];
            line += right ? pad + cell : cell + pad;
        }
        while (!line.empty() && line.back() == ' ')
            line.pop_back();
        out << line << '\n';
    };
    emit(header);
    for (const auto& row : rows)
        emit(row);
    return out.str();
}

std::string update_text(const UpdateReport& report)
{
    std::vector<std::vector<std::string>> rows;
    for (const auto& e : report.entries) {
        std::vector<std::string> row{to_string(e.status), e.scholar_id.value()};
        if (e.snapshot) {
            row.push_back(e.snapshot->profile.name);
            row.push_back(std::to_string(e.snapshot->profile.citations_all));
            row.push_back(format_delta(e.delta ? std::optional<Count>(e.delta->d_citations_all) : std::nullopt));
            row.push_back("");
        } else {
            row.insert(row.end(), {"", "", "", e.detail});
        }
        rows.push_back(std::move(row));
    }
    std::ostringstream out;
    if (!rows.empty())
        out << table({"STATUS", "SCHOLAR ID", "NAME", "CITATIONS", "DELTA", "DETAIL"}, rows,
                     {false, false, false, true, true, false});
    out << report.count(UpdateStatus::Updated) << " of " << report.entries.size() << " updated";
    bool first = true;
    for (std::size_t i = 1; i < update_status_count; ++i) {
        if (report.counts[i] == 0)
            continue;
        out << (first ? " (" : ", ") << report.counts[i] << ' ' << to_string(static_cast<UpdateStatus>(i));
        first = false;
    }
    if (!first)
        out << ')';
    out << '\n';
    return out.str();
}

std::string update_json(const UpdateReport& report)
{
    json counts = json::object();
    for (std::size_t i = 0; i < update_status_count; ++i)
        counts[to_string(static_cast<UpdateStatus>(i))] = report.counts[i];
    json entries = json::array();
    for (const auto& e : report.entries) {
        entries.push_back({
            {"scholar_id", e.scholar_id.value()},
            {"status", to_string(e.status)},
            {"attempts", e.attempts},
            {"detail", e.detail},
            {"snapshot", e.snapshot ? snapshot_to_json(*e.snapshot) : json(nullptr)},
            {"delta", e.delta ? delta_json(*e.delta) : json(nullptr)},
        });
    }
    const json j = {
        {"started_at", format_iso8601(report.started_at)},
        {"finished_at", format_iso8601(report.finished_at)},
        {"counts", counts},
        {"entries", entries},
        {"exit_code", report.exit_code()},
    };
    return j.dump(2) + "\n";
}

std::string rank_text(const RankView& view, std::size_t configured)
{
    if (configured == 0)
        return "no researchers tracked\n";
    std::vector<std::vector<std::string>> rows;
    for (const auto& e : view.entries) {
        rows.push_back({std::to_string(e.row.rank), e.row.scholar_id.value(), e.row.name,
                        std::to_string(e.row.citations_all), format_delta(e.row.delta_citations),
                        format_age(e.age), e.stale ? "stale" : ""});
    }
    std::string out = table({"RANK", "SCHOLAR ID", "NAME", "CITATIONS", "DELTA", "AGE", "STATUS"}, rows,
                            {true, false, false, true, true, true, false});
    if (!view.never_fetched.empty()) {
        out += "\nNever fetched (" + std::to_string(view.never_fetched.size()) + "):\n";
        for (const auto& id : view.never_fetched)
            out += "  " + id.value() + "\n";
    }
    return out;
}

std::string rank_json(const RankView& view)
{
    json array = json::array();
    for (const auto& e : view.entries) {
        array.push_back({
            {"rank", e.row.rank},
            {"scholar_id", e.row.scholar_id.value()},
            {"name", e.row.name},
            {"citations_all", e.row.citations_all},
            {"delta_citations", optional_count(e.row.delta_citations)},
            {"fetched_at", format_iso8601(e.fetched_at)},
            {"age_seconds", e.age.count()},
            {"stale", e.stale},
        });
    }
    for (const auto& id : view.never_fetched) {
        array.push_back({
            {"rank", nullptr},
            {"scholar_id", id.value()},
            {"name", nullptr},
            {"citations_all", nullptr},
            {"delta_citations", nullptr},
            {"fetched_at", nullptr},
            {"age_seconds", nullptr},
            {"stale", nullptr},
        });
    }
    return array.dump(2) + "\n";
}

std::string history_text(const ScholarId& id, const std::vector<HistoryRow>& rows)
{
    std::string out = "History for ";
    out += rows.empty() ? id.value() : rows.back().snapshot.profile.name + " (" + id.value() + ")";
    out += "\n";
    if (rows.empty())
        return out + "no snapshots stored\n";
    std::vector<std::vector<std::string>> cells;
    for (const auto& r : rows) {
        const auto& p = r.snapshot.profile;
        cells.push_back({format_iso8601(r.snapshot.fetched_at), std::to_string(p.citations_all),
                         format_delta(r.delta_citations), std::to_string(p.h_index_all), std::to_string(p.i10_all)});
    }
    return out + table({"FETCHED AT", "CITATIONS", "DELTA", "H-INDEX", "I10-INDEX"}, cells,
                       {false, true, true, true, true});
}

std::string history_json(const std::vector<HistoryRow>& rows)
{
    json array = json::array();
    for (const auto& r : rows) {
        json j = snapshot_to_json(r.snapshot);
        j["delta_citations"] = optional_count(r.delta_citations);
        array.push_back(std::move(j));
    }
    return array.dump(2) + "\n";
}

std::string list_text(const std::vector<ListEntry>& entries)
{
    if (entries.empty())
        return "no researchers tracked\n";
    std::vector<std::vector<std::string>> rows;
    for (const auto& e : entries) {
        if (e.latest) {
            rows.push_back({e.scholar_id.value(), e.latest->profile.name,
                            std::to_string(e.latest->profile.citations_all), format_iso8601(e.latest->fetched_at)});
        } else {
            rows.push_back({e.scholar_id.value(), "(never fetched)", "", ""});
        }
    }
    return table({"SCHOLAR ID", "NAME", "CITATIONS", "FETCHED AT"}, rows, {false, false, true, false});
}

std::string list_json(const std::vector<ListEntry>& entries)
{
    json array = json::array();
    for (const auto& e : entries) {
        array.push_back({
            {"scholar_id", e.scholar_id.value()},
            {"name", e.latest ? json(e.latest->profile.name) : json(nullptr)},
            {"citations_all", e.latest ? json(e.latest->profile.citations_all) : json(nullptr)},
            {"fetched_at", e.latest ? json(format_iso8601(e.latest->fetched_at)) : json(nullptr)},
        });
    }
    return array.dump(2) + "\n";
}

} // namespace scholar::render

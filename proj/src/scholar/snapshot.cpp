#include "scholar/snapshot.hpp"

#include "scholar/errors.hpp"

namespace scholar {

namespace {

[[noreturn]] void bad_field(const std::string& what)
{
    throw Error(ErrorCode::InvalidArgument, what);
}

const nlohmann::json& require(const nlohmann::json& object, const char* key)
{
    const auto it = object.find(key);
    if (it == object.end())
        bad_field(std::string("missing field '") + key + "'");
    return *it;
}

Count require_count(const nlohmann::json& object, const char* key)
{
    const auto& value = require(object, key);
    if (!value.is_number_integer())
        bad_field(std::string("field '") + key + "' must be an integer");
    if (value.is_number_unsigned() && value.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX))
        bad_field(std::string("field '") + key + "' is out of range");
    const auto n = value.get<Count>();
    if (n < 0)
        bad_field(std::string("field '") + key + "' must be non-negative");
    return n;
}

std::string require_string(const nlohmann::json& object, const char* key)
{
    const auto& value = require(object, key);
    if (!value.is_string())
        bad_field(std::string("field '") + key + "' must be a string");
    return value.get<std::string>();
}

} // namespace

nlohmann::json profile_to_json(const ResearcherProfile& p)
{
    nlohmann::json j = {
        {"scholar_id", p.scholar_id.value()},
        {"name", p.name},
        {"citations_all", p.citations_all},
        {"citations_recent", p.citations_recent},
        {"h_index_all", p.h_index_all},
        {"h_index_recent", p.h_index_recent},
        {"i10_all", p.i10_all},
        {"i10_recent", p.i10_recent},
    };
    j["recent_since_year"] = p.recent_since_year ? nlohmann::json(*p.recent_since_year) : nlohmann::json(nullptr);
    return j;
}

ResearcherProfile profile_from_json(const nlohmann::json& j)
{
    if (!j.is_object())
        bad_field("record must be a JSON object");
    const std::string id_text = require_string(j, "scholar_id");
    if (!ScholarId::is_valid(id_text))
        bad_field("field 'scholar_id' is not a valid Scholar ID: '" + id_text + "'");

    ResearcherProfile p{ScholarId::parse(id_text), require_string(j, "name")};
    p.citations_all = require_count(j, "citations_all");
    p.citations_recent = require_count(j, "citations_recent");
    p.h_index_all = require_count(j, "h_index_all");
    p.h_index_recent = require_count(j, "h_index_recent");
    p.i10_all = require_count(j, "i10_all");
    p.i10_recent = require_count(j, "i10_recent");
    if (const auto it = j.find("recent_since_year"); it != j.end() && !it->is_null()) {
        if (!it->is_number_integer())
            bad_field("field 'recent_since_year' must be an integer or null");
        p.recent_since_year = it->get<int>();
    }
    if (const auto violation = profile_violation(p))
        bad_field(*violation);
    return p;
}

nlohmann::json snapshot_to_json(const Snapshot& s)
{
    nlohmann::json j = profile_to_json(s.profile);
    j["fetched_at"] = format_iso8601(s.fetched_at);
    return j;
}

Snapshot snapshot_from_json(const nlohmann::json& j)
{
    ResearcherProfile profile = profile_from_json(j);
    const std::string when = require_string(j, "fetched_at");
    const auto fetched_at = parse_iso8601(when);
    if (!fetched_at)
        bad_field("field 'fetched_at' is not YYYY-MM-DDThh:mm:ssZ: '" + when + "'");
    return Snapshot{std::move(profile), *fetched_at};
}

std::string snapshot_to_line(const Snapshot& snapshot)
{
    return snapshot_to_json(snapshot).dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
}

Snapshot snapshot_from_line(std::string_view line)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::InvalidArgument, std::string("invalid JSON: ") + e.what());
    }
    return snapshot_from_json(j);
}

} // namespace scholar

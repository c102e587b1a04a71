#include "scholar/config.hpp"

#include "scholar/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <unordered_set>

namespace scholar {

namespace {

using nlohmann::json;

[[noreturn]] void invalid(const std::string& origin, const std::string& key, const std::string& what)
{
    throw Error(ErrorCode::ConfigInvalid, origin + ": key '" + key + "': " + what);
}

std::int64_t read_integer(const json& j, const std::string& origin, const std::string& key, std::int64_t min)
{
    if (!j.is_number_integer())
        invalid(origin, key, "must be an integer");
    if (j.is_number_unsigned() && j.get<std::uint64_t>() > static_cast<std::uint64_t>(std::numeric_limits<int>::max()))
        invalid(origin, key, "is too large");
    const auto value = j.get<std::int64_t>();
    if (value < min)
        invalid(origin, key, "must be >= " + std::to_string(min));
    if (value > std::numeric_limits<int>::max())
        invalid(origin, key, "is too large");
    return value;
}

constexpr const char* kKnownKeys[] = {
    "scholar_ids", "rate_limit_ms", "timeout_ms", "max_retries", "backoff_base_ms",
    "user_agent", "store_path", "block_breaker_threshold",
};

} // namespace

bool TrackerConfig::tracks(const ScholarId& id) const
{
    return std::find(scholar_ids.begin(), scholar_ids.end(), id) != scholar_ids.end();
}

std::filesystem::path resolve_config_path(const std::optional<std::string>& flag)
{
    if (flag && !flag->empty())
        return *flag;
    if (const char* env = std::getenv(config_env_var); env != nullptr && *env != '\0')
        return env;
    return "config.json";
}

LoadedConfig parse_config(std::string_view text, const std::string& origin)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::ConfigSyntax, origin + ": syntax error at byte " + std::to_string(e.byte) + ": " + e.what());
    }
    if (!j.is_object())
        throw Error(ErrorCode::ConfigInvalid, origin + ": top level must be a JSON object");

    LoadedConfig loaded;
    TrackerConfig& config = loaded.config;

    for (const auto& [key, value] : j.items()) {
        if (std::find(std::begin(kKnownKeys), std::end(kKnownKeys), key) == std::end(kKnownKeys))
            loaded.warnings.push_back(origin + ": ignoring unknown key '" + key + "'");
    }

    if (const auto it = j.find("scholar_ids"); it != j.end()) {
        if (!it->is_array())
            invalid(origin, "scholar_ids", "must be an array of strings");
        std::unordered_set<std::string> seen;
        for (std::size_t i = 0; i < it->size(); ++i) {
            const auto& entry = (*it)[i];
            const std::string key = "scholar_ids[" + std::to_string(i) + "]";
            if (!entry.is_string())
                invalid(origin, key, "must be a string");
            const auto text_id = entry.get<std::string>();
            if (!ScholarId::is_valid(text_id))
                invalid(origin, key, "'" + text_id + "' is not a valid Scholar ID");
            if (!seen.insert(text_id).second)
                invalid(origin, key, "duplicate Scholar ID '" + text_id + "'");
            config.scholar_ids.push_back(ScholarId::parse(text_id));
        }
    }

    auto& policy = config.policy;
    if (const auto it = j.find("rate_limit_ms"); it != j.end())
        policy.rate_limit = std::chrono::milliseconds(read_integer(*it, origin, "rate_limit_ms", 0));
    if (const auto it = j.find("timeout_ms"); it != j.end())
        policy.timeout = std::chrono::milliseconds(read_integer(*it, origin, "timeout_ms", 1));
    if (const auto it = j.find("max_retries"); it != j.end())
        policy.max_retries = static_cast<int>(read_integer(*it, origin, "max_retries", 0));
    if (const auto it = j.find("backoff_base_ms"); it != j.end())
        policy.backoff_base = std::chrono::milliseconds(read_integer(*it, origin, "backoff_base_ms", 1));
    if (const auto it = j.find("block_breaker_threshold"); it != j.end())
        policy.block_breaker_threshold = static_cast<int>(read_integer(*it, origin, "block_breaker_threshold", 0));
    if (const auto it = j.find("user_agent"); it != j.end()) {
        if (!it->is_string() || it->get<std::string>().empty())
            invalid(origin, "user_agent", "must be a non-empty string");
        policy.user_agent = it->get<std::string>();
    }
    if (const auto it = j.find("store_path"); it != j.end()) {
        if (!it->is_string() || it->get<std::string>().empty())
            invalid(origin, "store_path", "must be a non-empty string");
        config.store_path = it->get<std::string>();
    }
    return loaded;
}

LoadedConfig load_config(const std::filesystem::path& path)
{
    std::error_code ec;
    if (!std::filesystem::exists(path, ec))
        return LoadedConfig{};
    return parse_config(read_file(path), path.string());
}

std::string serialize_config(const TrackerConfig& config)
{
    json ids = json::array();
    for (const auto& id : config.scholar_ids)
        ids.push_back(id.value());
    // ordered_json keeps the keys in a readable order for hand editing.
    nlohmann::ordered_json j;
    j["scholar_ids"] = ids;
    j["rate_limit_ms"] = config.policy.rate_limit.count();
    j["timeout_ms"] = config.policy.timeout.count();
    j["max_retries"] = config.policy.max_retries;
    j["backoff_base_ms"] = config.policy.backoff_base.count();
    j["block_breaker_threshold"] = config.policy.block_breaker_threshold;
    j["user_agent"] = config.policy.user_agent;
    j["store_path"] = config.store_path;
    return j.dump(2) + "\n";
}

void save_config(const std::filesystem::path& path, const TrackerConfig& config, const BeforeCommitHook& before_commit)
{
    atomic_write_file(path, serialize_config(config), before_commit);
}

TrackerConfig add_id(const TrackerConfig& config, std::string_view raw)
{
    const ScholarId id = extract_scholar_id(raw);
    if (config.tracks(id))
        throw Error(ErrorCode::AlreadyTracked, id.value() + " is already tracked");
    TrackerConfig updated = config;
    updated.scholar_ids.push_back(id);
    return updated;
}

TrackerConfig remove_id(const TrackerConfig& config, const ScholarId& id)
{
    if (!config.tracks(id))
        throw Error(ErrorCode::NotTracked, id.value() + " is not tracked");
    TrackerConfig updated = config;
    std::erase(updated.scholar_ids, id);
    return updated;
}

} // namespace scholar

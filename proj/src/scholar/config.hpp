#pragma once

#include "scholar/fetcher.hpp"
#include "scholar/fsutil.hpp"
#include "scholar/scholar_id.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace scholar {

/// Tracked IDs in the user's curation order plus fetch policy and store path.
struct TrackerConfig {
    std::vector<ScholarId> scholar_ids;
    FetchPolicy policy;
    std::string store_path = "./scholar-store";

    bool tracks(const ScholarId& id) const;

    friend bool operator==(const TrackerConfig&, const TrackerConfig&) = default;
};

struct LoadedConfig {
    TrackerConfig config;
    std::vector<std::string> warnings; // unknown keys and the like
};

constexpr const char* config_env_var = "SCHOLAR_TRACKER_CONFIG";

/// `flag` if given, else $SCHOLAR_TRACKER_CONFIG if set and non-empty, else
/// `./config.json`.
std::filesystem::path resolve_config_path(const std::optional<std::string>& flag);

/// A missing file yields the default config. Errors: ConfigSyntax,
/// ConfigInvalid, IoDenied.
LoadedConfig load_config(const std::filesystem::path& path);

/// Parses config JSON text; `origin` is used in error messages.
LoadedConfig parse_config(std::string_view text, const std::string& origin = "config");

std::string serialize_config(const TrackerConfig& config);

/// Atomic: temp file + rename. Errors: IoDenied.
void save_config(const std::filesystem::path& path, const TrackerConfig& config,
                 const BeforeCommitHook& before_commit = {});

/// Accepts a bare ID or a profile URL. Errors: InvalidId, MissingUserParam,
/// AlreadyTracked.
TrackerConfig add_id(const TrackerConfig& config, std::string_view raw);

/// Errors: NotTracked.
TrackerConfig remove_id(const TrackerConfig& config, const ScholarId& id);

} // namespace scholar

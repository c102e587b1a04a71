#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <string_view>

namespace scholar {

/// Called after the content is written to the temporary file and before it
/// replaces the target. Throwing aborts the write and leaves the target as
/// it was.
using BeforeCommitHook = std::function<void(const std::filesystem::path& temp_path)>;

/// Writes `content` to a sibling temp file, fsyncs it and renames it over
/// `path`. Throws Error(IoDenied).
void atomic_write_file(const std::filesystem::path& path, std::string_view content,
                       const BeforeCommitHook& before_commit = {});

/// Appends `data` with O_APPEND and fsyncs before returning. Throws
/// Error(IoDenied).
void append_durably(const std::filesystem::path& path, std::string_view data);

/// Whole-file read. Throws Error(IoDenied).
std::string read_file(const std::filesystem::path& path);

} // namespace scholar

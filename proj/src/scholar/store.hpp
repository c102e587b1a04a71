#pragma once

#include "scholar/clock.hpp"
#include "scholar/snapshot.hpp"

#include <chrono>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace scholar {

enum class StoreMode { ReadOnly, ReadWrite };

struct StoreOptions {
    StoreMode mode = StoreMode::ReadWrite;
    /// Break an existing lock if it is older than stale_lock_age.
    bool force_unlock = false;
    std::chrono::seconds stale_lock_age{3600};
    /// Time source for lock stamps and lock age; the system clock if null.
    Clock* clock = nullptr;
};

/// Append-only snapshot log at `<root>/snapshots.jsonl`, one JSON object per
/// line. A ReadWrite handle owns `<root>/lock` for its lifetime; ReadOnly
/// handles never lock and never modify the file.
///
/// The whole log is loaded at open. An unterminated final line is treated
/// as an interrupted append: it is ignored with a warning, and a ReadWrite
/// open truncates it away. Any other unparseable line is StoreCorrupt.
class SnapshotStore {
public:
    static constexpr const char* log_file_name = "snapshots.jsonl";
    static constexpr const char* lock_file_name = "lock";

    /// Errors: StoreCorrupt, StoreLocked, IoDenied.
    static SnapshotStore open(const std::filesystem::path& root, const StoreOptions& options = {});

    SnapshotStore(SnapshotStore&& other) noexcept;
    SnapshotStore& operator=(SnapshotStore&& other) noexcept;
    SnapshotStore(const SnapshotStore&) = delete;
    SnapshotStore& operator=(const SnapshotStore&) = delete;
    ~SnapshotStore();

    /// Appends one line and fsyncs. Invalid snapshots are rejected with
    /// Error(InvalidArgument) before anything is written; ReadOnly handles
    /// throw Error(IoDenied).
    void append(const Snapshot& snapshot);

    /// Snapshot with the greatest fetched_at; ties go to the later line.
    std::optional<Snapshot> latest(const ScholarId& id) const;
    /// Ascending by fetched_at, file order among equal timestamps.
    std::vector<Snapshot> history(const ScholarId& id) const;
    std::map<ScholarId, Snapshot> all_latest() const;

    /// Every loaded snapshot in file order.
    std::span<const Snapshot> snapshots() const noexcept { return snapshots_; }
    const std::vector<std::string>& warnings() const noexcept { return warnings_; }
    const std::filesystem::path& root() const noexcept { return root_; }
    std::filesystem::path log_path() const { return root_ / log_file_name; }
    bool writable() const noexcept { return mode_ == StoreMode::ReadWrite; }

private:
    SnapshotStore(std::filesystem::path root, StoreMode mode);

    void load();
    void release_lock() noexcept;

    std::filesystem::path root_;
    StoreMode mode_;
    bool owns_lock_ = false;
    std::vector<Snapshot> snapshots_;
    std::vector<std::string> warnings_;
};

} // namespace scholar

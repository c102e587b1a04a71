#include "scholar/store.hpp"

#include "scholar/errors.hpp"
#include "scholar/fsutil.hpp"

#include <algorithm>
#include <cerrno>
#include <cstring>
#include <fcntl.h>
#include <unistd.h>

namespace scholar {

namespace fs = std::filesystem;

namespace {

struct LockInfo {
    long pid = 0;
    std::optional<Timestamp> started_at;
};

LockInfo read_lock(const fs::path& path)
{
    LockInfo info;
    try {
        const auto j = nlohmann::json::parse(read_file(path));
        info.pid = j.value("pid", 0L);
        if (const auto it = j.find("started_at"); it != j.end() && it->is_string())
            info.started_at = parse_iso8601(it->get<std::string>());
    } catch (const std::exception&) {
        // Unreadable lock contents; age falls back to the file's mtime.
    }
    if (!info.started_at) {
        std::error_code ec;
        const auto mtime = fs::last_write_time(path, ec);
        if (!ec) {
            const auto sys = std::chrono::file_clock::to_sys(mtime);
            info.started_at = std::chrono::floor<std::chrono::seconds>(sys);
        }
    }
    return info;
}

// Returns true if the lock was created, false if it already exists.
bool try_create_lock(const fs::path& path, Timestamp now)
{
    const int fd = ::open(path.c_str(), O_WRONLY | O_CREAT | O_EXCL | O_CLOEXEC, 0644);
    if (fd < 0) {
        if (errno == EEXIST)
            return false;
        throw Error(ErrorCode::IoDenied, "cannot create lock " + path.string() + ": " + std::strerror(errno));
    }
    const nlohmann::json body = {{"pid", static_cast<long>(::getpid())}, {"started_at", format_iso8601(now)}};
    const std::string text = body.dump() + "\n";
    const ssize_t written = ::write(fd, text.data(), text.size());
    ::close(fd);
    if (written != static_cast<ssize_t>(text.size())) {
        ::unlink(path.c_str());
        throw Error(ErrorCode::IoDenied, "cannot write lock " + path.string());
    }
    return true;
}

void acquire_lock(const fs::path& path, const StoreOptions& options)
{
    SystemClock system_clock;
    Clock& clock = options.clock ? *options.clock : system_clock;
    const Timestamp now = clock.now();

    if (try_create_lock(path, now))
        return;

    const LockInfo holder = read_lock(path);
    const auto age = holder.started_at ? now - *holder.started_at : std::chrono::seconds::max();
    std::string who = "pid " + std::to_string(holder.pid);
    if (holder.started_at)
        who += " since " + format_iso8601(*holder.started_at);

    if (options.force_unlock) {
        if (age >= options.stale_lock_age) {
            std::error_code ec;
            fs::remove(path, ec);
            if (try_create_lock(path, now))
                return;
            throw Error(ErrorCode::StoreLocked, "store lock " + path.string() + " was re-taken by another writer");
        }
        throw Error(ErrorCode::StoreLocked, "store is locked by " + who + " (" + path.string() +
                                                "); the lock is younger than " +
                                                std::to_string(options.stale_lock_age.count()) +
                                                " s and cannot be forced");
    }
    throw Error(ErrorCode::StoreLocked, "store is locked by " + who + " (" + path.string() +
                                            "); if that process is gone, rerun with --force-unlock");
}

} // namespace

SnapshotStore::SnapshotStore(fs::path root, StoreMode mode) : root_(std::move(root)), mode_(mode) {}

SnapshotStore::SnapshotStore(SnapshotStore&& other) noexcept
    : root_(std::move(other.root_)),
      mode_(other.mode_),
      owns_lock_(std::exchange(other.owns_lock_, false)),
      snapshots_(std::move(other.snapshots_)),
      warnings_(std::move(other.warnings_))
{
}

SnapshotStore& SnapshotStore::operator=(SnapshotStore&& other) noexcept
{
    if (this != &other) {
        release_lock();
        root_ = std::move(other.root_);
        mode_ = other.mode_;
        owns_lock_ = std::exchange(other.owns_lock_, false);
        snapshots_ = std::move(other.snapshots_);
        warnings_ = std::move(other.warnings_);
    }
    return *this;
}

SnapshotStore::~SnapshotStore()
{
    release_lock();
}

void SnapshotStore::release_lock() noexcept
{
    if (!owns_lock_)
        return;
    owns_lock_ = false;
    std::error_code ignored;
    fs::remove(root_ / lock_file_name, ignored);
}

SnapshotStore SnapshotStore::open(const fs::path& root, const StoreOptions& options)
{
    std::error_code ec;
    fs::create_directories(root, ec);
    if (ec)
        throw Error(ErrorCode::IoDenied, "cannot create store directory " + root.string() + ": " + ec.message());
    if (!fs::is_directory(root))
        throw Error(ErrorCode::IoDenied, "store path is not a directory: " + root.string());

    SnapshotStore store(root, options.mode);
    if (options.mode == StoreMode::ReadWrite) {
        acquire_lock(root / lock_file_name, options);
        store.owns_lock_ = true;
    }
    store.load();
    return store;
}

void SnapshotStore::load()
{
    const fs::path path = log_path();
    if (!fs::exists(path)) {
        const int fd = ::open(path.c_str(), O_WRONLY | O_CREAT | O_CLOEXEC, 0644);
        if (fd < 0)
            throw Error(ErrorCode::IoDenied, "cannot create " + path.string() + ": " + std::strerror(errno));
        ::close(fd);
        return;
    }

    const std::string content = read_file(path);
    std::size_t pos = 0;
    std::size_t line_number = 0;
    while (pos < content.size()) {
        ++line_number;
        const auto newline = content.find('\n', pos);
        if (newline == std::string::npos) {
            warnings_.push_back(path.string() + ": discarding incomplete final line " + std::to_string(line_number) +
                                " (" + std::to_string(content.size() - pos) + " bytes, interrupted append)");
            if (mode_ == StoreMode::ReadWrite) {
                if (::truncate(path.c_str(), static_cast<off_t>(pos)) != 0)
                    throw Error(ErrorCode::IoDenied, "cannot truncate " + path.string() + ": " + std::strerror(errno));
            }
            break;
        }
        std::string_view line(content.data() + pos, newline - pos);
        pos = newline + 1;
        if (!line.empty() && line.back() == '\r')
            line.remove_suffix(1);
        if (line.find_first_not_of(" \t") == std::string_view::npos)
            continue;
        try {
            snapshots_.push_back(snapshot_from_line(line));
        } catch (const Error& e) {
            throw Error(ErrorCode::StoreCorrupt,
                        path.string() + ": line " + std::to_string(line_number) + ": " + e.what());
        }
    }
}

void SnapshotStore::append(const Snapshot& snapshot)
{
    if (const auto violation = profile_violation(snapshot.profile))
        throw Error(ErrorCode::InvalidArgument, "rejected snapshot for " + snapshot.scholar_id().value() + ": " + *violation);
    if (mode_ != StoreMode::ReadWrite)
        throw Error(ErrorCode::IoDenied, "store " + root_.string() + " was opened read-only");

    append_durably(log_path(), snapshot_to_line(snapshot) + "\n");
    snapshots_.push_back(snapshot);
}

std::optional<Snapshot> SnapshotStore::latest(const ScholarId& id) const
{
    const Snapshot* best = nullptr;
    for (const auto& s : snapshots_) {
        if (s.scholar_id() == id && (best == nullptr || s.fetched_at >= best->fetched_at))
            best = &s;
    }
    if (best == nullptr)
        return std::nullopt;
    return *best;
}

std::vector<Snapshot> SnapshotStore::history(const ScholarId& id) const
{
    std::vector<Snapshot> out;
    for (const auto& s : snapshots_) {
        if (s.scholar_id() == id)
            out.push_back(s);
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const Snapshot& a, const Snapshot& b) { return a.fetched_at < b.fetched_at; });
    return out;
}

std::map<ScholarId, Snapshot> SnapshotStore::all_latest() const
{
    std::map<ScholarId, Snapshot> out;
    for (const auto& s : snapshots_) {
        auto it = out.find(s.scholar_id());
        if (it == out.end())
            out.emplace(s.scholar_id(), s);
        else if (s.fetched_at >= it->second.fetched_at)
            it->second = s;
    }
    return out;
}

} // namespace scholar

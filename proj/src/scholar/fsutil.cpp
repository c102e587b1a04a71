#include "scholar/fsutil.hpp"

#include "scholar/errors.hpp"

#include <cerrno>
#include <cstring>
#include <fcntl.h>
#include <fstream>
#include <sstream>
#include <unistd.h>

namespace scholar {

namespace {

[[noreturn]] void io_error(const std::string& what, const std::filesystem::path& path, int err)
{
    throw Error(ErrorCode::IoDenied, what + " " + path.string() + ": " + std::strerror(err));
}

void write_all(int fd, std::string_view data, const std::filesystem::path& path)
{
    while (!data.empty()) {
        const ssize_t n = ::write(fd, data.data(), data.size());
        if (n < 0) {
            if (errno == EINTR)
                continue;
            io_error("cannot write", path, errno);
        }
        data.remove_prefix(static_cast<std::size_t>(n));
    }
}

} // namespace

void atomic_write_file(const std::filesystem::path& path, std::string_view content,
                       const BeforeCommitHook& before_commit)
{
    std::filesystem::path temp = path;
    temp += ".tmp." + std::to_string(::getpid());

    const int fd = ::open(temp.c_str(), O_WRONLY | O_CREAT | O_TRUNC | O_CLOEXEC, 0644);
    if (fd < 0)
        io_error("cannot create", temp, errno);
    bool open = true;
    try {
        write_all(fd, content, temp);
        if (::fsync(fd) != 0)
            io_error("cannot sync", temp, errno);
        open = false;
        if (::close(fd) != 0)
            io_error("cannot close", temp, errno);
        if (before_commit)
            before_commit(temp);
    } catch (...) {
        if (open)
            ::close(fd);
        std::error_code ignored;
        std::filesystem::remove(temp, ignored);
        throw;
    }
    if (::rename(temp.c_str(), path.c_str()) != 0) {
        const int err = errno;
        std::error_code ignored;
        std::filesystem::remove(temp, ignored);
        io_error("cannot replace", path, err);
    }
}

void append_durably(const std::filesystem::path& path, std::string_view data)
{
    const int fd = ::open(path.c_str(), O_WRONLY | O_APPEND | O_CREAT | O_CLOEXEC, 0644);
    if (fd < 0)
        io_error("cannot open", path, errno);
    try {
        write_all(fd, data, path);
        if (::fsync(fd) != 0)
            io_error("cannot sync", path, errno);
    } catch (...) {
        ::close(fd);
        throw;
    }
    if (::close(fd) != 0)
        io_error("cannot close", path, errno);
}

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        io_error("cannot open", path, errno);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad())
        io_error("cannot read", path, errno);
    return buffer.str();
}

} // namespace scholar

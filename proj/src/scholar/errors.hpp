#pragma once

#include <stdexcept>
#include <string>

namespace scholar {

// Values mirror st_status in the public C header; keep them in sync.
enum class ErrorCode {
    InvalidId = 1,
    MissingUserParam = 2,
    NotANumber = 3,
    BlockedPage = 4,
    MalformedProfile = 5,
    ConfigSyntax = 6,
    ConfigInvalid = 7,
    AlreadyTracked = 8,
    NotTracked = 9,
    StoreCorrupt = 10,
    StoreLocked = 11,
    IoDenied = 12,
    UnknownFormat = 13,
    DuplicateId = 14,
    IdMismatch = 15,
    TimeOrder = 16,
    InvalidArgument = 17,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message);

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace scholar

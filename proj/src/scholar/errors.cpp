#include "scholar/errors.hpp"

namespace scholar {

const char* to_string(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::InvalidId: return "InvalidId";
    case ErrorCode::MissingUserParam: return "MissingUserParam";
    case ErrorCode::NotANumber: return "NotANumber";
    case ErrorCode::BlockedPage: return "BlockedPage";
    case ErrorCode::MalformedProfile: return "MalformedProfile";
    case ErrorCode::ConfigSyntax: return "ConfigSyntax";
    case ErrorCode::ConfigInvalid: return "ConfigInvalid";
    case ErrorCode::AlreadyTracked: return "AlreadyTracked";
    case ErrorCode::NotTracked: return "NotTracked";
    case ErrorCode::StoreCorrupt: return "StoreCorrupt";
    case ErrorCode::StoreLocked: return "StoreLocked";
    case ErrorCode::IoDenied: return "IoDenied";
    case ErrorCode::UnknownFormat: return "UnknownFormat";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::IdMismatch: return "IdMismatch";
    case ErrorCode::TimeOrder: return "TimeOrder";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(message), code_(code)
{
}

} // namespace scholar

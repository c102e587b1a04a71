#include "scholar/transport.hpp"

#include <algorithm>

namespace scholar {

std::optional<std::string> find_header(const Headers& headers, std::string_view name)
{
    const auto lower = [](char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; };
    for (const auto& [key, value] : headers) {
        if (key.size() == name.size() &&
            std::equal(key.begin(), key.end(), name.begin(), [&](char a, char b) { return lower(a) == lower(b); }))
            return value;
    }
    return std::nullopt;
}

const char* to_string(TransportFailure failure) noexcept
{
    switch (failure) {
    case TransportFailure::Timeout: return "timeout";
    case TransportFailure::ConnectionFailed: return "connection failed";
    }
    return "unknown";
}

} // namespace scholar

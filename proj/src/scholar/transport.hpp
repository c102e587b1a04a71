#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace scholar {

using Headers = std::vector<std::pair<std::string, std::string>>;

/// Case-insensitive header lookup; first match wins.
std::optional<std::string> find_header(const Headers& headers, std::string_view name);

struct HttpRequest {
    std::string method = "GET";
    std::string url; // absolute
    Headers headers;
    std::chrono::milliseconds timeout{10000};
};

struct HttpResponse {
    int status = 0;
    Headers headers;
    std::string body;
};

enum class TransportFailure { Timeout, ConnectionFailed };

const char* to_string(TransportFailure failure) noexcept;

using TransportResult = std::variant<HttpResponse, TransportFailure>;

/// One HTTP exchange. Implementations must not follow redirects themselves
/// and must be safe to call from several threads.
class HttpTransport {
public:
    virtual ~HttpTransport() = default;
    virtual TransportResult send(const HttpRequest& request) = 0;
};

} // namespace scholar

#pragma once

#include "scholar/transport.hpp"

namespace scholar {

/// Real network transport on cpp-httplib. Redirects are returned to the
/// caller, not followed. HTTPS needs the TLS-enabled build.
class HttplibTransport final : public HttpTransport {
public:
    TransportResult send(const HttpRequest& request) override;
};

} // namespace scholar

#include "scholar/httplib_transport.hpp"

#include <httplib.h>

namespace scholar {

TransportResult HttplibTransport::send(const HttpRequest& request)
{
    const auto scheme_end = request.url.find("://");
    if (scheme_end == std::string::npos)
        return TransportFailure::ConnectionFailed;
    const auto path_start = request.url.find('/', scheme_end + 3);
    const std::string origin = request.url.substr(0, path_start);
    const std::string target = path_start == std::string::npos ? "/" : request.url.substr(path_start);

    httplib::Client client(origin);
    if (!client.is_valid())
        return TransportFailure::ConnectionFailed;

    const auto seconds = request.timeout.count() / 1000;
    const auto micros = (request.timeout.count() % 1000) * 1000;
    client.set_connection_timeout(seconds, micros);
    client.set_read_timeout(seconds, micros);
    client.set_write_timeout(seconds, micros);
    client.set_follow_location(false);

    httplib::Headers headers;
    for (const auto& [name, value] : request.headers)
        headers.emplace(name, value);

    const auto result = client.Get(target, headers);
    if (!result) {
        switch (result.error()) {
        case httplib::Error::ConnectionTimeout:
        case httplib::Error::Read:
            return TransportFailure::Timeout;
        default:
            return TransportFailure::ConnectionFailed;
        }
    }

    HttpResponse response;
    response.status = result->status;
    response.body = result->body;
    for (const auto& [name, value] : result->headers)
        response.headers.emplace_back(name, value);
    return response;
}

} // namespace scholar

#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace scholar {

/// UTC instant with second precision.
using Timestamp = std::chrono::sys_seconds;

/// Formats as `YYYY-MM-DDThh:mm:ssZ`.
std::string format_iso8601(Timestamp t);

/// Strict inverse of format_iso8601. Anything else, including offsets other
/// than `Z`, fractional seconds and out-of-range fields, yields nullopt.
std::optional<Timestamp> parse_iso8601(std::string_view text);

} // namespace scholar

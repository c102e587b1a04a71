#pragma once

#include <compare>
#include <functional>
#include <string>
#include <string_view>

namespace scholar {

/// Google Scholar profile identifier (the `user=` parameter of a citations
/// URL). Always holds a valid value: 10 to 16 characters from [A-Za-z0-9_-].
class ScholarId {
public:
    static constexpr std::size_t min_length = 10;
    static constexpr std::size_t max_length = 16;

    /// Throws Error(InvalidId) when `text` is not a well-formed bare ID.
    static ScholarId parse(std::string_view text);
    static bool is_valid(std::string_view text) noexcept;

    const std::string& value() const noexcept { return value_; }

    friend bool operator==(const ScholarId&, const ScholarId&) = default;
    friend auto operator<=>(const ScholarId&, const ScholarId&) = default;

private:
    explicit ScholarId(std::string value) : value_(std::move(value)) {}

    std::string value_;
};

/// Accepts either a bare ID or a Scholar citations URL and returns the ID.
/// Errors: InvalidId (bad bare ID, or a URL that is not the citations
/// endpoint), MissingUserParam (citations URL without `user=`).
ScholarId extract_scholar_id(std::string_view input);

/// `https://scholar.google.com/citations?user=<id>&hl=en`
std::string profile_url(const ScholarId& id);

} // namespace scholar

template <>
struct std::hash<scholar::ScholarId> {
    std::size_t operator()(const scholar::ScholarId& id) const noexcept
    {
        return std::hash<std::string>{}(id.value());
    }
};

#pragma once

#include "scholar/profile_parser.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace testing {

inline const std::filesystem::path fixture_dir{SCHOLAR_FIXTURE_DIR};

struct ProfileFixture {
    std::string name;      // e.g. "fixture_a"
    std::string html;
    scholar::ResearcherProfile expected;
};

/// Every `profiles/<name>.html` with its `<name>.expected.json`, sorted by name.
std::vector<ProfileFixture> load_profile_fixtures();

/// Contents of `pages/<file>`.
std::string page_fixture(const std::string& file);

} // namespace testing

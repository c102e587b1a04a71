#include "support/fixtures.hpp"

#include "scholar/snapshot.hpp"
#include "support/temp_dir.hpp"

#include <algorithm>

namespace testing {

std::vector<ProfileFixture> load_profile_fixtures()
{
    std::vector<ProfileFixture> out;
    for (const auto& entry : std::filesystem::directory_iterator(fixture_dir / "profiles")) {
        const auto& path = entry.path();
        if (path.extension() != ".html")
            continue;
        const std::string name = path.stem().string();
        const auto expected_json = nlohmann::json::parse(slurp(fixture_dir / "profiles" / (name + ".expected.json")));
        out.push_back({name, slurp(path), scholar::profile_from_json(expected_json)});
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
    return out;
}

std::string page_fixture(const std::string& file)
{
    return slurp(fixture_dir / "pages" / file);
}

} // namespace testing

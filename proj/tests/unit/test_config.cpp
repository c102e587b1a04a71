#include "scholar/config.hpp"
#include "scholar/errors.hpp"
#include "support/generators.hpp"
#include "support/temp_dir.hpp"

#include <doctest.h>

#include <cstdlib>

using namespace scholar;
using namespace std::chrono_literals;

namespace {

ErrorCode code_of(const std::function<void()>& f, std::string* message = nullptr)
{
    try {
        f();
    } catch (const Error& e) {
        if (message)
            *message = e.what();
        return e.code();
    }
    FAIL("expected an Error");
    return ErrorCode::InvalidArgument;
}

TrackerConfig with_ids(std::initializer_list<const char*> ids)
{
    TrackerConfig c;
    for (const auto* id : ids)
        c.scholar_ids.push_back(ScholarId::parse(id));
    return c;
}

} // namespace

TEST_CASE("missing file gives the defaults")
{
    testing::TempDir dir;
    const auto loaded = load_config(dir / "config.json");
    CHECK(loaded.config == TrackerConfig{});
    CHECK(loaded.warnings.empty());
    CHECK(loaded.config.policy.rate_limit == 2000ms);
    CHECK(loaded.config.store_path == "./scholar-store");
}

TEST_CASE("single ID, everything else default")
{
    const auto loaded = parse_config(R"({"scholar_ids": ["vAx7VsoAAAAJ"]})");
    REQUIRE(loaded.config.scholar_ids.size() == 1);
    CHECK(loaded.config.scholar_ids[0].value() == "vAx7VsoAAAAJ");
    CHECK(loaded.config.policy == FetchPolicy{});
}

TEST_CASE("all keys parsed")
{
    const auto loaded = parse_config(R"({
        "scholar_ids": ["aaaaaaaaaaaa", "bbbbbbbbbbbb"],
        "rate_limit_ms": 5000, "timeout_ms": 3000, "max_retries": 4, "backoff_base_ms": 250,
        "block_breaker_threshold": 0, "user_agent": "x/1", "store_path": "/var/lib/st"})");
    const auto& c = loaded.config;
    CHECK(c.scholar_ids.size() == 2);
    CHECK(c.policy.rate_limit == 5000ms);
    CHECK(c.policy.timeout == 3000ms);
    CHECK(c.policy.max_retries == 4);
    CHECK(c.policy.backoff_base == 250ms);
    CHECK(c.policy.block_breaker_threshold == 0);
    CHECK(c.policy.user_agent == "x/1");
    CHECK(c.store_path == "/var/lib/st");
}

TEST_CASE("duplicate IDs are ConfigInvalid")
{
    std::string msg;
    CHECK(code_of([] { parse_config(R"({"scholar_ids": ["aaaaaaaaaaaa", "aaaaaaaaaaaa"]})"); }, &msg) ==
          ErrorCode::ConfigInvalid);
    CHECK(msg.find("aaaaaaaaaaaa") != std::string::npos);
}

TEST_CASE("invalid values name the offending key")
{
    const std::vector<std::pair<std::string, std::string>> cases = {
        {R"({"scholar_ids": "aaaaaaaaaaaa"})", "scholar_ids"},
        {R"({"scholar_ids": ["bad id!"]})", "scholar_ids"},
        {R"({"scholar_ids": ["https://scholar.google.com/citations?user=vAx7VsoAAAAJ"]})", "scholar_ids"},
        {R"({"rate_limit_ms": -1})", "rate_limit_ms"},
        {R"({"timeout_ms": 0})", "timeout_ms"},
        {R"({"max_retries": 1.5})", "max_retries"},
        {R"({"backoff_base_ms": "500"})", "backoff_base_ms"},
        {R"({"user_agent": ""})", "user_agent"},
        {R"({"store_path": 3})", "store_path"},
        {R"([1, 2])", "object"},
    };
    for (const auto& [text, key] : cases) {
        CAPTURE(text);
        std::string msg;
        CHECK(code_of([&] { parse_config(text); }, &msg) == ErrorCode::ConfigInvalid);
        CHECK(msg.find(key) != std::string::npos);
    }
}

TEST_CASE("unknown keys warn but load")
{
    const auto loaded = parse_config(R"({"scholar_ids": [], "scholarIds": ["x"], "theme": "dark"})");
    CHECK(loaded.config.scholar_ids.empty());
    REQUIRE(loaded.warnings.size() == 2);
    CHECK((loaded.warnings[0].find("scholarIds") != std::string::npos ||
           loaded.warnings[1].find("scholarIds") != std::string::npos));
}

TEST_CASE("syntax errors report a position")
{
    std::string msg;
    CHECK(code_of([] { parse_config("{\n  \"scholar_ids\": [\"aaaaaaaaaaaa\",]\n}", "cfg.json"); }, &msg) ==
          ErrorCode::ConfigSyntax);
    CHECK(msg.find("cfg.json") != std::string::npos);
    CHECK(msg.find("byte") != std::string::npos);
    CHECK(code_of([] { parse_config(""); }) == ErrorCode::ConfigSyntax);
}

TEST_CASE("serialize then parse is the identity")
{
    CHECK(parse_config(serialize_config(TrackerConfig{})).config == TrackerConfig{});
    std::mt19937_64 rng(211);
    for (int i = 0; i < 300; ++i) {
        const auto c = testing::gen::random_config(rng);
        const auto loaded = parse_config(serialize_config(c));
        REQUIRE(loaded.config == c);
        REQUIRE(loaded.warnings.empty());
    }
}

TEST_CASE("save and load through the file system")
{
    testing::TempDir dir;
    const auto path = dir / "config.json";
    const auto c = with_ids({"aaaaaaaaaaaa", "bbbbbbbbbbbb"});
    save_config(path, c);
    CHECK(load_config(path).config == c);
}

TEST_CASE("interrupted save leaves the original file intact")
{
    testing::TempDir dir;
    const auto path = dir / "config.json";
    const auto original = with_ids({"aaaaaaaaaaaa"});
    save_config(path, original);
    const auto before = testing::slurp(path);

    const auto hook = [](const std::filesystem::path& temp) {
        CHECK(std::filesystem::exists(temp));
        throw std::runtime_error("simulated crash");
    };
    CHECK_THROWS(save_config(path, with_ids({"aaaaaaaaaaaa", "bbbbbbbbbbbb"}), hook));
    CHECK(testing::slurp(path) == before);
    CHECK(load_config(path).config == original);
    for (const auto& entry : std::filesystem::directory_iterator(dir.path()))
        CHECK(entry.path().filename() == "config.json");
}

TEST_CASE("add by URL equals add by bare ID")
{
    const TrackerConfig empty;
    const auto by_id = add_id(empty, "vAx7VsoAAAAJ");
    const auto by_url = add_id(empty, "https://scholar.google.com/citations?user=vAx7VsoAAAAJ&hl=en");
    CHECK(by_id == by_url);
    CHECK(by_id.scholar_ids.size() == 1);

    CHECK(code_of([&] { add_id(by_id, "https://scholar.google.com/citations?hl=en&user=vAx7VsoAAAAJ"); }) ==
          ErrorCode::AlreadyTracked);
    CHECK(code_of([&] { add_id(empty, "https://scholar.google.com/citations?hl=en"); }) ==
          ErrorCode::MissingUserParam);
    CHECK(code_of([&] { add_id(empty, "nope"); }) == ErrorCode::InvalidId);
}

TEST_CASE("add appends, remove keeps the order of the rest")
{
    auto c = with_ids({"aaaaaaaaaaaa", "bbbbbbbbbbbb"});
    c = add_id(c, "cccccccccccc");
    CHECK(c.scholar_ids.back().value() == "cccccccccccc");
    c = remove_id(c, ScholarId::parse("bbbbbbbbbbbb"));
    CHECK(c == with_ids({"aaaaaaaaaaaa", "cccccccccccc"}));
    CHECK(code_of([&] { remove_id(c, ScholarId::parse("bbbbbbbbbbbb")); }) == ErrorCode::NotTracked);
}

TEST_CASE("property: add then remove is the identity")
{
    std::mt19937_64 rng(223);
    for (int i = 0; i < 300; ++i) {
        const auto c = testing::gen::random_config(rng);
        auto id = testing::gen::random_id(rng);
        while (c.tracks(id))
            id = testing::gen::random_id(rng);
        const auto added = add_id(c, id.value());
        REQUIRE(added.tracks(id));
        REQUIRE(added.scholar_ids.size() == c.scholar_ids.size() + 1);
        REQUIRE(remove_id(added, id) == c);
    }
}

TEST_CASE("config path resolution")
{
    ::unsetenv(config_env_var);
    CHECK(resolve_config_path(std::nullopt) == "config.json");
    ::setenv(config_env_var, "/etc/st.json", 1);
    CHECK(resolve_config_path(std::nullopt) == "/etc/st.json");
    CHECK(resolve_config_path(std::string("flag.json")) == "flag.json");
    ::setenv(config_env_var, "", 1);
    CHECK(resolve_config_path(std::nullopt) == "config.json");
    ::unsetenv(config_env_var);
}

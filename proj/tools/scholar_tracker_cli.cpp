// scholar-tracker: command-line front end. Talks to the library only through
// the C API in scholar_tracker.h.

#include "scholar_tracker.h"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitEnvironment = 3;

struct TrackerDeleter {
    void operator()(st_tracker* t) const { st_tracker_close(t); }
};
using TrackerPtr = std::unique_ptr<st_tracker, TrackerDeleter>;

struct OwnedString {
    char* ptr = nullptr;
    ~OwnedString() { st_string_free(ptr); }
    std::string_view view() const { return ptr ? std::string_view(ptr) : std::string_view(); }
};

int report_failure(st_status status, const std::string& message)
{
    std::cerr << "error: " << message << " [" << st_status_name(status) << "]\n";
    return st_exit_code_for(status);
}

void flush_warnings(st_tracker* tracker)
{
    OwnedString warnings;
    if (st_tracker_take_warnings(tracker, &warnings.ptr) != ST_OK)
        return;
    std::string_view rest = warnings.view();
    while (!rest.empty()) {
        const auto nl = rest.find('\n');
        std::cerr << "warning: " << rest.substr(0, nl) << '\n';
        rest = nl == std::string_view::npos ? std::string_view() : rest.substr(nl + 1);
    }
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Track Google Scholar citation metrics for a set of researchers."};
    app.set_version_flag("--version", std::string(st_version()));
    app.require_subcommand(1);
    app.fallthrough();

    std::optional<std::string> config_path;
    std::optional<std::string> store_path;
    bool json = false;
    app.add_option("--config", config_path, "Config file (default: $SCHOLAR_TRACKER_CONFIG, then ./config.json)");
    app.add_option("--store", store_path, "Store directory (overrides store_path in the config)");
    app.add_flag("--json", json, "Machine-readable JSON output");

    std::string add_target;
    auto* add = app.add_subcommand("add", "Track a researcher by Scholar ID or profile URL");
    add->add_option("id", add_target, "Scholar ID or profile URL")->required();

    std::string remove_target;
    auto* remove = app.add_subcommand("remove", "Stop tracking a researcher");
    remove->add_option("id", remove_target, "Scholar ID or profile URL")->required();

    auto* list = app.add_subcommand("list", "List tracked researchers with cached metrics");

    bool force_unlock = false;
    auto* update = app.add_subcommand("update", "Fetch fresh metrics for every tracked researcher");
    update->add_flag("--force-unlock", force_unlock, "Break a store lock older than one hour");

    std::optional<double> stale_days;
    auto* rank = app.add_subcommand("rank", "Rank tracked researchers by citations (offline)");
    rank->add_option("--stale-days", stale_days, "Flag snapshots older than this many days (default 7)")
        ->check(CLI::NonNegativeNumber);

    std::string history_target;
    auto* history = app.add_subcommand("history", "Show stored snapshots for one researcher");
    history->add_option("id", history_target, "Scholar ID or profile URL")->required();

    std::string export_format = "json";
    std::optional<std::string> export_output;
    auto* exporter = app.add_subcommand("export", "Dump the latest snapshots as JSON or CSV");
    exporter->add_option("--format", export_format, "json or csv");
    exporter->add_option("-o,--output", export_output, "Write to this file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    st_tracker* raw = nullptr;
    if (const st_status s = st_tracker_open(config_path ? config_path->c_str() : nullptr,
                                            store_path ? store_path->c_str() : nullptr, &raw);
        s != ST_OK)
        return report_failure(s, st_last_error_message());
    TrackerPtr tracker(raw);
    flush_warnings(tracker.get());

    OwnedString output;
    st_status status = ST_OK;
    int exit_code = 0;

    if (add->parsed()) {
        status = st_tracker_add(tracker.get(), add_target.c_str(), &output.ptr);
        if (status == ST_OK)
            std::cout << "Now tracking " << output.view() << " (" << st_tracker_config_path(tracker.get()) << ")\n";
    } else if (remove->parsed()) {
        status = st_tracker_remove(tracker.get(), remove_target.c_str(), &output.ptr);
        if (status == ST_OK)
            std::cout << "Stopped tracking " << output.view() << "\n";
    } else if (list->parsed()) {
        status = st_tracker_list(tracker.get(), json, &output.ptr);
        std::cout << output.view();
    } else if (update->parsed()) {
        st_tracker_set_force_unlock(tracker.get(), force_unlock);
        st_tracker_set_progress(
            tracker.get(), [](void*, const char* line) { std::cerr << line << std::endl; }, nullptr);
        status = st_tracker_update(tracker.get(), json, &output.ptr, &exit_code);
        std::cout << output.view();
    } else if (rank->parsed()) {
        if (stale_days)
            st_tracker_set_stale_seconds(tracker.get(), static_cast<int64_t>(*stale_days * 86400.0));
        status = st_tracker_rank(tracker.get(), json, &output.ptr);
        std::cout << output.view();
    } else if (history->parsed()) {
        status = st_tracker_history(tracker.get(), history_target.c_str(), json, &output.ptr);
        std::cout << output.view();
    } else if (exporter->parsed()) {
        status = st_tracker_export(tracker.get(), export_format.c_str(), &output.ptr);
        if (status == ST_OK) {
            if (export_output) {
                std::ofstream file(*export_output, std::ios::binary | std::ios::trunc);
                file << output.view();
                if (!file.flush()) {
                    std::cerr << "error: cannot write " << *export_output << '\n';
                    return kExitEnvironment;
                }
            } else {
                std::cout << output.view();
            }
        }
    }

    // taking warnings resets the last-error slot
    const std::string message = status != ST_OK ? st_last_error_message() : "";
    flush_warnings(tracker.get());
    if (status != ST_OK)
        return report_failure(status, message);
    return exit_code;
}

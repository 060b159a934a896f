#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <string>

#include "slag/report.hpp"

namespace {

constexpr int exit_input_error = 2;

struct CommandOptions {
    std::string scenario;
    std::optional<int> order;
    std::optional<std::size_t> grid;
    std::optional<std::string> mode;
    std::optional<std::string> json;
    std::optional<std::string> csv;
    std::optional<std::string> dump;
    bool timings = false;
};

void add_options(CLI::App* cmd, CommandOptions& o)
{
    cmd->add_option("-s,--scenario", o.scenario, "scenario file (INI)")->required();
    cmd->add_option("--order", o.order, "jet order override");
    cmd->add_option("--grid", o.grid, "grid points per axis override");
    cmd->add_option("--mode", o.mode, "scalar mode override")->check(CLI::IsMember({"exact", "float"}));
    cmd->add_option("--json", o.json, "write the JSON report here ('-' for stdout)");
    cmd->add_option("--csv", o.csv, "write the phi table as CSV here ('-' for stdout)");
    cmd->add_option("--dump", o.dump, "write the solved structure as text here");
    cmd->add_flag("--timings", o.timings, "include wall-clock timings in the JSON report");
}

void emit(const std::string& path, const std::string& content)
{
    if (path == "-")
        std::cout << content;
    else
        slag::report::write_atomic(path, content);
}

int run(slag::report::Kind kind, const CommandOptions& o)
{
    using namespace slag::report;
    Overrides ov;
    ov.order = o.order;
    ov.grid = o.grid;
    ov.mode = o.mode;
    ov.json_path = o.json;
    ov.csv_path = o.csv;
    ov.dump_path = o.dump;
    const Scenario sc = load_scenario(o.scenario, ov);
    if (sc.kind != kind)
        throw ScenarioError(o.scenario, 0,
                            "scenario kind is '" + name(sc.kind) + "' but the command is '" + name(kind) + "'");

    const RunReport rep = run_scenario(sc);
    if (!sc.json_path.empty())
        emit(sc.json_path, dump_json(rep, o.timings));
    if (!sc.csv_path.empty())
        emit(sc.csv_path, phi_csv(rep));
    if (!sc.dump_path.empty())
        emit(sc.dump_path, rep.dump);

    auto& log = sc.json_path == "-" || sc.csv_path == "-" || sc.dump_path == "-" ? std::cerr : std::cout;
    for (const auto& v : rep.verdicts) {
        char line[256];
        std::snprintf(line, sizeof line, "%s %-18s value=%.6g tolerance=%.3g", v.pass ? "PASS" : "FAIL",
                      v.name.c_str(), v.value, v.tolerance);
        log << line << "  (" << v.detail << ")\n";
    }
    if (rep.phi)
        log << "phi: " << rep.phi_classification << " (spread " << rep.phi->spread() << ")\n";
    return rep.exit_code();
}

} // namespace

int main(int argc, char** argv)
{
    using slag::report::Kind;
    CLI::App app{"Local Calabi-Yau structures around special Lagrangian tori"};
    app.require_subcommand(1);

    struct Command {
        Kind kind;
        const char* help;
        CommandOptions opts;
        CLI::App* app = nullptr;
    };
    Command commands[] = {
        {Kind::embed, "solve the embedding for a metric and check every defining condition", {}},
        {Kind::verify, "feed an admissible family into the solver and check the horizontal slices", {}},
        {Kind::family_check, "check a one-parameter family of torus metrics for admissibility", {}},
        {Kind::phi, "sample the Gram determinant of harmonic forms along a 3D family", {}},
        {Kind::phi2d, "sample the Gram determinant along a 2D family", {}},
    };
    for (auto& c : commands) {
        c.app = app.add_subcommand(slag::report::name(c.kind), c.help);
        add_options(c.app, c.opts);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_input_error;
    }

    for (const auto& c : commands) {
        if (!c.app->parsed())
            continue;
        try {
            return run(c.kind, c.opts);
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return exit_input_error;
        }
    }
    return exit_input_error;
}

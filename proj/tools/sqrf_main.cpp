// sqrf — steady-state squeezing analysis for a coherently driven two-level
// atom in a lossy cavity. Subcommands: point, sweep, optimize, threshold,
// homodyne. Configuration comes from a JSON file or a bundled preset, with
// --set key=value overrides on top.

#include "sqrf/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct CommonArgs {
    std::string config_path;
    std::string preset;
    std::vector<std::string> overrides;
    std::string out_path;
    std::string format = "csv";
    std::string dump_liouvillian;
};

void add_common(CLI::App* sub, CommonArgs& args) {
    sub->add_option("--config", args.config_path, "JSON configuration file");
    sub->add_option("--preset", args.preset, "bundled configuration: fig2 or fig3");
    sub->add_option("--set", args.overrides,
                    "override a config key, e.g. --set delta_a=-19.3 or --set sweep.step=0.5")
        ->take_all();
    sub->add_option("--out", args.out_path, "output file (default: stdout)");
    sub->add_option("--format", args.format, "output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
}

int run_command(sqrf::Command cmd, const CommonArgs& args) {
    std::string text;
    if (!args.config_path.empty() && !args.preset.empty()) {
        std::cerr << "error: give either --config or --preset, not both\n";
        return sqrf::cli::kExitConfig;
    }
    try {
        if (!args.config_path.empty()) {
            std::ifstream in(args.config_path, std::ios::binary);
            if (!in) {
                std::cerr << "error: cannot read config file \"" << args.config_path << "\"\n";
                return sqrf::cli::kExitConfig;
            }
            std::ostringstream ss;
            ss << in.rdbuf();
            text = ss.str();
        } else if (!args.preset.empty()) {
            text = sqrf::preset_config(args.preset);
        }
        sqrf::RunConfig cfg = sqrf::parse_config(cmd, text, args.overrides);
        cfg.out_path = args.out_path;
        cfg.format = args.format == "json" ? sqrf::OutputFormat::json : sqrf::OutputFormat::csv;
        cfg.dump_liouvillian_path = args.dump_liouvillian;
        return sqrf::cli::run(cfg);
    } catch (const sqrf::config_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return sqrf::cli::kExitConfig;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Steady-state squeezing of resonance fluorescence for a driven "
        "two-level atom in a lossy cavity"};
    app.require_subcommand(1);

    CommonArgs point_args, sweep_args, opt_args, thr_args, hom_args;

    CLI::App* point = app.add_subcommand("point", "observables at one parameter point");
    add_common(point, point_args);
    point->add_option("--dump-liouvillian", point_args.dump_liouvillian,
                      "write the generator in coordinate format to this file");

    add_common(app.add_subcommand("sweep", "observables along one parameter axis"), sweep_args);
    add_common(app.add_subcommand("optimize", "minimize the variance along one axis"), opt_args);
    add_common(app.add_subcommand("threshold", "dephasing rate where the variance crosses a target"),
               thr_args);
    add_common(app.add_subcommand("homodyne", "correlation-measurement prediction"), hom_args);

    CLI11_PARSE(app, argc, argv);

    if (app.got_subcommand("point")) return run_command(sqrf::Command::point, point_args);
    if (app.got_subcommand("sweep")) return run_command(sqrf::Command::sweep, sweep_args);
    if (app.got_subcommand("optimize")) return run_command(sqrf::Command::optimize, opt_args);
    if (app.got_subcommand("threshold")) return run_command(sqrf::Command::threshold, thr_args);
    return run_command(sqrf::Command::homodyne, hom_args);
}

// least-sim: run LEACH / LEAST experiments and emit plot-ready CSV.
//
//   least-sim simulate --config default.conf --seeds 1..30 --protocol both --out runs/
//   least-sim compare  --config default.conf --seeds 1..30 --out cmp/
//   least-sim sweep    --config sweep.conf --seeds 1..30 --p-hn 0.01,0.05,0.1 --out sweep/
//   least-sim analyze  --config default.conf --seeds 1..30
//
// Exit codes: 0 success, 1 configuration error, 2 runtime error.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "least/config.hpp"
#include "least/error.hpp"
#include "least/experiments.hpp"

namespace {

struct Options {
    std::string config;
    std::string manifest;
    std::string seeds = "1";
    std::string protocol = "both";
    std::string out;
    std::string p_hn = "0.01,0.05,0.1,0.2,0.4,0.6,0.9";
};

void add_common(CLI::App* cmd, Options& o, bool with_protocol) {
    cmd->add_option("--config", o.config, "key = value configuration file (defaults when omitted)");
    cmd->add_option("--manifest", o.manifest, "re-run the invocation recorded in a manifest.json");
    cmd->add_option("--seeds", o.seeds, "seed range a..b or list a,b,c")->capture_default_str();
    if (with_protocol)
        cmd->add_option("--protocol", o.protocol, "leach, least or both")->capture_default_str();
    cmd->add_option("--out", o.out, "output directory");
}

least::RunManifest build_manifest(const std::string& command, const Options& o) {
    least::RunManifest m;
    if (!o.manifest.empty()) {
        m = least::load_manifest(o.manifest);
        if (m.command != command)
            throw least::ConfigError("manifest was written by '" + m.command + "', not '" + command + "'");
    } else {
        m.command = command;
        m.config = o.config.empty() ? least::SimConfig{} : least::load_config(o.config);
        m.seeds = least::parse_seeds(o.seeds);
        m.protocols = least::parse_protocols(o.protocol);
        if (command == "sweep") m.p_hn_values = least::parse_values(o.p_hn);
        if (command == "compare") m.protocols = {least::Protocol::leach, least::Protocol::least};
    }
    if (!o.out.empty()) m.output_dir = o.out;
    return m;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Simulator for the LEACH and LEAST hierarchical WSN routing protocols"};
    app.set_version_flag("--version", std::string(least::kToolVersion));
    app.require_subcommand(1);

    Options opts;
    auto* simulate = app.add_subcommand("simulate", "per-run metric CSVs plus summary.csv");
    add_common(simulate, opts, true);
    auto* compare = app.add_subcommand("compare", "per-round medians of both protocols");
    add_common(compare, opts, false);
    auto* sweep = app.add_subcommand("sweep", "median half-life for each p_hn value");
    add_common(sweep, opts, false);
    sweep->add_option("--p-hn", opts.p_hn, "comma-separated p_hn values")->capture_default_str();
    auto* analyze = app.add_subcommand("analyze", "closed-form per-round setup power estimates");
    add_common(analyze, opts, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        const unsigned threads = least::worker_count();
        if (simulate->parsed()) {
            least::cmd_simulate(build_manifest("simulate", opts), threads);
        } else if (compare->parsed()) {
            least::cmd_compare(build_manifest("compare", opts), threads);
        } else if (sweep->parsed()) {
            least::cmd_sweep(build_manifest("sweep", opts), threads);
        } else if (analyze->parsed()) {
            least::cmd_analyze(build_manifest("analyze", opts), std::cout);
        }
    } catch (const least::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}

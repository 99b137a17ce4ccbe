#include "least/experiments.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "least/config.hpp"
#include "least/error.hpp"

namespace least {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::uint64_t parse_u64(std::string_view s) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
        throw ConfigError("invalid seed '" + std::string(s) + "'");
    return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    while (true) {
        const auto pos = s.find(sep);
        parts.push_back(s.substr(0, pos));
        if (pos == std::string_view::npos) break;
        s = s.substr(pos + 1);
    }
    return parts;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << content;
    if (!out) throw Error("failed writing " + path.string());
}

std::string opt_round(const std::optional<Round>& r) { return r ? std::to_string(*r) : std::string{}; }

std::string opt_number(const std::optional<double>& v) { return v ? format_number(*v) : std::string{}; }

void prepare_output(const RunManifest& m) {
    if (m.output_dir.empty()) throw ConfigError("an output directory is required");
    fs::create_directories(m.output_dir);
    write_manifest(m);
}

} // namespace

std::vector<std::uint64_t> parse_seeds(std::string_view spec) {
    std::vector<std::uint64_t> seeds;
    if (const auto dots = spec.find(".."); dots != std::string_view::npos) {
        const auto lo = parse_u64(spec.substr(0, dots));
        const auto hi = parse_u64(spec.substr(dots + 2));
        if (hi < lo) throw ConfigError("empty seed range '" + std::string(spec) + "'");
        for (auto s = lo; s <= hi; ++s) seeds.push_back(s);
        return seeds;
    }
    for (auto part : split(spec, ',')) seeds.push_back(parse_u64(part));
    return seeds;
}

std::vector<Protocol> parse_protocols(std::string_view spec) {
    if (spec == "both") return {Protocol::leach, Protocol::least};
    return {parse_protocol(spec)};
}

std::vector<double> parse_values(std::string_view spec) {
    std::vector<double> values;
    for (auto part : split(spec, ',')) {
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
        if (ec != std::errc{} || ptr != part.data() + part.size() || part.empty())
            throw ConfigError("invalid value '" + std::string(part) + "'");
        values.push_back(v);
    }
    return values;
}

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

std::string metrics_csv(const std::vector<RoundMetrics>& rounds) {
    std::string out(kMetricsHeader);
    out += '\n';
    for (const auto& m : rounds) {
        out += std::to_string(m.round) + ',' + std::to_string(m.dead_count) + ',' + format_number(m.total_energy) + ',' +
               format_number(m.setup_energy) + ',' + format_number(m.steady_energy) + ',' +
               std::to_string(m.first_level_width) + ',' + std::to_string(m.max_depth) + '\n';
    }
    return out;
}

std::string manifest_json(const RunManifest& m) {
    json config = json::object();
    for (const auto& [k, v] : config_entries(m.config)) config[k] = v;
    json protocols = json::array();
    for (auto p : m.protocols) protocols.push_back(std::string(to_string(p)));
    json j = {
        {"tool", "least-sim"},
        {"version", m.tool_version},
        {"command", m.command},
        {"config", config},
        {"seeds", m.seeds},
        {"protocols", protocols},
        {"p_hn_values", m.p_hn_values},
        {"output_dir", m.output_dir.string()},
    };
    return j.dump(2) + "\n";
}

RunManifest parse_manifest(std::string_view text) {
    RunManifest m;
    try {
        const json j = json::parse(text);
        m.command = j.at("command").get<std::string>();
        for (const auto& [k, v] : j.at("config").items()) set_config_value(m.config, k, v.get<std::string>());
        validate(m.config);
        m.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
        for (const auto& p : j.at("protocols")) m.protocols.push_back(parse_protocol(p.get<std::string>()));
        m.p_hn_values = j.value("p_hn_values", std::vector<double>{});
        m.output_dir = j.value("output_dir", std::string{});
        m.tool_version = j.value("version", std::string(kToolVersion));
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed manifest: ") + e.what());
    }
    return m;
}

RunManifest load_manifest(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open manifest " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_manifest(buf.str());
}

void write_manifest(const RunManifest& m) { write_file(m.output_dir / "manifest.json", manifest_json(m)); }

unsigned worker_count() {
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("LEAST_SIM_THREADS")) {
        unsigned cap = 0;
        const std::string_view s(env);
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), cap);
        if (ec == std::errc{} && ptr == s.data() + s.size() && cap > 0) n = std::min(n, cap);
    }
    return n;
}

void cmd_simulate(const RunManifest& m, unsigned threads) {
    if (m.seeds.empty() || m.protocols.empty()) throw ConfigError("simulate needs at least one seed and protocol");
    prepare_output(m);

    const std::size_t jobs = m.seeds.size() * m.protocols.size();
    std::vector<LifetimeSummary> summaries(jobs);
    parallel_for(jobs, threads, [&](std::size_t job) {
        SimConfig c = m.config;
        c.protocol = m.protocols[job / m.seeds.size()];
        c.seed = m.seeds[job % m.seeds.size()];
        RunResult r = run(c);
        write_file(m.output_dir / (std::string(to_string(c.protocol)) + "_seed" + std::to_string(c.seed) + ".csv"),
                   metrics_csv(r.rounds));
        summaries[job] = r.summary;
    });

    std::string csv(kSummaryHeader);
    csv += '\n';
    for (std::size_t job = 0; job < jobs; ++job) {
        const auto& s = summaries[job];
        csv += std::string(to_string(m.protocols[job / m.seeds.size()])) + ',' +
               std::to_string(m.seeds[job % m.seeds.size()]) + ',' + opt_round(s.first_death_round) + ',' +
               opt_round(s.half_life_round) + ',' + opt_round(s.all_dead_round) + ',' +
               format_number(s.avg_energy_per_packet) + '\n';
    }
    write_file(m.output_dir / "summary.csv", csv);
}

MedianSeries median_series(const std::vector<std::vector<RoundMetrics>>& runs, std::size_t length) {
    MedianSeries out;
    out.dead.resize(length);
    out.energy.resize(length);
    for (std::size_t i = 0; i < length; ++i) {
        std::vector<double> dead, energy;
        bool any_active = false;
        for (const auto& r : runs) {
            if (r.empty()) continue;
            any_active = any_active || i < r.size();
            const auto& row = i < r.size() ? r[i] : r.back();
            dead.push_back(row.dead_count);
            energy.push_back(row.total_energy);
        }
        if (!any_active) continue;
        out.dead[i] = median(dead);
        out.energy[i] = median(energy);
    }
    return out;
}

void cmd_compare(const RunManifest& m, unsigned threads) {
    if (m.seeds.empty()) throw ConfigError("compare needs at least one seed");
    prepare_output(m);

    const std::array<Protocol, 2> protocols{Protocol::leach, Protocol::least};
    std::vector<std::vector<RoundMetrics>> runs(2 * m.seeds.size());
    parallel_for(runs.size(), threads, [&](std::size_t job) {
        SimConfig c = m.config;
        c.protocol = protocols[job / m.seeds.size()];
        c.seed = m.seeds[job % m.seeds.size()];
        runs[job] = run(c).rounds;
    });

    std::size_t length = 0;
    for (const auto& r : runs) length = std::max(length, r.size());
    const auto half = static_cast<std::ptrdiff_t>(m.seeds.size());
    const MedianSeries leach = median_series({runs.begin(), runs.begin() + half}, length);
    const MedianSeries least = median_series({runs.begin() + half, runs.end()}, length);

    std::string csv(kCompareHeader);
    csv += '\n';
    for (std::size_t i = 0; i < length; ++i) {
        csv += std::to_string(i + 1) + ',' + opt_number(leach.dead[i]) + ',' + opt_number(least.dead[i]) + ',' +
               opt_number(leach.energy[i]) + ',' + opt_number(least.energy[i]) + '\n';
    }
    write_file(m.output_dir / "compare.csv", csv);
}

void cmd_sweep(const RunManifest& m, unsigned threads) {
    if (m.p_hn_values.empty()) throw ConfigError("sweep needs at least one p_hn value");
    for (double v : m.p_hn_values)
        if (!(v >= 0.0 && v <= 1.0)) throw ConfigError("p_hn out of [0,1]");
    prepare_output(m);

    SimConfig base = m.config;
    base.protocol = Protocol::least;
    const auto rows = sweep_phn(base, m.p_hn_values, m.seeds, threads);
    std::string csv(kSweepHeader);
    csv += '\n';
    for (const auto& r : rows) csv += format_number(r.p_hn) + ',' + format_number(r.half_life_median) + '\n';
    write_file(m.output_dir / "sweep.csv", csv);
}

PowerEstimate analyze_placements(const SimConfig& config, const std::vector<std::uint64_t>& seeds) {
    if (seeds.empty()) throw ConfigError("analyze needs at least one seed");
    PowerEstimate mean;
    for (auto seed : seeds) {
        SimConfig c = config;
        c.seed = seed;
        RandomStream stream(seed);
        const auto nodes = place_nodes(c, stream);
        const auto stats = network_stats(nodes, false);
        const auto e = compare_estimates(c.n, c.params, stats, c.energy.epsilon_amp);
        mean.least_estimate += e.least_estimate;
        mean.leach_estimate += e.leach_estimate;
    }
    const double k = static_cast<double>(seeds.size());
    mean.least_estimate /= k;
    mean.leach_estimate /= k;
    mean.difference = mean.leach_estimate - mean.least_estimate;
    return mean;
}

void cmd_analyze(const RunManifest& m, std::ostream& out) {
    const PowerEstimate e = analyze_placements(m.config, m.seeds);
    std::string csv(kAnalyzeHeader);
    csv += '\n' + format_number(e.least_estimate) + ',' + format_number(e.leach_estimate) + ',' +
           format_number(e.difference) + '\n';
    out << csv;
    if (!m.output_dir.empty()) {
        fs::create_directories(m.output_dir);
        write_manifest(m);
        write_file(m.output_dir / "analyze.csv", csv);
    }
}

} // namespace least

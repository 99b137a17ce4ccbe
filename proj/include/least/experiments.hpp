#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "least/analysis.hpp"
#include "least/simulator.hpp"

namespace least {

inline constexpr std::string_view kToolVersion = "1.0.0";

inline constexpr std::string_view kMetricsHeader =
    "round,dead,total_energy_j,setup_energy_j,steady_energy_j,first_level_width,max_depth";
inline constexpr std::string_view kSummaryHeader = "protocol,seed,first_death,half_life,all_dead,avg_energy_per_packet";
inline constexpr std::string_view kCompareHeader =
    "round,leach_dead_median,least_dead_median,leach_energy_median,least_energy_median";
inline constexpr std::string_view kSweepHeader = "p_hn,half_life_median";
inline constexpr std::string_view kAnalyzeHeader = "least_estimate,leach_estimate,difference";

/// "a..b" (inclusive), "a,b,c" or a single seed.
std::vector<std::uint64_t> parse_seeds(std::string_view spec);
/// "leach", "least" or "both".
std::vector<Protocol> parse_protocols(std::string_view spec);
std::vector<double> parse_values(std::string_view spec);

/// Fixed 9-significant-digit rendering used by every CSV.
std::string format_number(double v);

std::string metrics_csv(const std::vector<RoundMetrics>& rounds);

/// Everything needed to reproduce one invocation.
struct RunManifest {
    std::string command;
    SimConfig config;
    std::vector<std::uint64_t> seeds;
    std::vector<Protocol> protocols;
    std::vector<double> p_hn_values; // sweep only
    std::filesystem::path output_dir;
    std::string tool_version{kToolVersion};
};

std::string manifest_json(const RunManifest& manifest);
RunManifest parse_manifest(std::string_view json_text);
RunManifest load_manifest(const std::filesystem::path& path);
void write_manifest(const RunManifest& manifest);

/// Worker cap from LEAST_SIM_THREADS, else the hardware concurrency.
unsigned worker_count();

/// <out>/<protocol>_seed<seed>.csv per run plus <out>/summary.csv.
void cmd_simulate(const RunManifest& manifest, unsigned threads);

/// <out>/compare.csv: per-round medians of both protocols.
void cmd_compare(const RunManifest& manifest, unsigned threads);

/// <out>/sweep.csv: median half-life per p_hn value.
void cmd_sweep(const RunManifest& manifest, unsigned threads);

/// Mean closed-form estimates over the placements of the given seeds.
PowerEstimate analyze_placements(const SimConfig& config, const std::vector<std::uint64_t>& seeds);

/// Prints the analyze CSV to `out` and, when an output directory is set,
/// also writes <out>/analyze.csv.
void cmd_analyze(const RunManifest& manifest, std::ostream& out);

/// Per-round medians across runs. A run that already ended contributes its
/// final row; a round where every run has ended yields no value.
struct MedianSeries {
    std::vector<std::optional<double>> dead;
    std::vector<std::optional<double>> energy;
};
MedianSeries median_series(const std::vector<std::vector<RoundMetrics>>& runs, std::size_t length);

} // namespace least

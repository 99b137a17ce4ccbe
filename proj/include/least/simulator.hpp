#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "least/energy.hpp"
#include "least/network.hpp"
#include "least/protocols.hpp"
#include "least/random_stream.hpp"
#include "least/routing_tree.hpp"

namespace least {

enum class Protocol { leach, least };

std::string_view to_string(Protocol p) noexcept;
Protocol parse_protocol(std::string_view name);

struct SimConfig {
    int n = 100;
    double width = 100.0;
    double height = 100.0;
    Point bs_pos{50.0, 50.0};
    double initial_energy = 0.1;
    ProtocolParams params;
    EnergyParams energy;
    Protocol protocol = Protocol::least;
    std::uint64_t seed = 1;
    double traffic_fraction = 1.0;
    int packets_per_sender = 1;
    int max_rounds = 100000;

    friend bool operator==(const SimConfig&, const SimConfig&) = default;
};

/// Throws ConfigError naming the first invalid field.
void validate(const SimConfig& config);

struct RoundMetrics {
    Round round = 0;
    int dead_count = 0;
    double total_energy = 0.0;
    double setup_energy = 0.0;
    double steady_energy = 0.0;
    int first_level_width = 0;
    int max_depth = 0;
    // Not part of the CSV schema.
    int packets_sent = 0;
    int packets_delivered = 0;
    bool leach_fallback = false;

    friend bool operator==(const RoundMetrics&, const RoundMetrics&) = default;
};

struct LifetimeSummary {
    std::optional<Round> first_death_round;
    std::optional<Round> half_life_round; // dead >= ceil(n/2)
    std::optional<Round> all_dead_round;
    /// All dead, or the round after which no energy can ever be spent again
    /// (a lone survivor with nobody to talk to and no traffic to send).
    std::optional<Round> extinction_round;
    double avg_energy_per_packet = 0.0;
};

struct RunResult {
    std::vector<RoundMetrics> rounds;
    LifetimeSummary summary;
};

/// n sensors, uniform in [0,W]x[0,H], ids in draw order (x then y per node).
std::vector<SensorNode> place_nodes(const SimConfig& config, RandomStream& stream);

/// One simulation run. Owns the network, the routing tree, the ledger and
/// the random stream; advances one round per run_round() call.
class Simulation {
public:
    explicit Simulation(const SimConfig& config);

    const SimConfig& config() const noexcept { return config_; }
    const Network& network() const noexcept { return net_; }
    const RoutingTree& tree() const noexcept { return tree_; }
    const EnergyLedger& ledger() const noexcept { return ledger_; }
    double initial_total_energy() const noexcept { return initial_total_; }
    Round last_round() const noexcept { return round_; }
    /// All sensors dead, max_rounds reached, or the network is inert.
    bool finished() const;
    bool inert() const;

    /// Setup of the most recent round, as computed before any energy was
    /// charged, and the first level the round started from.
    const SetupOutcome& last_setup() const noexcept { return last_setup_; }
    const std::vector<NodeId>& round_start_first_level() const noexcept { return start_first_level_; }
    /// Alive sensors at the start of the most recent setup phase.
    const std::vector<NodeId>& round_start_alive() const noexcept { return start_alive_; }

    /// Prune, setup, steady state. Throws InvalidArgument when every sensor
    /// is already dead.
    RoundMetrics run_round();

private:
    SetupOutcome setup(Round round);
    void steady_state(RoundMetrics& m);

    SimConfig config_;
    RandomStream stream_;
    Network net_;
    RoutingTree tree_;
    EnergyLedger ledger_;
    double initial_total_ = 0.0;
    Round round_ = 0;
    SetupOutcome last_setup_;
    std::vector<NodeId> start_first_level_;
    std::vector<NodeId> start_alive_;
};

/// `inert_after` marks a series that stopped because the network went inert.
LifetimeSummary summarize(const std::vector<RoundMetrics>& rounds, int n, bool inert_after = false);

/// Runs until every sensor is dead, the network is inert, or max_rounds is
/// reached.
RunResult run(const SimConfig& config);

/// Applies fn(i) for i in [0, count) on up to `threads` workers.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn);

/// Median of the values; the mean of the two middle values for even sizes.
double median(std::vector<double> values);

struct SweepRow {
    double p_hn = 0.0;
    double half_life_median = 0.0;
};

/// Median half-life round per p_hn value. Runs that never reach half-life
/// count as max_rounds + 1.
std::vector<SweepRow> sweep_phn(const SimConfig& base, std::span<const double> values,
                                std::span<const std::uint64_t> seeds, unsigned threads = 1);

} // namespace least

#include "least/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <string>
#include <thread>

#include "least/error.hpp"

namespace least {

namespace {

// A round whose setup leaves the base station without alive children is
// redrawn at most this many times.
constexpr int kMaxSetupRetries = 3;

} // namespace

std::string_view to_string(Protocol p) noexcept { return p == Protocol::leach ? "leach" : "least"; }

Protocol parse_protocol(std::string_view name) {
    if (name == "leach") return Protocol::leach;
    if (name == "least") return Protocol::least;
    throw ConfigError("protocol must be leach or least, got '" + std::string(name) + "'");
}

void validate(const SimConfig& c) {
    auto fail = [](const std::string& msg) { throw ConfigError(msg); };
    auto prob = [&](double p, const char* name) {
        if (!(p >= 0.0 && p <= 1.0)) fail(std::string(name) + " out of [0,1]");
    };
    if (c.n < 1) fail("n must be at least 1");
    if (!(c.width > 0.0) || !std::isfinite(c.width)) fail("area_width must be positive");
    if (!(c.height > 0.0) || !std::isfinite(c.height)) fail("area_height must be positive");
    if (!std::isfinite(c.bs_pos.x) || !std::isfinite(c.bs_pos.y)) fail("bs position must be finite");
    if (!(c.initial_energy >= 0.0) || !std::isfinite(c.initial_energy)) fail("initial_energy must be non-negative");
    prob(c.params.p_ch, "p_ch");
    prob(c.params.p_hn, "p_hn");
    prob(c.params.p_h, "p_h");
    if (c.params.p_ch <= 0.0) fail("p_ch must be positive");
    if (c.params.ch_window < 0) fail("ch_window must be non-negative");
    if (c.params.hn_window < 0) fail("hn_window must be non-negative");
    if (!(c.energy.epsilon_amp >= 0.0)) fail("epsilon_amp must be non-negative");
    if (!(c.energy.rx_cost >= 0.0)) fail("rx_cost must be non-negative");
    prob(c.traffic_fraction, "traffic_fraction");
    if (c.packets_per_sender < 0) fail("packets_per_sender must be non-negative");
    if (c.max_rounds < 0) fail("max_rounds must be non-negative");
}

std::vector<SensorNode> place_nodes(const SimConfig& config, RandomStream& stream) {
    std::vector<SensorNode> nodes;
    nodes.reserve(static_cast<std::size_t>(config.n));
    for (int i = 1; i <= config.n; ++i) {
        SensorNode s;
        s.id = NodeId{static_cast<NodeId::value_type>(i)};
        s.pos.x = stream.uniform(0.0, config.width);
        s.pos.y = stream.uniform(0.0, config.height);
        s.energy = config.initial_energy;
        s.alive = s.energy > 0.0;
        nodes.push_back(s);
    }
    return nodes;
}

Simulation::Simulation(const SimConfig& config)
    : config_(config), stream_(config.seed), tree_(static_cast<std::size_t>(config.n)),
      ledger_(static_cast<std::size_t>(config.n)) {
    validate(config_);
    net_ = Network(config_.bs_pos, place_nodes(config_, stream_));
    initial_total_ = net_.total_energy();
}

bool Simulation::inert() const {
    // A lone sensor broadcasts over distance zero and, below full traffic,
    // never gets picked as a sender: its energy is frozen for good.
    return net_.alive_count() == 1 && config_.traffic_fraction < 1.0;
}

bool Simulation::finished() const { return net_.alive_count() == 0 || inert() || round_ >= config_.max_rounds; }

SetupOutcome Simulation::setup(Round round) {
    if (config_.protocol == Protocol::leach) return leach_setup(net_, config_.params, round, stream_);
    try {
        return least_setup(net_, tree_, config_.params, round, stream_);
    } catch (const ProtocolStall&) {
        // Nobody can host the first level (e.g. every survivor is a child
        // of the base station): re-cluster from scratch for this round.
        SetupOutcome out = leach_setup(net_, config_.params, round, stream_);
        out.leach_fallback = true;
        return out;
    }
}

RoundMetrics Simulation::run_round() {
    if (net_.alive_count() == 0) throw InvalidArgument("run_round: no alive sensors");
    const Round round = ++round_;
    ledger_.reset_phase_totals();

    prune_dead_nodes(tree_, net_);
    start_first_level_ = tree_.first_level();
    start_alive_ = net_.alive_ids();

    SetupOutcome outcome;
    for (int attempt = 0;; ++attempt) {
        outcome = setup(round);
        const auto fl = outcome.tree.first_level();
        if (std::any_of(fl.begin(), fl.end(), [&](NodeId id) { return net_.is_alive(id); })) break;
        if (attempt + 1 >= kMaxSetupRetries)
            throw Error("run_round: base station left without alive children after " +
                        std::to_string(kMaxSetupRetries) + " setup attempts in round " + std::to_string(round));
    }
    commit_roles(net_, outcome, round);
    tree_ = outcome.tree;
    apply_messages(net_, ledger_, outcome.messages, config_.energy, Phase::setup);
    last_setup_ = std::move(outcome);

    RoundMetrics m;
    m.round = round;
    m.leach_fallback = last_setup_.leach_fallback;
    steady_state(m);

    m.dead_count = static_cast<int>(net_.dead_count());
    m.total_energy = net_.total_energy();
    m.setup_energy = ledger_.phase_total(Phase::setup);
    m.steady_energy = ledger_.phase_total(Phase::steady);
    m.first_level_width = static_cast<int>(tree_.first_level().size());
    m.max_depth = tree_.max_depth();
    return m;
}

void Simulation::steady_state(RoundMetrics& m) {
    std::vector<NodeId> pool = net_.alive_ids();
    const auto senders = static_cast<std::size_t>(std::floor(config_.traffic_fraction * static_cast<double>(pool.size())));
    for (std::size_t i = 0; i < senders; ++i) std::swap(pool[i], pool[i + stream_.index(pool.size() - i)]);
    pool.resize(senders);
    std::sort(pool.begin(), pool.end());

    for (NodeId sender : pool) {
        for (int k = 0; k < config_.packets_per_sender; ++k) {
            ++m.packets_sent;
            NodeId cur = sender;
            while (!cur.is_base_station()) {
                const auto parent = tree_.parent(cur);
                if (!net_.is_alive(cur) || !parent) break;
                const double cost = tx_cost(distance(net_.position(cur), net_.position(*parent)), 1, config_.energy);
                const bool enough = cost <= net_.sensor(cur).energy;
                charge(net_, ledger_, cur, cost, Phase::steady);
                if (!enough) break;
                cur = *parent;
            }
            if (cur.is_base_station()) ++m.packets_delivered;
        }
    }
}

LifetimeSummary summarize(const std::vector<RoundMetrics>& rounds, int n, bool inert_after) {
    LifetimeSummary s;
    const int half = (n + 1) / 2;
    double steady = 0.0;
    long long delivered = 0;
    for (const auto& r : rounds) {
        if (!s.first_death_round && r.dead_count >= 1) s.first_death_round = r.round;
        if (!s.half_life_round && r.dead_count >= half) s.half_life_round = r.round;
        if (!s.all_dead_round && r.dead_count >= n) s.all_dead_round = r.round;
        steady += r.steady_energy;
        delivered += r.packets_delivered;
    }
    s.extinction_round = s.all_dead_round;
    if (!s.extinction_round && inert_after) s.extinction_round = rounds.empty() ? 0 : rounds.back().round;
    s.avg_energy_per_packet = delivered > 0 ? steady / static_cast<double>(delivered) : 0.0;
    return s;
}

RunResult run(const SimConfig& config) {
    Simulation sim(config);
    RunResult result;
    if (sim.network().alive_count() == 0) {
        result.summary.first_death_round = 0;
        result.summary.half_life_round = 0;
        result.summary.all_dead_round = 0;
        result.summary.extinction_round = 0;
        return result;
    }
    while (!sim.finished()) result.rounds.push_back(sim.run_round());
    result.summary = summarize(result.rounds, config.n, sim.inert());
    return result;
}

void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn) {
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
    if (threads == 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::atomic<bool> failed{false};
    std::vector<std::jthread> workers;
    for (unsigned t = 0; t < threads; ++t) {
        workers.emplace_back([&, t] {
            (void)t;
            for (std::size_t i = next++; i < count && !failed; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    if (!failed.exchange(true)) error = std::current_exception();
                }
            }
        });
    }
    workers.clear();
    if (error) std::rethrow_exception(error);
}

double median(std::vector<double> values) {
    if (values.empty()) throw InvalidArgument("median: no values");
    std::sort(values.begin(), values.end());
    const std::size_t mid = values.size() / 2;
    return values.size() % 2 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

std::vector<SweepRow> sweep_phn(const SimConfig& base, std::span<const double> values,
                                std::span<const std::uint64_t> seeds, unsigned threads) {
    if (values.empty()) throw InvalidArgument("sweep_phn: no p_hn values");
    if (seeds.empty()) throw InvalidArgument("sweep_phn: no seeds");
    std::vector<double> half_lives(values.size() * seeds.size());
    parallel_for(half_lives.size(), threads, [&](std::size_t job) {
        SimConfig c = base;
        c.params.p_hn = values[job / seeds.size()];
        c.seed = seeds[job % seeds.size()];
        const auto summary = run(c).summary;
        half_lives[job] = summary.half_life_round ? *summary.half_life_round : c.max_rounds + 1.0;
    });
    std::vector<SweepRow> rows;
    for (std::size_t v = 0; v < values.size(); ++v) {
        std::vector<double> col(half_lives.begin() + static_cast<std::ptrdiff_t>(v * seeds.size()),
                                half_lives.begin() + static_cast<std::ptrdiff_t>((v + 1) * seeds.size()));
        rows.push_back({values[v], median(std::move(col))});
    }
    return rows;
}

} // namespace least

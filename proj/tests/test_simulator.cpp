#include <doctest.h>

#include <cstdio>
#include <random>

#include "least/error.hpp"
#include "least/simulator.hpp"
#include "test_support.hpp"

using namespace least;
using least::testing::read_golden;
using least::testing::traces_match;

namespace {

SimConfig small_config(std::uint64_t seed, Protocol proto) {
    SimConfig c;
    c.n = 5;
    c.seed = seed;
    c.protocol = proto;
    return c;
}

} // namespace

TEST_CASE("placement") {
    SimConfig c;
    c.n = 1;
    RandomStream s(3);
    const auto one = place_nodes(c, s);
    REQUIRE(one.size() == 1);
    CHECK(one[0].id == NodeId{1});
    CHECK(one[0].alive);
    CHECK(s.draws() == 2);

    c.n = 50;
    RandomStream a(9), b(9);
    const auto pa = place_nodes(c, a), pb = place_nodes(c, b);
    for (std::size_t i = 0; i < pa.size(); ++i) REQUIRE(pa[i].pos == pb[i].pos);

    c.n = 10000;
    c.width = 200;
    RandomStream big(1);
    double sx = 0, sy = 0;
    for (const auto& n : place_nodes(c, big)) {
        REQUIRE(n.pos.x >= 0.0);
        REQUIRE(n.pos.x < 200.0);
        REQUIRE(n.pos.y < 100.0);
        sx += n.pos.x;
        sy += n.pos.y;
    }
    CHECK(sx / 10000 == doctest::Approx(100.0).epsilon(0.01));
    CHECK(sy / 10000 == doctest::Approx(50.0).epsilon(0.01));
}

TEST_CASE("config validation") {
    SimConfig c;
    CHECK_NOTHROW(validate(c));
    c.params.p_ch = 1.5;
    CHECK_THROWS_WITH_AS(validate(c), "p_ch out of [0,1]", ConfigError);
    c = {};
    c.n = 0;
    CHECK_THROWS_AS(validate(c), ConfigError);
    c = {};
    c.traffic_fraction = -0.1;
    CHECK_THROWS_AS(validate(c), ConfigError);
    c = {};
    c.initial_energy = -1;
    CHECK_THROWS_AS(Simulation{c}, ConfigError);
    CHECK(parse_protocol("leach") == Protocol::leach);
    CHECK_THROWS_AS(parse_protocol("LEACH"), ConfigError);
}

TEST_CASE("first three rounds match the oracle") {
    SimConfig c = small_config(7, Protocol::least);
    Simulation sim(c);
    std::string trace;
    for (int r = 1; r <= 3; ++r) {
        const auto m = sim.run_round();
        char line[400];
        std::snprintf(line, sizeof line,
                      "round %d dead %d total %.17g setup %.17g steady %.17g width %d depth %d delivered %d\n", m.round,
                      m.dead_count, m.total_energy, m.setup_energy, m.steady_energy, m.first_level_width, m.max_depth,
                      m.packets_delivered);
        trace += line;
    }
    CHECK(traces_match(read_golden("run_round_five_seed7.txt"), trace));
}

TEST_CASE("round energy bookkeeping") {
    SUBCASE("no traffic means no steady energy") {
        SimConfig c = small_config(2, Protocol::leach);
        c.traffic_fraction = 0.0;
        Simulation sim(c);
        const auto m = sim.run_round();
        CHECK(m.steady_energy == 0.0);
        CHECK(m.packets_sent == 0);
        CHECK(m.setup_energy > 0.0);
    }
    SUBCASE("a single node pays one hop to the base station") {
        SimConfig c;
        c.n = 1;
        c.seed = 4;
        Simulation sim(c);
        const auto m = sim.run_round();
        const Point p = sim.network().sensor(NodeId{1}).pos;
        CHECK(m.setup_energy == 0.0);
        CHECK(m.steady_energy == doctest::Approx(50e-9 * distance(p, c.bs_pos) * distance(p, c.bs_pos)).epsilon(1e-12));
        CHECK(m.packets_delivered == 1);
        CHECK(m.first_level_width == 1);
    }
}

TEST_CASE("run termination") {
    SUBCASE("max_rounds") {
        SimConfig c = small_config(1, Protocol::least);
        c.initial_energy = 1e6;
        c.max_rounds = 10;
        const auto r = run(c);
        CHECK(r.rounds.size() == 10);
        CHECK(r.rounds.back().dead_count == 0);
        CHECK_FALSE(r.summary.first_death_round);
        CHECK_FALSE(r.summary.extinction_round);
    }
    SUBCASE("zero initial energy") {
        SimConfig c = small_config(1, Protocol::least);
        c.initial_energy = 0.0;
        const auto r = run(c);
        CHECK(r.rounds.empty());
        CHECK(r.summary.first_death_round == 0);
        CHECK(r.summary.half_life_round == 0);
        CHECK(r.summary.all_dead_round == 0);
    }
    SUBCASE("lone survivor without full traffic is inert") {
        SimConfig c;
        c.n = 1;
        c.traffic_fraction = 0.5;
        const auto r = run(c);
        CHECK(r.rounds.empty());
        CHECK(r.summary.extinction_round == 0);
        CHECK_FALSE(r.summary.all_dead_round);

        c.n = 2;
        c.initial_energy = 0.01;
        c.traffic_fraction = 0.9;
        const auto two = run(c);
        REQUIRE_FALSE(two.rounds.empty());
        CHECK(two.rounds.back().dead_count == 1);
        CHECK(two.summary.extinction_round == two.rounds.back().round);
    }
    SUBCASE("full traffic runs to extinction") {
        SimConfig c = small_config(3, Protocol::least);
        c.initial_energy = 0.002;
        const auto r = run(c);
        REQUIRE(r.summary.all_dead_round);
        CHECK(r.summary.extinction_round == r.summary.all_dead_round);
        CHECK(*r.summary.first_death_round <= *r.summary.half_life_round);
        CHECK(*r.summary.half_life_round <= *r.summary.all_dead_round);
    }
}

TEST_CASE("a stalled host election falls back to LEACH") {
    SimConfig c;
    c.n = 4;
    c.params.p_ch = 1.0; // everybody heads a cluster, so nobody can host
    c.max_rounds = 3;
    const auto r = run(c);
    REQUIRE(r.rounds.size() == 3);
    CHECK_FALSE(r.rounds[0].leach_fallback);
    CHECK(r.rounds[1].leach_fallback);
    CHECK(r.rounds[2].leach_fallback);
}

TEST_CASE("summaries") {
    std::vector<RoundMetrics> rs(6);
    const int dead[] = {0, 1, 1, 2, 3, 4};
    for (int i = 0; i < 6; ++i) {
        rs[i].round = i + 1;
        rs[i].dead_count = dead[i];
        rs[i].steady_energy = 1.0;
        rs[i].packets_delivered = 2;
    }
    const auto s = summarize(rs, 4);
    CHECK(s.first_death_round == 2);
    CHECK(s.half_life_round == 4);
    CHECK(s.all_dead_round == 6);
    CHECK(s.avg_energy_per_packet == doctest::Approx(0.5));
    CHECK(summarize(rs, 5).half_life_round == 5); // ceil(5/2) = 3 dead
    CHECK(median({3.0, 1.0, 2.0}) == 2.0);
    CHECK(median({4.0, 1.0, 2.0, 3.0}) == 2.5);
    CHECK_THROWS_AS(median({}), InvalidArgument);
}

TEST_CASE("run invariants over random configurations") {
    std::mt19937_64 gen(77);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 60; ++trial) {
        SimConfig c;
        c.n = 2 + static_cast<int>(gen() % 25);
        c.seed = gen();
        c.protocol = trial % 2 ? Protocol::leach : Protocol::least;
        c.initial_energy = 0.0005 + 0.002 * u(gen);
        c.traffic_fraction = trial % 3 == 0 ? 0.0 : u(gen);
        c.params = {0.05 + 0.5 * u(gen), 0.05 + 0.9 * u(gen), u(gen), 0, 0};
        c.max_rounds = 3000;

        Simulation sim(c);
        double spent = 0.0;
        int prev_dead = 0;
        double prev_total = sim.initial_total_energy();
        RoundMetrics last;
        while (!sim.finished()) {
            const auto m = sim.run_round();
            REQUIRE_FALSE(validate(sim.last_setup().tree, sim.round_start_alive()));
            REQUIRE(m.dead_count >= prev_dead);
            REQUIRE(m.total_energy <= prev_total);
            REQUIRE(m.packets_delivered <= m.packets_sent);
            REQUIRE(m.packets_sent <= c.n - prev_dead);
            spent += m.setup_energy + m.steady_energy;
            REQUIRE(sim.initial_total_energy() - m.total_energy == doctest::Approx(spent).epsilon(1e-9));
            prev_dead = m.dead_count;
            prev_total = m.total_energy;
            last = m;
        }
        const auto again = run(c);
        REQUIRE(static_cast<Round>(again.rounds.size()) == sim.last_round());
        if (!again.rounds.empty()) REQUIRE(again.rounds.back() == last);
    }
}

TEST_CASE("runs are reproducible") {
    SimConfig c = small_config(12, Protocol::least);
    c.n = 30;
    c.initial_energy = 0.01;
    const auto a = run(c), b = run(c);
    CHECK(a.rounds == b.rounds);
    c.seed = 13;
    CHECK_FALSE(run(c).rounds == a.rounds);
}

TEST_CASE("p_hn sweep") {
    SimConfig c;
    c.n = 20;
    c.initial_energy = 0.002;
    c.traffic_fraction = 0.0;
    const std::vector<std::uint64_t> seeds{1, 2, 3};

    const std::vector<double> one{0.2};
    const auto single = sweep_phn(c, one, seeds);
    REQUIRE(single.size() == 1);
    std::vector<double> hl;
    for (auto s : seeds) {
        SimConfig k = c;
        k.seed = s;
        hl.push_back(*run(k).summary.half_life_round);
    }
    CHECK(single[0].half_life_median == median(hl));

    const std::vector<double> dup{0.3, 0.3, 0.7};
    const auto serial = sweep_phn(c, dup, seeds, 1);
    const auto threaded = sweep_phn(c, dup, seeds, 4);
    REQUIRE(serial.size() == 3);
    CHECK(serial[0].half_life_median == serial[1].half_life_median);
    for (std::size_t i = 0; i < 3; ++i) CHECK(serial[i].half_life_median == threaded[i].half_life_median);

    CHECK_THROWS_AS(sweep_phn(c, {}, seeds), InvalidArgument);
}

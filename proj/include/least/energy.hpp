#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "least/messages.hpp"
#include "least/network.hpp"

namespace least {

struct EnergyParams {
    double epsilon_amp = 50e-9; // J per packet per m^2
    double rx_cost = 0.0;       // J per received packet

    friend bool operator==(const EnergyParams&, const EnergyParams&) = default;
};

enum class Phase { setup, steady };

/// Cumulative spend per sensor plus per-phase totals for the current round.
class EnergyLedger {
public:
    EnergyLedger() = default;
    explicit EnergyLedger(std::size_t sensor_count) : spent_(sensor_count + 1, 0.0) {}

    void record(NodeId id, double amount, Phase phase);

    double spent(NodeId id) const { return spent_.at(id.value()); }
    double total() const;
    double phase_total(Phase phase) const { return phase == Phase::setup ? setup_ : steady_; }
    void reset_phase_totals() noexcept { setup_ = steady_ = 0.0; }

private:
    std::vector<double> spent_;
    double setup_ = 0.0;
    double steady_ = 0.0;
};

/// epsilon * d^2 * packets.
double tx_cost(double d, int packets, const EnergyParams& params);

/// Drains min(amount, energy) from a live sensor and returns the drained
/// amount. The node dies when its energy reaches zero.
double charge(Network& net, EnergyLedger& ledger, NodeId node, double amount, Phase phase);

struct ApplyResult {
    double spent = 0.0;
    std::size_t skipped = 0; // messages whose sender died earlier in the log
};

/// Charges each message's sender (the base station transmits for free) and,
/// when rx_cost > 0, its receivers.
ApplyResult apply_messages(Network& net, EnergyLedger& ledger, std::span<const ControlMessage> messages,
                           const EnergyParams& params, Phase phase = Phase::setup);

} // namespace least

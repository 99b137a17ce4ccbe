#include "least/energy.hpp"

#include <algorithm>
#include <string>

#include "least/error.hpp"

namespace least {

void EnergyLedger::record(NodeId id, double amount, Phase phase) {
    spent_.at(id.value()) += amount;
    (phase == Phase::setup ? setup_ : steady_) += amount;
}

double EnergyLedger::total() const {
    double t = 0.0;
    for (double s : spent_) t += s;
    return t;
}

double tx_cost(double d, int packets, const EnergyParams& params) {
    if (d < 0.0 || packets < 0) throw InvalidArgument("tx_cost: negative distance or packet count");
    return params.epsilon_amp * d * d * packets;
}

double charge(Network& net, EnergyLedger& ledger, NodeId node, double amount, Phase phase) {
    if (amount < 0.0) throw InvalidArgument("charge: negative amount");
    SensorNode& s = net.sensor(node);
    if (!s.alive) throw DeadNodeError("charge: node " + std::to_string(node.value()) + " is dead");
    const double drained = std::min(amount, s.energy);
    s.energy -= drained;
    if (s.energy <= 0.0) {
        s.energy = 0.0;
        s.alive = false;
    }
    ledger.record(node, drained, phase);
    return drained;
}

ApplyResult apply_messages(Network& net, EnergyLedger& ledger, std::span<const ControlMessage> messages,
                           const EnergyParams& params, Phase phase) {
    ApplyResult result;
    for (const auto& msg : messages) {
        if (!msg.sender.is_base_station()) {
            if (!net.is_alive(msg.sender)) {
                ++result.skipped;
                continue;
            }
            result.spent += charge(net, ledger, msg.sender, tx_cost(msg.tx_distance, msg.packets, params), phase);
        }
        if (params.rx_cost <= 0.0 || msg.packets == 0) continue;

        const double rx = params.rx_cost * msg.packets;
        if (msg.is_broadcast()) {
            const Point& from = net.position(msg.sender);
            for (auto& s : net.sensors()) {
                if (s.alive && s.id != msg.sender && distance(from, s.pos) <= msg.tx_distance)
                    result.spent += charge(net, ledger, s.id, rx, phase);
            }
        } else if (!msg.receiver->is_base_station() && net.is_alive(*msg.receiver)) {
            result.spent += charge(net, ledger, *msg.receiver, rx, phase);
        }
    }
    return result;
}

} // namespace least

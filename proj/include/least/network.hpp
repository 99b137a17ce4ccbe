#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "least/geometry.hpp"

namespace least {

using Round = int;

struct SensorNode {
    NodeId id;
    Point pos;
    double energy = 0.0; // joules
    bool alive = false;
    std::optional<Round> last_ch_round;
    std::optional<Round> last_hn_round;
};

/// Mean pairwise distance and mean distance-to-farthest over a node set.
struct NetworkStats {
    double d_bar = 0.0;
    double d_bar_max = 0.0;
};

/// The sensors plus the base station position. Sensor k has id k and lives
/// at index k-1.
class Network {
public:
    Network() = default;
    Network(Point bs, std::vector<SensorNode> sensors);

    std::size_t size() const noexcept { return sensors_.size(); }
    const Point& bs_pos() const noexcept { return bs_; }

    SensorNode& sensor(NodeId id);
    const SensorNode& sensor(NodeId id) const;
    std::span<SensorNode> sensors() noexcept { return sensors_; }
    std::span<const SensorNode> sensors() const noexcept { return sensors_; }

    /// Position of a sensor or of the base station (id 0).
    const Point& position(NodeId id) const;

    bool is_alive(NodeId id) const;
    /// Alive sensor ids in ascending order.
    std::vector<NodeId> alive_ids() const;
    std::size_t alive_count() const;
    std::size_t dead_count() const { return size() - alive_count(); }
    double total_energy() const;

    /// Distance from `from` to the farthest other alive sensor (0 if none).
    double farthest_alive_distance(NodeId from) const;

private:
    Point bs_;
    std::vector<SensorNode> sensors_;
};

/// Throws InvalidArgument when fewer than two nodes qualify.
NetworkStats network_stats(std::span<const SensorNode> nodes, bool alive_only);

} // namespace least

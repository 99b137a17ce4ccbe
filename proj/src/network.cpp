#include "least/network.hpp"

#include <algorithm>
#include <string>

#include "least/error.hpp"

namespace least {

Network::Network(Point bs, std::vector<SensorNode> sensors) : bs_(bs), sensors_(std::move(sensors)) {
    for (std::size_t i = 0; i < sensors_.size(); ++i) {
        if (sensors_[i].id.value() != i + 1)
            throw InvalidArgument("Network: sensor at index " + std::to_string(i) + " must have id " +
                                  std::to_string(i + 1));
    }
}

SensorNode& Network::sensor(NodeId id) {
    if (id.is_base_station() || id.value() > sensors_.size())
        throw InvalidArgument("Network: no sensor with id " + std::to_string(id.value()));
    return sensors_[id.value() - 1];
}

const SensorNode& Network::sensor(NodeId id) const { return const_cast<Network*>(this)->sensor(id); }

const Point& Network::position(NodeId id) const { return id.is_base_station() ? bs_ : sensor(id).pos; }

bool Network::is_alive(NodeId id) const { return !id.is_base_station() && sensor(id).alive; }

std::vector<NodeId> Network::alive_ids() const {
    std::vector<NodeId> ids;
    for (const auto& s : sensors_)
        if (s.alive) ids.push_back(s.id);
    return ids;
}

std::size_t Network::alive_count() const {
    return static_cast<std::size_t>(std::count_if(sensors_.begin(), sensors_.end(), [](const auto& s) { return s.alive; }));
}

double Network::total_energy() const {
    double total = 0.0;
    for (const auto& s : sensors_) total += s.energy;
    return total;
}

double Network::farthest_alive_distance(NodeId from) const {
    const Point& p = position(from);
    double best = 0.0;
    for (const auto& s : sensors_)
        if (s.alive && s.id != from) best = std::max(best, distance(p, s.pos));
    return best;
}

NetworkStats network_stats(std::span<const SensorNode> nodes, bool alive_only) {
    std::vector<Point> pts;
    pts.reserve(nodes.size());
    for (const auto& s : nodes)
        if (!alive_only || s.alive) pts.push_back(s.pos);
    if (pts.size() < 2) throw InvalidArgument("network_stats: need at least two nodes, got " + std::to_string(pts.size()));

    const std::size_t m = pts.size();
    std::vector<double> farthest(m, 0.0);
    double pair_sum = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            const double d = distance(pts[i], pts[j]);
            pair_sum += d;
            farthest[i] = std::max(farthest[i], d);
            farthest[j] = std::max(farthest[j], d);
        }
    }
    double far_sum = 0.0;
    for (double f : farthest) far_sum += f;

    const double pairs = static_cast<double>(m) * static_cast<double>(m - 1) / 2.0;
    return {pair_sum / pairs, far_sum / static_cast<double>(m)};
}

} // namespace least

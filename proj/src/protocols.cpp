#include "least/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "least/error.hpp"

namespace least {

namespace {

void check_probability(double p, const char* name) {
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument(std::string(name) + " out of [0,1]");
}

double role_probability(Role role, const ProtocolParams& params) {
    return role == Role::cluster_head ? params.p_ch : params.p_hn;
}

const std::optional<Round>& last_held(const SensorNode& node, Role role) {
    return role == Role::cluster_head ? node.last_ch_round : node.last_hn_round;
}

// Bernoulli draw per candidate in the given (ascending) order; redrawn when
// nobody is elected, then a uniform pick.
std::vector<NodeId> run_election(std::span<const NodeId> candidates, double threshold, RandomStream& stream) {
    std::vector<NodeId> elected;
    for (int attempt = 0; attempt < kMaxElectionAttempts && elected.empty(); ++attempt) {
        for (NodeId id : candidates)
            if (bernoulli(stream, threshold)) elected.push_back(id);
    }
    if (elected.empty()) elected.push_back(uniform_choice(stream, candidates));
    return elected;
}

bool contains_sorted(std::span<const NodeId> ids, NodeId id) { return std::binary_search(ids.begin(), ids.end(), id); }

} // namespace

void validate(const ProtocolParams& params) {
    check_probability(params.p_ch, "p_ch");
    check_probability(params.p_hn, "p_hn");
    check_probability(params.p_h, "p_h");
    if (params.p_ch <= 0.0) throw InvalidArgument("p_ch must be positive");
    if (params.ch_window < 0) throw InvalidArgument("ch_window must be non-negative");
    if (params.hn_window < 0) throw InvalidArgument("hn_window must be non-negative");
}

int rotation_window(Role role, const ProtocolParams& params) {
    const int override_window = role == Role::cluster_head ? params.ch_window : params.hn_window;
    if (override_window > 0) return override_window;
    const double p = role_probability(role, params);
    if (p <= 0.0) return 1;
    // Guard against 1/0.2 evaluating to 4.999...
    return std::max(1, static_cast<int>(std::floor(1.0 / p + 1e-9)));
}

bool rotation_eligible(const SensorNode& node, Role role, Round round, const ProtocolParams& params) {
    const auto& last = last_held(node, role);
    if (!last) return true;
    const int window = rotation_window(role, params);
    const Round epoch_start = window * (round / window);
    return *last < epoch_start;
}

double election_threshold(Role role, Round round, const ProtocolParams& params) {
    const double p = role_probability(role, params);
    const int window = rotation_window(role, params);
    const double denom = 1.0 - p * static_cast<double>(round % window);
    if (denom <= p) return 1.0;
    return std::clamp(p / denom, 0.0, 1.0);
}

SetupOutcome leach_setup(const Network& net, const ProtocolParams& params, Round round, RandomStream& stream) {
    const std::vector<NodeId> alive = net.alive_ids();
    if (alive.empty()) throw InvalidArgument("leach_setup: no alive sensors");

    std::vector<NodeId> candidates;
    for (NodeId id : alive)
        if (rotation_eligible(net.sensor(id), Role::cluster_head, round, params)) candidates.push_back(id);
    // Everybody served this epoch: rotation cannot be honoured, but a round
    // still needs a cluster head.
    if (candidates.empty()) candidates = alive;

    SetupOutcome out;
    out.tree = RoutingTree(net.size());
    out.cluster_heads = run_election(candidates, election_threshold(Role::cluster_head, round, params), stream);

    for (NodeId ch : out.cluster_heads) {
        out.tree.attach(ch, kBaseStation);
        out.messages.push_back({MessageKind::ch_announce, ch, std::nullopt, net.farthest_alive_distance(ch), 1});
    }
    auto pos = [&net](NodeId id) -> const Point& { return net.position(id); };
    for (NodeId id : alive) {
        if (contains_sorted(out.cluster_heads, id)) continue;
        const NodeId ch = nearest(out.cluster_heads, net.position(id), pos);
        out.tree.attach(id, ch);
        out.messages.push_back({MessageKind::join_request, id, ch, distance(net.position(id), net.position(ch)), 1});
    }
    return out;
}

HostElection elect_host_nodes(const Network& net, const RoutingTree& tree, const ProtocolParams& params,
                              Round round, RandomStream& stream) {
    if (round < 2) throw InvalidArgument("elect_host_nodes: host election starts at round 2");
    const std::vector<NodeId> first_level = tree.first_level();

    std::vector<NodeId> candidates;
    for (NodeId id : net.alive_ids()) {
        if (contains_sorted(first_level, id) || !tree.contains(id)) continue;
        if (rotation_eligible(net.sensor(id), Role::host_node, round, params)) candidates.push_back(id);
    }
    if (candidates.empty())
        throw ProtocolStall("elect_host_nodes: no eligible host candidates in round " + std::to_string(round));

    HostElection out;
    out.hosts = run_election(candidates, election_threshold(Role::host_node, round, params), stream);
    for (NodeId h : out.hosts)
        out.messages.push_back({MessageKind::hn_announce_to_bs, h, kBaseStation,
                                distance(net.position(h), net.bs_pos()), 1});

    // The base station relays the host list to the first level; recorded
    // for completeness, the base station transmits for free.
    double reach = 0.0;
    for (NodeId f : first_level) reach = std::max(reach, distance(net.bs_pos(), net.position(f)));
    out.messages.push_back({MessageKind::bs_notify_first_level, kBaseStation, std::nullopt, reach, 1});
    return out;
}

HeirElection elect_heirs(const Network& net, const RoutingTree& tree, std::span<const NodeId> first_level,
                         const ProtocolParams& params, RandomStream& stream) {
    check_probability(params.p_h, "p_h");
    HeirElection out;
    for (NodeId parent : first_level) {
        const std::vector<NodeId> kids(tree.children(parent).begin(), tree.children(parent).end());
        if (kids.empty()) continue;

        std::vector<NodeId> chosen;
        for (NodeId c : kids)
            if (bernoulli(stream, params.p_h)) chosen.push_back(c);
        if (chosen.empty()) chosen.push_back(uniform_choice(stream, std::span<const NodeId>(kids)));

        const Point& parent_pos = net.position(parent);
        for (NodeId h : chosen) {
            const Point& hp = net.position(h);
            double sibling_reach = 0.0;
            for (NodeId s : kids)
                if (s != h) sibling_reach = std::max(sibling_reach, distance(hp, net.position(s)));
            const int sibling_packets = kids.size() > 1 ? 1 : 0;

            out.messages.push_back({MessageKind::heir_notify_parent, h, parent, distance(hp, parent_pos), 1});
            out.messages.push_back({MessageKind::heir_announce_siblings, h, std::nullopt, sibling_reach, sibling_packets});
            out.messages.push_back({MessageKind::heir_relay_to_bs, parent, kBaseStation,
                                    distance(parent_pos, net.bs_pos()), 1});
        }
        out.heirs.emplace(parent, std::move(chosen));
    }
    return out;
}

Relocation relocate(const RoutingTree& tree, std::span<const NodeId> first_level, std::span<const NodeId> hosts,
                    const std::map<NodeId, std::vector<NodeId>>& heirs, const Network& net) {
    if (hosts.empty() && !first_level.empty()) throw InvalidArgument("relocate: no host nodes");
    for (NodeId h : hosts)
        if (std::find(first_level.begin(), first_level.end(), h) != first_level.end())
            throw InvalidArgument("relocate: host " + std::to_string(h.value()) + " is a first-level node");

    Relocation out{tree, {}};
    auto pos = [&net](NodeId id) -> const Point& { return net.position(id); };

    std::map<NodeId, std::vector<NodeId>> orphans;
    for (NodeId v : first_level) orphans[v] = out.tree.detach_subtree_root(v);

    auto heirs_of = [&heirs](NodeId v) -> const std::vector<NodeId>* {
        auto it = heirs.find(v);
        return it == heirs.end() ? nullptr : &it->second;
    };

    for (NodeId v : first_level) {
        const auto* hs = heirs_of(v);
        if (!hs) {
            if (!orphans[v].empty())
                throw InvalidArgument("relocate: first-level node " + std::to_string(v.value()) + " has children but no heir");
            continue;
        }
        if (hs->empty()) throw InvalidArgument("relocate: empty heir set for node " + std::to_string(v.value()));
        for (NodeId h : *hs) {
            if (!std::binary_search(orphans[v].begin(), orphans[v].end(), h))
                throw InvalidArgument("relocate: heir " + std::to_string(h.value()) + " is not a child of its parent");
            out.tree.attach(h, kBaseStation);
        }
    }

    for (NodeId v : first_level) {
        const auto* hs = heirs_of(v);
        if (!hs) continue;
        for (NodeId c : orphans[v]) {
            if (std::find(hs->begin(), hs->end(), c) != hs->end()) continue;
            const NodeId target = nearest(*hs, net.position(c), pos);
            out.tree.attach(c, target);
            out.messages.push_back({MessageKind::relocate_join, c, target, distance(net.position(c), net.position(target)), 1});
        }
    }

    for (NodeId v : first_level) {
        const NodeId target = nearest(hosts, net.position(v), pos);
        out.tree.attach(v, target);
        out.messages.push_back({MessageKind::relocate_join, v, target, distance(net.position(v), net.position(target)), 1});
    }
    return out;
}

SetupOutcome least_setup(const Network& net, const RoutingTree& current, const ProtocolParams& params, Round round,
                         RandomStream& stream) {
    if (round <= 1) return leach_setup(net, params, round, stream);
    if (net.alive_count() == 0) throw InvalidArgument("least_setup: no alive sensors");

    const std::vector<NodeId> first_level = current.first_level();
    HostElection hosts = elect_host_nodes(net, current, params, round, stream);
    HeirElection heirs = elect_heirs(net, current, first_level, params, stream);
    Relocation moved = relocate(current, first_level, hosts.hosts, heirs.heirs, net);

    SetupOutcome out;
    out.tree = std::move(moved.tree);
    out.messages = std::move(hosts.messages);
    out.messages.insert(out.messages.end(), heirs.messages.begin(), heirs.messages.end());
    out.messages.insert(out.messages.end(), moved.messages.begin(), moved.messages.end());
    out.host_nodes = std::move(hosts.hosts);
    out.heirs = std::move(heirs.heirs);
    return out;
}

void commit_roles(Network& net, const SetupOutcome& outcome, Round round) {
    for (NodeId id : outcome.cluster_heads) net.sensor(id).last_ch_round = round;
    for (NodeId id : outcome.host_nodes) net.sensor(id).last_hn_round = round;
}

std::size_t prune_dead_nodes(RoutingTree& tree, const Network& net) {
    std::size_t removed = 0;
    for (const auto& s : net.sensors()) {
        if (s.alive) continue;
        const auto parent = tree.parent(s.id);
        const bool had_children = !tree.children(s.id).empty();
        if (!parent && !had_children) continue;
        const std::vector<NodeId> orphans = tree.detach_subtree_root(s.id);
        if (parent)
            for (NodeId c : orphans) tree.attach(c, *parent);
        ++removed;
    }
    return removed;
}

} // namespace least

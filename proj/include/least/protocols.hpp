#pragma once

#include <map>
#include <vector>

#include "least/messages.hpp"
#include "least/network.hpp"
#include "least/random_stream.hpp"
#include "least/routing_tree.hpp"

namespace least {

struct ProtocolParams {
    double p_ch = 0.1;
    double p_hn = 0.2;
    double p_h = 0.1;
    // Rotation window overrides; 0 means floor(1/p).
    int ch_window = 0;
    int hn_window = 0;

    friend bool operator==(const ProtocolParams&, const ProtocolParams&) = default;
};

/// Throws InvalidArgument naming the offending field.
void validate(const ProtocolParams& params);

enum class Role { cluster_head, host_node };

/// Elections that come back empty are redrawn this many times before one
/// eligible node is picked uniformly.
inline constexpr int kMaxElectionAttempts = 100;

int rotation_window(Role role, const ProtocolParams& params);

/// A node may self-elect for `role` only if it has not held the role in the
/// current rotation epoch, i.e. since round window * floor(round / window).
bool rotation_eligible(const SensorNode& node, Role role, Round round, const ProtocolParams& params);

/// LEACH threshold p / (1 - p * (round mod window)), clamped to [0, 1].
double election_threshold(Role role, Round round, const ProtocolParams& params);

struct SetupOutcome {
    RoutingTree tree;
    std::vector<ControlMessage> messages;
    std::vector<NodeId> cluster_heads;
    std::vector<NodeId> host_nodes;
    std::map<NodeId, std::vector<NodeId>> heirs; // former first-level node -> its heirs
    bool leach_fallback = false;                 // LEAST round rebuilt by a LEACH election

    friend bool operator==(const SetupOutcome&, const SetupOutcome&) = default;
};

/// Self-election of cluster heads plus nearest-CH attachment.
SetupOutcome leach_setup(const Network& net, const ProtocolParams& params, Round round, RandomStream& stream);

struct HostElection {
    std::vector<NodeId> hosts;
    std::vector<ControlMessage> messages;
};

/// Throws ProtocolStall when no node is eligible to host.
HostElection elect_host_nodes(const Network& net, const RoutingTree& tree, const ProtocolParams& params,
                              Round round, RandomStream& stream);

struct HeirElection {
    std::map<NodeId, std::vector<NodeId>> heirs;
    std::vector<ControlMessage> messages;
};

HeirElection elect_heirs(const Network& net, const RoutingTree& tree, std::span<const NodeId> first_level,
                         const ProtocolParams& params, RandomStream& stream);

struct Relocation {
    RoutingTree tree;
    std::vector<ControlMessage> messages;
};

/// Moves every first-level node under its nearest host, promotes heirs to the
/// base station and re-homes the remaining children under the nearest heir
/// of their former parent. Computed from `tree`, which is left untouched.
Relocation relocate(const RoutingTree& tree, std::span<const NodeId> first_level, std::span<const NodeId> hosts,
                    const std::map<NodeId, std::vector<NodeId>>& heirs, const Network& net);

/// Round 1 is a LEACH setup; later rounds elect hosts and heirs and relocate
/// the first level of `current`.
SetupOutcome least_setup(const Network& net, const RoutingTree& current, const ProtocolParams& params, Round round,
                         RandomStream& stream);

/// Writes the election history of `outcome` back into the sensors.
void commit_roles(Network& net, const SetupOutcome& outcome, Round round);

/// Removes dead sensors from the tree. Children of a dead node move up to
/// its parent. Returns the number of nodes removed.
std::size_t prune_dead_nodes(RoutingTree& tree, const Network& net);

} // namespace least

#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "least/error.hpp"
#include "least/geometry.hpp"

namespace least {

/// Rooted tree over node ids with the base station (id 0) as root.
///
/// A node is *in* the tree when following parent links from it reaches the
/// base station. Nodes that were detached keep their own children, so a
/// detached node can temporarily root a fragment until it is re-attached.
/// Children are kept in ascending id order.
class RoutingTree {
public:
    RoutingTree() : RoutingTree(0) {}
    /// Tree holding only the base station; sensors 1..sensor_count detached.
    explicit RoutingTree(std::size_t sensor_count);

    /// Builds a tree from raw (child, parent) links without any checking.
    /// Used for fixtures and for planting faults in tests.
    static RoutingTree from_links(std::size_t sensor_count, std::span<const std::pair<NodeId, NodeId>> links);

    std::size_t sensor_capacity() const noexcept { return parent_.size() - 1; }

    bool contains(NodeId id) const;
    std::optional<NodeId> parent(NodeId id) const;
    const std::set<NodeId>& children(NodeId id) const;

    /// Throws TreeError on self-loops, already-attached children, unknown
    /// parents and cycles.
    void attach(NodeId child, NodeId parent);

    /// Cuts `node` from its parent and from its children. Returns the former
    /// children in ascending order; they stay detached (with their own
    /// subtrees) until re-attached.
    std::vector<NodeId> detach_subtree_root(NodeId node);

    std::vector<NodeId> first_level() const;
    std::vector<NodeId> path_to_root(NodeId node) const;
    int level(NodeId node) const;
    /// Deepest level over all attached nodes (0 for a bare base station).
    int max_depth() const;

    /// One "childId parentId" line per attached sensor, ascending child id.
    std::string to_text() const;

    friend bool operator==(const RoutingTree&, const RoutingTree&) = default;

private:
    void check_id(NodeId id) const;

    std::vector<std::optional<NodeId>> parent_;
    std::vector<std::set<NodeId>> children_;
};

struct TreeViolation {
    std::string invariant; // "root", "consistency", "acyclic" or "coverage"
    NodeId node;
    std::string detail;
};

/// Checks every tree invariant. Returns the first violation, if any.
std::optional<TreeViolation> validate(const RoutingTree& tree, std::span<const NodeId> alive_nodes);

/// Candidate closest to `from`; ties go to the smallest id. `position_of`
/// maps a NodeId to its Point.
NodeId nearest(std::span<const NodeId> candidates, const Point& from, const auto& position_of) {
    if (candidates.empty()) throw InvalidArgument("nearest: empty candidate set");
    NodeId best = candidates.front();
    double best_d = distance(from, position_of(best));
    for (NodeId c : candidates.subspan(1)) {
        const double d = distance(from, position_of(c));
        if (d < best_d || (d == best_d && c < best)) {
            best = c;
            best_d = d;
        }
    }
    return best;
}

} // namespace least

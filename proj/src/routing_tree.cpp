#include "least/routing_tree.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "least/error.hpp"

namespace least {

namespace {

std::string id_str(NodeId id) { return std::to_string(id.value()); }

} // namespace

RoutingTree::RoutingTree(std::size_t sensor_count) : parent_(sensor_count + 1), children_(sensor_count + 1) {}

RoutingTree RoutingTree::from_links(std::size_t sensor_count, std::span<const std::pair<NodeId, NodeId>> links) {
    RoutingTree tree(sensor_count);
    for (const auto& [child, parent] : links) {
        tree.check_id(child);
        tree.check_id(parent);
        tree.parent_[child.value()] = parent;
        tree.children_[parent.value()].insert(child);
    }
    return tree;
}

void RoutingTree::check_id(NodeId id) const {
    if (id.value() >= parent_.size()) throw TreeError("unknown node " + id_str(id));
}

bool RoutingTree::contains(NodeId id) const {
    if (id.value() >= parent_.size()) return false;
    NodeId cur = id;
    for (std::size_t steps = 0; steps <= parent_.size(); ++steps) {
        if (cur.is_base_station()) return true;
        const auto& p = parent_[cur.value()];
        if (!p) return false;
        cur = *p;
    }
    return false; // cycle
}

std::optional<NodeId> RoutingTree::parent(NodeId id) const {
    check_id(id);
    return parent_[id.value()];
}

const std::set<NodeId>& RoutingTree::children(NodeId id) const {
    check_id(id);
    return children_[id.value()];
}

void RoutingTree::attach(NodeId child, NodeId parent) {
    check_id(child);
    if (child == parent) throw TreeError("attach: self-loop on node " + id_str(child));
    if (child.is_base_station()) throw TreeError("attach: the base station cannot have a parent");
    if (parent.value() >= parent_.size()) throw TreeError("attach: unknown parent " + id_str(parent));
    if (parent_[child.value()]) throw TreeError("attach: node " + id_str(child) + " is already attached");

    NodeId cur = parent;
    for (std::size_t steps = 0;; ++steps) {
        if (cur == child) throw TreeError("attach: attaching " + id_str(child) + " under " + id_str(parent) + " creates a cycle");
        if (cur.is_base_station()) break;
        const auto& p = parent_[cur.value()];
        if (!p || steps > parent_.size()) throw TreeError("attach: parent " + id_str(parent) + " is not in the tree");
        cur = *p;
    }
    parent_[child.value()] = parent;
    children_[parent.value()].insert(child);
}

std::vector<NodeId> RoutingTree::detach_subtree_root(NodeId node) {
    check_id(node);
    if (node.is_base_station()) throw TreeError("detach: cannot detach the base station");
    if (auto& p = parent_[node.value()]) {
        children_[p->value()].erase(node);
        p.reset();
    }
    std::vector<NodeId> orphans(children_[node.value()].begin(), children_[node.value()].end());
    for (NodeId c : orphans) parent_[c.value()].reset();
    children_[node.value()].clear();
    return orphans;
}

std::vector<NodeId> RoutingTree::first_level() const {
    return {children_[0].begin(), children_[0].end()};
}

std::vector<NodeId> RoutingTree::path_to_root(NodeId node) const {
    if (!contains(node)) throw TreeError("path_to_root: node " + id_str(node) + " is not in the tree");
    std::vector<NodeId> path{node};
    while (!path.back().is_base_station()) path.push_back(*parent_[path.back().value()]);
    return path;
}

int RoutingTree::level(NodeId node) const { return static_cast<int>(path_to_root(node).size()) - 1; }

int RoutingTree::max_depth() const {
    int depth = 0;
    std::deque<std::pair<NodeId, int>> queue{{kBaseStation, 0}};
    while (!queue.empty()) {
        auto [id, lvl] = queue.front();
        queue.pop_front();
        depth = std::max(depth, lvl);
        for (NodeId c : children_[id.value()]) queue.emplace_back(c, lvl + 1);
    }
    return depth;
}

std::string RoutingTree::to_text() const {
    std::ostringstream out;
    for (std::size_t i = 1; i < parent_.size(); ++i) {
        const NodeId id{static_cast<NodeId::value_type>(i)};
        if (contains(id)) out << i << ' ' << parent_[i]->value() << '\n';
    }
    return out.str();
}

std::optional<TreeViolation> validate(const RoutingTree& tree, std::span<const NodeId> alive_nodes) {
    const std::size_t size = tree.sensor_capacity() + 1;

    if (tree.parent(kBaseStation)) return TreeViolation{"root", kBaseStation, "base station has a parent"};

    for (std::size_t i = 0; i < size; ++i) {
        const NodeId id{static_cast<NodeId::value_type>(i)};
        if (auto p = tree.parent(id); p && !tree.children(*p).contains(id))
            return TreeViolation{"consistency", id, "missing from the children of its parent " + id_str(*p)};
        for (NodeId c : tree.children(id)) {
            if (c.value() >= size || tree.parent(c) != id)
                return TreeViolation{"consistency", c, "listed as a child of " + id_str(id) + " but has another parent"};
        }
    }

    for (std::size_t i = 1; i < size; ++i) {
        const NodeId id{static_cast<NodeId::value_type>(i)};
        if (!tree.parent(id)) continue;
        NodeId cur = id;
        std::size_t steps = 0;
        while (!cur.is_base_station()) {
            auto p = tree.parent(cur);
            if (!p) return TreeViolation{"root", cur, "node " + id_str(id) + " hangs from a second root"};
            cur = *p;
            if (++steps > size) return TreeViolation{"acyclic", id, "parent links loop without reaching the base station"};
        }
    }

    for (NodeId id : alive_nodes) {
        if (!tree.contains(id)) return TreeViolation{"coverage", id, "alive node is not in the tree"};
    }
    return std::nullopt;
}

} // namespace least

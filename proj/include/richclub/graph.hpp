#ifndef RICHCLUB_GRAPH_HPP
#define RICHCLUB_GRAPH_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <queue>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace richclub {

using NodeId = std::uint32_t;

inline constexpr NodeId kInvalidNode = std::numeric_limits<NodeId>::max();

namespace detail {

// Order-independent 64-bit key for an undirected node pair.
inline std::uint64_t edge_key(NodeId u, NodeId v) {
    if (u > v) std::swap(u, v);
    return (static_cast<std::uint64_t>(u) << 32) | v;
}

}  // namespace detail

/// Immutable simple undirected graph in CSR form. Adjacency lists are kept
/// sorted, so edge lookups are logarithmic and all traversal output is
/// deterministic. Construct through build_graph().
class Graph {
public:
    Graph() : offsets_(1, 0) {}

    std::size_t node_count() const { return offsets_.size() - 1; }
    std::size_t edge_count() const { return edge_count_; }

    std::size_t degree(NodeId u) const {
        check_node(u);
        return offsets_[u + 1] - offsets_[u];
    }

    std::span<const NodeId> neighbors(NodeId u) const {
        check_node(u);
        return {targets_.data() + offsets_[u], offsets_[u + 1] - offsets_[u]};
    }

    bool has_edge(NodeId u, NodeId v) const {
        const auto adj = neighbors(u);
        check_node(v);
        return std::binary_search(adj.begin(), adj.end(), v);
    }

    /// Edges as (u, v) pairs with u < v, sorted.
    std::vector<std::pair<NodeId, NodeId>> edges() const {
        std::vector<std::pair<NodeId, NodeId>> out;
        out.reserve(edge_count_);
        for_each_edge([&](NodeId u, NodeId v) { out.emplace_back(u, v); });
        return out;
    }

    /// Visits every edge exactly once, as (u, v) with u < v in sorted order.
    template <typename F>
    void for_each_edge(F&& f) const {
        const std::size_t n = node_count();
        for (NodeId u = 0; u < n; ++u) {
            for (std::size_t i = offsets_[u]; i < offsets_[u + 1]; ++i) {
                const NodeId v = targets_[i];
                if (v > u) f(u, v);
            }
        }
    }

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.offsets_ == b.offsets_ && a.targets_ == b.targets_;
    }

private:
    Graph(std::size_t node_count, const std::vector<std::pair<NodeId, NodeId>>& unique_edges)
        : offsets_(node_count + 1, 0), edge_count_(unique_edges.size()) {
        for (const auto& [u, v] : unique_edges) {
            ++offsets_[u + 1];
            ++offsets_[v + 1];
        }
        for (std::size_t i = 1; i <= node_count; ++i) offsets_[i] += offsets_[i - 1];
        targets_.resize(2 * unique_edges.size());
        std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
        for (const auto& [u, v] : unique_edges) {
            targets_[cursor[u]++] = v;
            targets_[cursor[v]++] = u;
        }
        for (std::size_t u = 0; u < node_count; ++u)
            std::sort(targets_.begin() + static_cast<std::ptrdiff_t>(offsets_[u]),
                      targets_.begin() + static_cast<std::ptrdiff_t>(offsets_[u + 1]));
    }

    void check_node(NodeId u) const {
        if (u >= node_count())
            throw std::out_of_range("node " + std::to_string(u) + " out of range [0, " +
                                    std::to_string(node_count()) + ")");
    }

    std::vector<std::size_t> offsets_;
    std::vector<NodeId> targets_;
    std::size_t edge_count_ = 0;

    friend Graph build_graph(std::size_t, std::span<const std::pair<NodeId, NodeId>>,
                             struct BuildReport*);
};

/// Counts of inputs the builder dropped while normalizing to a simple graph.
struct BuildReport {
    std::size_t self_loops_dropped = 0;
    std::size_t duplicate_edges_dropped = 0;
};

/// Builds a simple undirected graph from a raw pair list. Self-loops and
/// duplicate pairs (in either orientation) are dropped and counted in
/// `report`; an endpoint outside [0, node_count) is rejected.
inline Graph build_graph(std::size_t node_count,
                         std::span<const std::pair<NodeId, NodeId>> edges,
                         BuildReport* report = nullptr) {
    if (node_count < 1) throw std::invalid_argument("node_count must be >= 1");
    BuildReport local;
    std::vector<std::pair<NodeId, NodeId>> normalized;
    normalized.reserve(edges.size());
    for (const auto& [a, b] : edges) {
        if (a >= node_count || b >= node_count)
            throw std::invalid_argument("edge (" + std::to_string(a) + ", " + std::to_string(b) +
                                        ") has endpoint outside [0, " +
                                        std::to_string(node_count) + ")");
        if (a == b) {
            ++local.self_loops_dropped;
            continue;
        }
        normalized.emplace_back(std::min(a, b), std::max(a, b));
    }
    std::sort(normalized.begin(), normalized.end());
    const auto last = std::unique(normalized.begin(), normalized.end());
    local.duplicate_edges_dropped =
        static_cast<std::size_t>(std::distance(last, normalized.end()));
    normalized.erase(last, normalized.end());
    if (report) *report = local;
    return Graph(node_count, normalized);
}

/// Induced subgraph plus the id mappings between the two graphs.
struct InducedSubgraph {
    Graph graph;
    std::vector<NodeId> to_orig;  // subgraph id -> original id
    std::vector<NodeId> to_sub;   // original id -> subgraph id, kInvalidNode if absent
};

/// Restricts `g` to `members` (duplicates tolerated, ids validated). Keeps an
/// edge iff both endpoints are members.
inline InducedSubgraph induced_subgraph(const Graph& g, std::span<const NodeId> members) {
    std::vector<NodeId> keep(members.begin(), members.end());
    std::sort(keep.begin(), keep.end());
    keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
    for (NodeId u : keep)
        if (u >= g.node_count())
            throw std::invalid_argument("member " + std::to_string(u) + " is not a node of the graph");

    InducedSubgraph out;
    out.to_orig = keep;
    out.to_sub.assign(g.node_count(), kInvalidNode);
    for (std::size_t i = 0; i < keep.size(); ++i) out.to_sub[keep[i]] = static_cast<NodeId>(i);

    std::vector<std::pair<NodeId, NodeId>> edges;
    for (NodeId u : keep) {
        for (NodeId v : g.neighbors(u)) {
            if (v > u && out.to_sub[v] != kInvalidNode)
                edges.emplace_back(out.to_sub[u], out.to_sub[v]);
        }
    }
    if (keep.empty()) {
        out.graph = Graph();
        return out;
    }
    out.graph = build_graph(keep.size(), edges);
    return out;
}

inline constexpr std::int32_t kUnreachable = -1;

/// Exact hop counts from `source`; unreachable nodes get kUnreachable.
inline std::vector<std::int32_t> bfs_distances(const Graph& g, NodeId source) {
    if (source >= g.node_count())
        throw std::out_of_range("bfs source " + std::to_string(source) + " out of range");
    std::vector<std::int32_t> dist(g.node_count(), kUnreachable);
    std::queue<NodeId> frontier;
    dist[source] = 0;
    frontier.push(source);
    while (!frontier.empty()) {
        const NodeId u = frontier.front();
        frontier.pop();
        for (NodeId v : g.neighbors(u)) {
            if (dist[v] == kUnreachable) {
                dist[v] = dist[u] + 1;
                frontier.push(v);
            }
        }
    }
    return dist;
}

/// Mean hop count over connected unordered pairs. Disconnected pairs are
/// counted separately, never folded into the mean; with no connected pair the
/// mean is absent and connected_pairs is 0.
struct PathLengthStats {
    std::optional<double> mean_hops;
    std::uint64_t connected_pairs = 0;
    std::uint64_t disconnected_pairs = 0;
};

inline PathLengthStats average_path_length(const Graph& g) {
    const std::size_t n = g.node_count();
    if (n < 2) throw std::invalid_argument("average_path_length requires at least 2 nodes");
    PathLengthStats stats;
    std::uint64_t total_hops = 0;
    for (NodeId u = 0; u < n; ++u) {
        const auto dist = bfs_distances(g, u);
        for (NodeId v = u + 1; v < n; ++v) {
            if (dist[v] == kUnreachable) {
                ++stats.disconnected_pairs;
            } else {
                ++stats.connected_pairs;
                total_hops += static_cast<std::uint64_t>(dist[v]);
            }
        }
    }
    if (stats.connected_pairs > 0)
        stats.mean_hops = static_cast<double>(total_hops) / static_cast<double>(stats.connected_pairs);
    return stats;
}

/// Component label per node plus the number of components.
inline std::vector<std::uint32_t> connected_components(const Graph& g, std::size_t* count = nullptr) {
    const std::size_t n = g.node_count();
    std::vector<std::uint32_t> label(n, std::numeric_limits<std::uint32_t>::max());
    std::uint32_t next = 0;
    std::vector<NodeId> stack;
    for (NodeId s = 0; s < n; ++s) {
        if (label[s] != std::numeric_limits<std::uint32_t>::max()) continue;
        label[s] = next;
        stack.push_back(s);
        while (!stack.empty()) {
            const NodeId u = stack.back();
            stack.pop_back();
            for (NodeId v : g.neighbors(u)) {
                if (label[v] == std::numeric_limits<std::uint32_t>::max()) {
                    label[v] = next;
                    stack.push_back(v);
                }
            }
        }
        ++next;
    }
    if (count) *count = next;
    return label;
}

/// Size of the largest connected component divided by the node count.
inline double giant_component_fraction(const Graph& g) {
    const std::size_t n = g.node_count();
    if (n < 1) throw std::invalid_argument("giant_component_fraction requires at least 1 node");
    std::size_t components = 0;
    const auto label = connected_components(g, &components);
    std::vector<std::size_t> size(components, 0);
    for (std::uint32_t l : label) ++size[l];
    return static_cast<double>(*std::max_element(size.begin(), size.end())) /
           static_cast<double>(n);
}

}  // namespace richclub

#endif  // RICHCLUB_GRAPH_HPP

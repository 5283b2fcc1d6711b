#pragma once

#include <queue>
#include <span>
#include <vector>

#include "fastpath/graph.hpp"
#include "fastpath/heuristic.hpp"

namespace fastpath {

/// Minimal cost and one parent arc per node, from a single source or a
/// source set. cost[source] = 0; unreachable nodes keep kUnreachable and
/// no parent.
struct CostField {
    std::vector<NodeId> sources;
    std::vector<Cost> cost;
    std::vector<ArcId> parent_arc;
};

/// Point-to-point answer plus the traversal counters that feed the
/// efficiency metric. settled_count is the number of queue pops that
/// closed a node (including the target); relaxed_count the number of
/// improving arc relaxations.
struct QueryResult {
    Cost cost = kUnreachable;
    std::vector<NodeId> path;
    std::int64_t settled_count = 0;
    std::int64_t relaxed_count = 0;
};

/// Optional per-search instrumentation: settle order and priority keys.
struct SearchTrace {
    std::vector<NodeId> settled;
    std::vector<double> keys;
};

namespace detail {

// Min-heap entries ordered by (key, node): equal keys pop the smaller
// node id first, which pins settle order across runs and platforms.
using QueueEntry = std::pair<double, NodeId>;
using MinQueue =
    std::priority_queue<QueueEntry, std::vector<QueueEntry>, std::greater<QueueEntry>>;

inline double arc_weight(const Graph& g, ArcId i, std::span<const double> weights) {
    return weights.empty() ? g.arc(i).weight : weights[static_cast<size_t>(i)];
}

inline CostField run_dijkstra(const Graph& g, std::span<const NodeId> sources,
                              std::span<const double> weights) {
    if (sources.empty()) throw std::invalid_argument("dijkstra: empty source set");
    const auto n = static_cast<size_t>(g.node_count());
    CostField field;
    field.sources.assign(sources.begin(), sources.end());
    std::sort(field.sources.begin(), field.sources.end());
    field.sources.erase(std::unique(field.sources.begin(), field.sources.end()),
                        field.sources.end());
    field.cost.assign(n, kUnreachable);
    field.parent_arc.assign(n, kNoArc);

    MinQueue queue;
    for (const NodeId s : field.sources) {
        if (!g.valid_node(s)) throw std::invalid_argument("dijkstra: source out of range");
        field.cost[static_cast<size_t>(s)] = 0.0;
        queue.push({0.0, s});
    }
    std::vector<bool> settled(n, false);
    while (!queue.empty()) {
        const auto [d, u] = queue.top();
        queue.pop();
        if (settled[static_cast<size_t>(u)]) continue;
        settled[static_cast<size_t>(u)] = true;
        const auto [first, last] = g.out_arc_range(u);
        for (ArcId i = first; i < last; ++i) {
            const Arc& a = g.arc(i);
            const double nd = d + arc_weight(g, i, weights);
            if (nd < field.cost[static_cast<size_t>(a.head)]) {
                field.cost[static_cast<size_t>(a.head)] = nd;
                field.parent_arc[static_cast<size_t>(a.head)] = i;
                queue.push({nd, a.head});
            }
        }
    }
    return field;
}

}  // namespace detail

/// Costs of minimal paths from s to every node.
inline CostField dijkstra_one_to_all(const Graph& g, NodeId s,
                                     std::span<const double> weights = {}) {
    const NodeId sources[1] = {s};
    return detail::run_dijkstra(g, sources, weights);
}

/// cost[v] = min over u in sources of c(u, v). Equivalent to adding a
/// virtual vertex with zero-weight arcs to every source and running a
/// single-source search from it.
inline CostField multi_source_dijkstra(const Graph& g, std::span<const NodeId> sources,
                                       std::span<const double> weights = {}) {
    return detail::run_dijkstra(g, sources, weights);
}

/// Walks parent arcs from t back to the source. Empty when t is
/// unreachable; throws on a parent-link cycle (internal corruption).
inline std::vector<NodeId> reconstruct_path(const Graph& g, const CostField& field, NodeId t) {
    if (!g.valid_node(t)) throw std::invalid_argument("reconstruct_path: node out of range");
    if (!reachable(field.cost[static_cast<size_t>(t)])) return {};
    std::vector<NodeId> path;
    NodeId v = t;
    while (true) {
        path.push_back(v);
        if (static_cast<std::int64_t>(path.size()) > g.node_count())
            throw std::runtime_error("reconstruct_path: cycle in parent links");
        const ArcId p = field.parent_arc[static_cast<size_t>(v)];
        if (p == kNoArc) break;
        v = g.arc(p).tail;
    }
    std::reverse(path.begin(), path.end());
    return path;
}

/// A* from s to t with priority g + h(v, t). With a consistent evaluator
/// every node is settled at most once, and the result cost equals plain
/// Dijkstra's. Ties pop the smaller node id.
inline QueryResult astar(const Graph& g, NodeId s, NodeId t, const HeuristicEvaluator& h,
                         std::span<const double> weights = {}, SearchTrace* trace = nullptr) {
    if (!g.valid_node(s) || !g.valid_node(t))
        throw std::invalid_argument("astar: endpoint out of range");
    const auto n = static_cast<size_t>(g.node_count());
    std::vector<Cost> dist(n, kUnreachable);
    std::vector<ArcId> parent(n, kNoArc);
    std::vector<bool> closed(n, false);

    QueryResult result;
    detail::MinQueue queue;
    dist[static_cast<size_t>(s)] = 0.0;
    queue.push({h.estimate(s, t), s});
    while (!queue.empty()) {
        const auto [key, u] = queue.top();
        queue.pop();
        if (closed[static_cast<size_t>(u)]) continue;
        closed[static_cast<size_t>(u)] = true;
        ++result.settled_count;
        if (trace) {
            trace->settled.push_back(u);
            trace->keys.push_back(key);
        }
        if (u == t) {
            result.cost = dist[static_cast<size_t>(u)];
            NodeId v = t;
            while (true) {
                result.path.push_back(v);
                const ArcId p = parent[static_cast<size_t>(v)];
                if (p == kNoArc) break;
                v = g.arc(p).tail;
            }
            std::reverse(result.path.begin(), result.path.end());
            return result;
        }
        const auto [first, last] = g.out_arc_range(u);
        for (ArcId i = first; i < last; ++i) {
            const Arc& a = g.arc(i);
            if (closed[static_cast<size_t>(a.head)]) continue;
            const double nd = dist[static_cast<size_t>(u)] + detail::arc_weight(g, i, weights);
            if (nd < dist[static_cast<size_t>(a.head)]) {
                dist[static_cast<size_t>(a.head)] = nd;
                parent[static_cast<size_t>(a.head)] = i;
                ++result.relaxed_count;
                queue.push({nd + h.estimate(a.head, t), a.head});
            }
        }
    }
    return result;  // queue exhausted: t unreachable
}

/// Plain point-to-point Dijkstra: A* with the zero heuristic.
inline QueryResult dijkstra_point_to_point(const Graph& g, NodeId s, NodeId t,
                                           SearchTrace* trace = nullptr) {
    return astar(g, s, t, ZeroHeuristic{}, {}, trace);
}

}  // namespace fastpath

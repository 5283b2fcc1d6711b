#pragma once

// Test-only oracles, deliberately independent of the search kernels:
// all-pairs costs come from a plain Floyd-Warshall over the weight
// matrix, with next-hop reconstruction for optimal-path witnesses.

#include <vector>

#include "fastpath/generators.hpp"
#include "fastpath/graph.hpp"
#include "fastpath/heuristic.hpp"

namespace oracle {

using fastpath::Arc;
using fastpath::Cost;
using fastpath::Graph;
using fastpath::kUnreachable;
using fastpath::NodeId;
using fastpath::Position;

struct AllPairs {
    std::vector<std::vector<Cost>> cost;
    std::vector<std::vector<NodeId>> next;  // next hop on one optimal path, kNoNode if none

    Cost operator()(NodeId s, NodeId t) const {
        return cost[static_cast<size_t>(s)][static_cast<size_t>(t)];
    }

    std::vector<NodeId> path(NodeId s, NodeId t) const {
        if (!fastpath::reachable((*this)(s, t))) return {};
        std::vector<NodeId> p{s};
        while (p.back() != t) p.push_back(next[static_cast<size_t>(p.back())][static_cast<size_t>(t)]);
        return p;
    }
};

inline AllPairs all_pairs(const Graph& g) {
    const auto n = static_cast<size_t>(g.node_count());
    AllPairs ap;
    ap.cost.assign(n, std::vector<Cost>(n, kUnreachable));
    ap.next.assign(n, std::vector<NodeId>(n, fastpath::kNoNode));
    for (size_t v = 0; v < n; ++v) {
        ap.cost[v][v] = 0.0;
        ap.next[v][v] = static_cast<NodeId>(v);
    }
    for (const Arc& a : g.arcs()) {
        const auto u = static_cast<size_t>(a.tail), v = static_cast<size_t>(a.head);
        if (a.weight < ap.cost[u][v]) {
            ap.cost[u][v] = a.weight;
            ap.next[u][v] = a.head;
        }
    }
    for (size_t k = 0; k < n; ++k)
        for (size_t i = 0; i < n; ++i) {
            if (!fastpath::reachable(ap.cost[i][k])) continue;
            for (size_t j = 0; j < n; ++j) {
                const Cost through = ap.cost[i][k] + ap.cost[k][j];
                if (through < ap.cost[i][j]) {
                    ap.cost[i][j] = through;
                    ap.next[i][j] = ap.next[i][k];
                }
            }
        }
    return ap;
}

// Small fixture used across suites: 4 nodes in a diamond, mixed one-way
// weights so forward and reverse costs differ.
inline Graph diamond() {
    std::vector<Position> positions{{0, 0}, {1, 1}, {1, -1}, {2, 0}};
    std::vector<Arc> arcs{
        {0, 1, 1.0}, {1, 3, 1.0}, {0, 2, 2.5}, {2, 3, 2.5},
        {1, 0, 2.0}, {3, 2, 0.5}, {2, 0, 1.0},
    };
    return Graph::from_arcs(std::move(positions), std::move(arcs));
}

// Seeded random directed graph: arc probability 0.2, weights uniform
// (0, 10], positions uniform in [0, 100]^2.
inline Graph random_graph(std::int64_t n, std::uint64_t seed) {
    fastpath::Rng rng(seed);
    std::vector<Position> positions;
    positions.reserve(static_cast<size_t>(n));
    for (std::int64_t v = 0; v < n; ++v)
        positions.push_back({rng.uniform(0.0, 100.0), rng.uniform(0.0, 100.0)});
    std::vector<Arc> arcs;
    for (NodeId u = 0; u < n; ++u)
        for (NodeId v = 0; v < n; ++v) {
            if (u == v) continue;
            const double roll = rng.uniform01();
            const double weight = 10.0 * (1.0 - rng.uniform01());  // (0, 10]
            if (roll < 0.2) arcs.push_back({u, v, weight});
        }
    return Graph::from_arcs(std::move(positions), std::move(arcs));
}

// Exact evaluator backed by the oracle matrix; admissible and consistent
// by construction.
class PerfectHeuristic final : public fastpath::HeuristicEvaluator {
public:
    explicit PerfectHeuristic(const AllPairs& ap) : ap_(&ap) {}
    Cost estimate(NodeId v, NodeId t) const override { return (*ap_)(v, t); }

private:
    const AllPairs* ap_;
};

}  // namespace oracle

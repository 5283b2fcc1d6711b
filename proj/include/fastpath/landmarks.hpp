#pragma once

#include <future>
#include <span>
#include <vector>

#include "fastpath/search.hpp"

namespace fastpath {

/// Per-landmark cost tables in both directions:
/// from_landmark[i][v] = c(l_i, v), to_landmark[i][v] = c(v, l_i).
struct LandmarkTables {
    std::vector<NodeId> landmarks;
    std::vector<std::vector<Cost>> from_landmark;
    std::vector<std::vector<Cost>> to_landmark;

    /// max over landmarks of max(c(v,l) - c(t,l), c(l,t) - c(l,v), 0).
    /// Differences touching an unreachable table entry are skipped, which
    /// keeps the value a lower bound on disconnected graphs.
    Cost lower_bound(NodeId v, NodeId t) const {
        double best = 0.0;
        for (size_t i = 0; i < landmarks.size(); ++i) {
            const Cost to_v = to_landmark[i][static_cast<size_t>(v)];
            const Cost to_t = to_landmark[i][static_cast<size_t>(t)];
            const Cost from_v = from_landmark[i][static_cast<size_t>(v)];
            const Cost from_t = from_landmark[i][static_cast<size_t>(t)];
            if (reachable(to_v) && reachable(to_t)) best = std::max(best, to_v - to_t);
            if (reachable(from_t) && reachable(from_v)) best = std::max(best, from_t - from_v);
        }
        return best;
    }
};

/// Farthest-point sampling under symmetrized cost: the first landmark is
/// the node farthest from a seeded random start; each next one maximizes
/// the minimum cost to the landmarks chosen so far. Nodes unreachable
/// from every chosen landmark rank as infinitely far, so disconnected
/// graphs get landmarks in every component. Ties pick the smaller id.
inline std::vector<NodeId> select_landmarks(const Graph& g, std::int64_t k, std::uint64_t seed) {
    const std::int64_t n = g.node_count();
    if (k < 1) throw std::invalid_argument("select_landmarks: k must be >= 1");
    if (k > n) throw std::invalid_argument("select_landmarks: k exceeds node count");

    const Graph sym = symmetrize(g);
    Rng rng(seed);
    const NodeId start = rng.node(n);

    std::vector<Cost> min_cost = dijkstra_one_to_all(sym, start).cost;
    std::vector<bool> chosen(static_cast<size_t>(n), false);
    std::vector<NodeId> landmarks;
    landmarks.reserve(static_cast<size_t>(k));
    while (static_cast<std::int64_t>(landmarks.size()) < k) {
        NodeId best = kNoNode;
        for (NodeId v = 0; v < n; ++v) {
            if (chosen[static_cast<size_t>(v)]) continue;
            if (best == kNoNode || min_cost[static_cast<size_t>(v)] > min_cost[static_cast<size_t>(best)])
                best = v;
        }
        chosen[static_cast<size_t>(best)] = true;
        landmarks.push_back(best);
        const CostField field = dijkstra_one_to_all(sym, best);
        for (NodeId v = 0; v < n; ++v)
            min_cost[static_cast<size_t>(v)] =
                std::min(min_cost[static_cast<size_t>(v)], field.cost[static_cast<size_t>(v)]);
    }
    return landmarks;
}

/// One forward and one reverse single-source computation per landmark,
/// run as independent tasks.
inline LandmarkTables build_landmark_tables(const Graph& g, std::span<const NodeId> landmarks) {
    for (const NodeId l : landmarks)
        if (!g.valid_node(l)) throw std::invalid_argument("landmark out of range");
    const Graph rev = reverse(g);

    LandmarkTables tables;
    tables.landmarks.assign(landmarks.begin(), landmarks.end());
    tables.from_landmark.resize(landmarks.size());
    tables.to_landmark.resize(landmarks.size());

    std::vector<std::future<void>> tasks;
    tasks.reserve(landmarks.size());
    for (size_t i = 0; i < landmarks.size(); ++i) {
        tasks.push_back(std::async(std::launch::async, [&, i] {
            tables.from_landmark[i] = dijkstra_one_to_all(g, tables.landmarks[i]).cost;
            tables.to_landmark[i] = dijkstra_one_to_all(rev, tables.landmarks[i]).cost;
        }));
    }
    for (auto& t : tasks) t.get();
    return tables;
}

class LandmarkHeuristic final : public HeuristicEvaluator {
public:
    LandmarkHeuristic(const Graph& graph, const LandmarkTables& tables) : tables_(&tables) {
        if (!tables.from_landmark.empty() &&
            tables.from_landmark[0].size() != static_cast<size_t>(graph.node_count()))
            throw std::invalid_argument("landmark tables sized for a different graph");
    }

    Cost estimate(NodeId v, NodeId t) const override { return tables_->lower_bound(v, t); }

private:
    const LandmarkTables* tables_;
};

}  // namespace fastpath

#pragma once

#include <span>
#include <utility>
#include <vector>

#include "fastpath/search.hpp"

namespace fastpath {

/// k per-node embedding coordinates built from pivot pairs; the lower
/// bound between two nodes is the l1 distance of their coordinate rows.
/// Valid only for the undirected graph it was built from.
struct FastMapEmbedding {
    std::vector<std::pair<NodeId, NodeId>> pivot_pairs;
    std::vector<std::vector<double>> coords;

    Cost lower_bound(NodeId v, NodeId t) const {
        double sum = 0.0;
        for (const auto& c : coords)
            sum += std::abs(c[static_cast<size_t>(v)] - c[static_cast<size_t>(t)]);
        return sum;
    }
};

/// Clamp diagnostics from the residual-weight updates. Anything beyond
/// rounding noise (~1e-6) indicates a consistency bug upstream.
struct FastMapStats {
    double max_clamp = 0.0;
    std::int64_t clamped_arcs = 0;
};

/// Builds the embedding one coordinate at a time: find a far-apart pivot
/// pair on the residual graph (seeded start, pivot_iters rounds of
/// jumping to the farthest node), set f_i(v) = (c(a,v) - c(b,v)) / 2,
/// then shrink every residual arc weight by |f_i(u) - f_i(v)|, clamping
/// tiny negative results of rounding at zero. Refuses directed input.
inline FastMapEmbedding build_fastmap_embedding(const Graph& g, std::int64_t k,
                                                std::int64_t pivot_iters, std::uint64_t seed,
                                                FastMapStats* stats = nullptr) {
    if (k < 1) throw std::invalid_argument("fastmap: k must be >= 1");
    if (pivot_iters < 1) throw std::invalid_argument("fastmap: pivot_iters must be >= 1");
    if (g.node_count() < 1) throw std::invalid_argument("fastmap: empty graph");
    if (!is_symmetric(g))
        throw std::invalid_argument("fastmap: directed input (needs a symmetrized graph)");

    const auto n = static_cast<size_t>(g.node_count());
    std::vector<double> residual(static_cast<size_t>(g.arc_count()));
    for (ArcId i = 0; i < static_cast<ArcId>(g.arc_count()); ++i)
        residual[static_cast<size_t>(i)] = g.arc(i).weight;

    Rng rng(seed);
    FastMapEmbedding embedding;
    embedding.pivot_pairs.reserve(static_cast<size_t>(k));
    embedding.coords.reserve(static_cast<size_t>(k));

    auto farthest_from = [&](NodeId s) -> NodeId {
        const CostField field = dijkstra_one_to_all(g, s, residual);
        NodeId best = s;
        for (NodeId v = 0; v < g.node_count(); ++v) {
            const Cost c = field.cost[static_cast<size_t>(v)];
            if (reachable(c) && c > field.cost[static_cast<size_t>(best)]) best = v;
        }
        return best;
    };

    for (std::int64_t i = 0; i < k; ++i) {
        NodeId b = rng.node(g.node_count());
        NodeId a = kNoNode;
        for (std::int64_t round = 0; round < pivot_iters; ++round) {
            const NodeId candidate = farthest_from(b);
            if (candidate == a) break;  // oscillation converged
            a = b;
            b = candidate;
        }
        if (a == kNoNode) a = b;

        const std::vector<Cost> from_a = dijkstra_one_to_all(g, a, residual).cost;
        const std::vector<Cost> from_b = dijkstra_one_to_all(g, b, residual).cost;
        std::vector<double> coord(n, 0.0);
        for (size_t v = 0; v < n; ++v) {
            if (reachable(from_a[v]) && reachable(from_b[v]))
                coord[v] = 0.5 * (from_a[v] - from_b[v]);
        }
        for (ArcId arc = 0; arc < static_cast<ArcId>(g.arc_count()); ++arc) {
            const Arc& e = g.arc(arc);
            const double shrink =
                std::abs(coord[static_cast<size_t>(e.tail)] - coord[static_cast<size_t>(e.head)]);
            double next = residual[static_cast<size_t>(arc)] - shrink;
            if (next < 0.0) {
                if (stats) {
                    stats->max_clamp = std::max(stats->max_clamp, -next);
                    ++stats->clamped_arcs;
                }
                next = 0.0;
            }
            residual[static_cast<size_t>(arc)] = next;
        }
        embedding.pivot_pairs.emplace_back(a, b);
        embedding.coords.push_back(std::move(coord));
    }
    return embedding;
}

class FastMapHeuristic final : public HeuristicEvaluator {
public:
    FastMapHeuristic(const Graph& graph, const FastMapEmbedding& embedding)
        : embedding_(&embedding) {
        if (!embedding.coords.empty() &&
            embedding.coords[0].size() != static_cast<size_t>(graph.node_count()))
            throw std::invalid_argument("fastmap embedding sized for a different graph");
    }

    Cost estimate(NodeId v, NodeId t) const override { return embedding_->lower_bound(v, t); }

private:
    const FastMapEmbedding* embedding_;
};

}  // namespace fastpath

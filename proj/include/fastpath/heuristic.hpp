#pragma once

#include <algorithm>
#include <memory>

#include "fastpath/graph.hpp"

namespace fastpath {

/// Lower-bound estimator h(v, t) for the minimal cost from v to t,
/// evaluated in O(k) after preprocessing. Implementations guarantee
/// h(t, t) = 0 and h >= 0; every evaluator shipped here is admissible
/// and consistent on the graph it was built from.
class HeuristicEvaluator {
public:
    virtual ~HeuristicEvaluator() = default;
    virtual Cost estimate(NodeId v, NodeId t) const = 0;
};

class ZeroHeuristic final : public HeuristicEvaluator {
public:
    Cost estimate(NodeId, NodeId) const override { return 0.0; }
};

/// Planar straight-line distance divided by a speed scale. With scale =
/// max speed, the bound stays admissible for travel-time weights; scale
/// 1 suits Euclidean-length weights.
class EuclideanHeuristic final : public HeuristicEvaluator {
public:
    EuclideanHeuristic(const Graph& graph, double scale) : graph_(&graph), scale_(scale) {
        if (!(scale > 0.0)) throw std::invalid_argument("euclidean heuristic: scale must be > 0");
    }

    /// Largest scale that keeps the bound below every arc weight of g,
    /// i.e. the fastest observed speed. Falls back to an everywhere-zero
    /// bound (infinite scale) when g has a zero-weight arc of positive
    /// length or no arcs at all.
    static EuclideanHeuristic admissible_for(const Graph& g) {
        double scale = 0.0;
        for (const Arc& a : g.arcs()) {
            const double len = euclidean_distance(g.position(a.tail), g.position(a.head));
            if (len <= 0.0) continue;
            if (a.weight <= 0.0) {
                scale = kUnreachable;
                break;
            }
            scale = std::max(scale, len / a.weight);
        }
        if (scale == 0.0) scale = kUnreachable;
        return EuclideanHeuristic(g, scale);
    }

    Cost estimate(NodeId v, NodeId t) const override {
        if (scale_ == kUnreachable) return 0.0;
        return euclidean_distance(graph_->position(v), graph_->position(t)) / scale_;
    }

    double scale() const noexcept { return scale_; }

private:
    const Graph* graph_;
    double scale_;
};

}  // namespace fastpath

#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fastpath/core.hpp"

namespace fastpath {

/// Immutable directed weighted graph with planar vertex positions.
///
/// Arcs are stored sorted by (tail, head) with duplicates collapsed to the
/// minimum weight and self-loops dropped, so the arc list is a canonical
/// representation of the graph. Safe for any number of concurrent readers.
class Graph {
public:
    Graph() = default;

    /// Builds a graph from raw positions and arcs. Duplicate (tail, head)
    /// arcs keep the minimum weight; self-loops are dropped. Throws
    /// std::invalid_argument on out-of-range endpoints, negative or
    /// non-finite weights, or non-finite positions.
    static Graph from_arcs(std::vector<Position> positions, std::vector<Arc> arcs) {
        const auto n = static_cast<std::int64_t>(positions.size());
        for (const Position& p : positions) {
            if (!std::isfinite(p.x) || !std::isfinite(p.y))
                throw std::invalid_argument("graph: non-finite node position");
        }
        std::vector<Arc> kept;
        kept.reserve(arcs.size());
        for (const Arc& a : arcs) {
            if (a.tail < 0 || a.tail >= n || a.head < 0 || a.head >= n)
                throw std::invalid_argument("graph: arc endpoint out of range");
            if (!(a.weight >= 0.0) || !std::isfinite(a.weight))
                throw std::invalid_argument("graph: arc weight must be finite and >= 0");
            if (a.tail == a.head) continue;
            kept.push_back(a);
        }
        std::sort(kept.begin(), kept.end(), [](const Arc& l, const Arc& r) {
            if (l.tail != r.tail) return l.tail < r.tail;
            if (l.head != r.head) return l.head < r.head;
            return l.weight < r.weight;
        });
        std::vector<Arc> unique;
        unique.reserve(kept.size());
        for (const Arc& a : kept) {
            if (!unique.empty() && unique.back().tail == a.tail && unique.back().head == a.head)
                continue;  // sorted by weight within (tail, head): first one is the minimum
            unique.push_back(a);
        }

        Graph g;
        g.positions_ = std::move(positions);
        g.arcs_ = std::move(unique);
        g.build_adjacency();
        g.build_bbox();
        return g;
    }

    std::int64_t node_count() const noexcept { return static_cast<std::int64_t>(positions_.size()); }
    std::int64_t arc_count() const noexcept { return static_cast<std::int64_t>(arcs_.size()); }

    const Position& position(NodeId v) const { return positions_[static_cast<size_t>(v)]; }
    std::span<const Position> positions() const noexcept { return positions_; }

    const Arc& arc(ArcId i) const { return arcs_[static_cast<size_t>(i)]; }
    std::span<const Arc> arcs() const noexcept { return arcs_; }

    /// Contiguous [first, last) range of arc ids with tail v.
    std::pair<ArcId, ArcId> out_arc_range(NodeId v) const {
        return {out_begin_[static_cast<size_t>(v)], out_begin_[static_cast<size_t>(v) + 1]};
    }

    /// Arc ids with head v, ordered by tail.
    std::span<const ArcId> in_arcs(NodeId v) const {
        const auto b = static_cast<size_t>(in_begin_[static_cast<size_t>(v)]);
        const auto e = static_cast<size_t>(in_begin_[static_cast<size_t>(v) + 1]);
        return {in_arcs_.data() + b, e - b};
    }

    /// Arc id for (tail, head), or kNoArc.
    ArcId find_arc(NodeId tail, NodeId head) const {
        auto [b, e] = out_arc_range(tail);
        for (ArcId i = b; i < e; ++i)
            if (arcs_[static_cast<size_t>(i)].head == head) return i;
        return kNoArc;
    }

    const BoundingBox& bounding_box() const noexcept { return bbox_; }

    bool valid_node(NodeId v) const noexcept { return v >= 0 && v < node_count(); }

private:
    void build_adjacency() {
        const auto n = static_cast<size_t>(node_count());
        out_begin_.assign(n + 1, 0);
        in_begin_.assign(n + 1, 0);
        for (const Arc& a : arcs_) {
            ++out_begin_[static_cast<size_t>(a.tail) + 1];
            ++in_begin_[static_cast<size_t>(a.head) + 1];
        }
        for (size_t v = 0; v < n; ++v) {
            out_begin_[v + 1] += out_begin_[v];
            in_begin_[v + 1] += in_begin_[v];
        }
        in_arcs_.resize(arcs_.size());
        std::vector<ArcId> cursor(in_begin_.begin(), in_begin_.end() - 1);
        // arcs_ is sorted by (tail, head), so filling in tail order leaves
        // each in-adjacency list sorted by tail.
        for (ArcId i = 0; i < static_cast<ArcId>(arcs_.size()); ++i) {
            const auto h = static_cast<size_t>(arcs_[static_cast<size_t>(i)].head);
            in_arcs_[static_cast<size_t>(cursor[h]++)] = i;
        }
    }

    void build_bbox() {
        bbox_ = {};
        if (positions_.empty()) return;
        bbox_ = {positions_[0].x, positions_[0].y, positions_[0].x, positions_[0].y};
        for (const Position& p : positions_) {
            bbox_.min_x = std::min(bbox_.min_x, p.x);
            bbox_.min_y = std::min(bbox_.min_y, p.y);
            bbox_.max_x = std::max(bbox_.max_x, p.x);
            bbox_.max_y = std::max(bbox_.max_y, p.y);
        }
    }

    std::vector<Position> positions_;
    std::vector<Arc> arcs_;
    std::vector<ArcId> out_begin_;
    std::vector<ArcId> in_begin_;
    std::vector<ArcId> in_arcs_;
    BoundingBox bbox_;
};

/// Same nodes, every arc (u, v, w) turned into (v, u, w).
inline Graph reverse(const Graph& g) {
    std::vector<Arc> rev;
    rev.reserve(static_cast<size_t>(g.arc_count()));
    for (const Arc& a : g.arcs()) rev.push_back({a.head, a.tail, a.weight});
    return Graph::from_arcs(std::vector<Position>(g.positions().begin(), g.positions().end()),
                            std::move(rev));
}

/// Undirected version: for each node pair with at least one arc, both
/// directions with the minimum weight seen in either direction.
inline Graph symmetrize(const Graph& g) {
    std::unordered_map<std::uint64_t, double> min_weight;
    min_weight.reserve(static_cast<size_t>(g.arc_count()));
    for (const Arc& a : g.arcs()) {
        const auto lo = static_cast<std::uint64_t>(std::min(a.tail, a.head));
        const auto hi = static_cast<std::uint64_t>(std::max(a.tail, a.head));
        const std::uint64_t key = (lo << 32) | hi;
        auto [it, inserted] = min_weight.try_emplace(key, a.weight);
        if (!inserted) it->second = std::min(it->second, a.weight);
    }
    std::vector<Arc> arcs;
    arcs.reserve(min_weight.size() * 2);
    for (const auto& [key, w] : min_weight) {
        const auto u = static_cast<NodeId>(key >> 32);
        const auto v = static_cast<NodeId>(key & 0xffffffffu);
        arcs.push_back({u, v, w});
        arcs.push_back({v, u, w});
    }
    return Graph::from_arcs(std::vector<Position>(g.positions().begin(), g.positions().end()),
                            std::move(arcs));
}

/// True when every arc has a reverse arc of equal weight.
inline bool is_symmetric(const Graph& g) {
    for (ArcId i = 0; i < static_cast<ArcId>(g.arc_count()); ++i) {
        const Arc& a = g.arc(i);
        const ArcId r = g.find_arc(a.head, a.tail);
        if (r == kNoArc || g.arc(r).weight != a.weight) return false;
    }
    return true;
}

/// Nearest node within max_snap planar units of p, ties to the smaller id.
inline std::optional<NodeId> snap(const Graph& g, const Position& p, double max_snap) {
    if (max_snap < 0.0) throw std::invalid_argument("snap: max_snap must be >= 0");
    std::optional<NodeId> best;
    double best_d2 = max_snap * max_snap;
    for (NodeId v = 0; v < g.node_count(); ++v) {
        const Position& q = g.position(v);
        const double dx = q.x - p.x, dy = q.y - p.y;
        const double d2 = dx * dx + dy * dy;
        if (d2 < best_d2 || (d2 == best_d2 && !best)) {
            best = v;
            best_d2 = d2;
        }
    }
    return best;
}

}  // namespace fastpath

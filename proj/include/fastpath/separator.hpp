#pragma once

#include <cstdio>
#include <future>
#include <ostream>
#include <span>
#include <vector>

#include "fastpath/search.hpp"

namespace fastpath {

/// Piecewise-linear cut through the plane. The separator side rule is
/// fixed: the vertex on the left of the traversal direction, for every
/// arc whose endpoints fall on opposite sides. Points exactly on the
/// line count as left. The polyline should extend beyond the graph
/// bounding box so it slices the plane in two.
struct PolylineSpec {
    std::vector<Position> points;
};

struct Separator {
    std::vector<NodeId> vertices;  // sorted, unique
};

inline constexpr std::int32_t kSeparatorLabel = -1;

/// Undirected connected-component labels after removing all arcs
/// incident to the separator; separator vertices carry kSeparatorLabel.
/// Labels are assigned in ascending order of smallest contained node id.
struct ComponentLabels {
    std::vector<std::int32_t> label;
    std::int32_t component_count = 0;
};

struct SeparatorReport {
    bool valid = false;
    std::int64_t crossing_arcs = 0;  // arcs joining two distinct non-separator labels
    std::vector<std::int64_t> component_sizes;
    Cost cost_diameter = 0.0;  // max pairwise symmetrized cost within the separator
    NodeId diameter_a = kNoNode, diameter_b = kNoNode;
    bool diameter_exact = true;
};

namespace detail {

inline double cross(double ax, double ay, double bx, double by) { return ax * by - ay * bx; }

// Signed side of p relative to the polyline: > 0 left of the traversal
// direction, < 0 right, 0 on the line. Uses the closest segment; at a
// shared joint the two adjacent directions are blended so the test stays
// consistent around corners.
inline double polyline_side(const PolylineSpec& line, const Position& p) {
    const auto& pts = line.points;
    const size_t segs = pts.size() - 1;
    size_t best_seg = 0;
    double best_t = 0.0, best_d2 = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < segs; ++i) {
        const double dx = pts[i + 1].x - pts[i].x, dy = pts[i + 1].y - pts[i].y;
        const double len2 = dx * dx + dy * dy;
        double t = ((p.x - pts[i].x) * dx + (p.y - pts[i].y) * dy) / len2;
        t = std::clamp(t, 0.0, 1.0);
        const double cx = pts[i].x + t * dx, cy = pts[i].y + t * dy;
        const double d2 = (p.x - cx) * (p.x - cx) + (p.y - cy) * (p.y - cy);
        if (d2 < best_d2) {
            best_d2 = d2;
            best_seg = i;
            best_t = t;
        }
    }
    auto unit = [&](size_t i, double& ux, double& uy) {
        ux = pts[i + 1].x - pts[i].x;
        uy = pts[i + 1].y - pts[i].y;
        const double len = std::hypot(ux, uy);
        ux /= len;
        uy /= len;
    };
    double dx, dy;
    unit(best_seg, dx, dy);
    if (best_t >= 1.0 && best_seg + 1 < segs) {
        double nx, ny;
        unit(best_seg + 1, nx, ny);
        dx += nx;
        dy += ny;
    } else if (best_t <= 0.0 && best_seg > 0) {
        double nx, ny;
        unit(best_seg - 1, nx, ny);
        dx += nx;
        dy += ny;
    }
    const double anchor_x = pts[best_seg].x + best_t * (pts[best_seg + 1].x - pts[best_seg].x);
    const double anchor_y = pts[best_seg].y + best_t * (pts[best_seg + 1].y - pts[best_seg].y);
    return cross(dx, dy, p.x - anchor_x, p.y - anchor_y);
}

}  // namespace detail

/// Vertices on the left side of every arc the polyline crosses. May be
/// empty when the polyline misses the graph; downstream validation
/// rejects empty separators.
inline Separator separator_from_polyline(const Graph& g, const PolylineSpec& spec) {
    if (spec.points.size() < 2)
        throw std::invalid_argument("polyline needs at least two points");
    for (size_t i = 0; i + 1 < spec.points.size(); ++i) {
        if (spec.points[i].x == spec.points[i + 1].x && spec.points[i].y == spec.points[i + 1].y)
            throw std::invalid_argument("polyline has a zero-length segment");
    }
    const auto n = static_cast<size_t>(g.node_count());
    std::vector<char> left(n);
    for (NodeId v = 0; v < g.node_count(); ++v)
        left[static_cast<size_t>(v)] = detail::polyline_side(spec, g.position(v)) >= 0.0;

    std::vector<char> in_sep(n, 0);
    for (const Arc& a : g.arcs()) {
        if (left[static_cast<size_t>(a.tail)] != left[static_cast<size_t>(a.head)]) {
            const NodeId keep = left[static_cast<size_t>(a.tail)] ? a.tail : a.head;
            in_sep[static_cast<size_t>(keep)] = 1;
        }
    }
    Separator s;
    for (NodeId v = 0; v < g.node_count(); ++v)
        if (in_sep[static_cast<size_t>(v)]) s.vertices.push_back(v);
    return s;
}

/// count_x vertical plus count_y horizontal lines, equally spaced across
/// the interior of the bounding box and extended one unit beyond it.
inline std::vector<PolylineSpec> axis_cuts(const Graph& g, std::int64_t count_x,
                                           std::int64_t count_y) {
    if (count_x < 0 || count_y < 0) throw std::invalid_argument("axis_cuts: negative count");
    const BoundingBox& bb = g.bounding_box();
    std::vector<PolylineSpec> cuts;
    cuts.reserve(static_cast<size_t>(count_x + count_y));
    for (std::int64_t j = 1; j <= count_x; ++j) {
        const double x = bb.min_x + bb.width() * static_cast<double>(j) / static_cast<double>(count_x + 1);
        cuts.push_back({{{x, bb.min_y - 1.0}, {x, bb.max_y + 1.0}}});
    }
    for (std::int64_t j = 1; j <= count_y; ++j) {
        const double y = bb.min_y + bb.height() * static_cast<double>(j) / static_cast<double>(count_y + 1);
        cuts.push_back({{{bb.min_x - 1.0, y}, {bb.max_x + 1.0, y}}});
    }
    return cuts;
}

/// Flood fill ignoring arc direction, with every arc incident to the
/// separator removed.
inline ComponentLabels label_components(const Graph& g, const Separator& s) {
    const auto n = static_cast<size_t>(g.node_count());
    ComponentLabels result;
    result.label.assign(n, kSeparatorLabel - 1);
    for (const NodeId v : s.vertices) {
        if (!g.valid_node(v)) throw std::invalid_argument("separator vertex out of range");
        result.label[static_cast<size_t>(v)] = kSeparatorLabel;
    }
    std::vector<NodeId> stack;
    std::int32_t next = 0;
    for (NodeId v = 0; v < g.node_count(); ++v) {
        if (result.label[static_cast<size_t>(v)] != kSeparatorLabel - 1) continue;
        const std::int32_t current = next++;
        result.label[static_cast<size_t>(v)] = current;
        stack.assign(1, v);
        while (!stack.empty()) {
            const NodeId u = stack.back();
            stack.pop_back();
            auto visit = [&](NodeId w) {
                if (result.label[static_cast<size_t>(w)] == kSeparatorLabel - 1) {
                    result.label[static_cast<size_t>(w)] = current;
                    stack.push_back(w);
                }
            };
            const auto [first, last] = g.out_arc_range(u);
            for (ArcId i = first; i < last; ++i) visit(g.arc(i).head);
            for (const ArcId i : g.in_arcs(u)) visit(g.arc(i).tail);
        }
    }
    result.component_count = next;
    return result;
}

/// Checks the labels against the graph and measures the separator's cost
/// diameter on the symmetrized graph. Exact up to 512 separator
/// vertices; beyond that the diameter is taken over an evenly spaced
/// sample of sources and flagged approximate. A separator is reported
/// invalid when it is empty, when any arc joins two distinct components
/// (possible only with stale or externally produced labels), or when
/// only one component remains (it separates nothing).
inline SeparatorReport validate_separator(const Graph& g, const Separator& s,
                                          const ComponentLabels& labels) {
    SeparatorReport report;
    std::int32_t max_label = labels.component_count - 1;
    for (const std::int32_t l : labels.label) max_label = std::max(max_label, l);
    report.component_sizes.assign(static_cast<size_t>(max_label + 1), 0);
    for (const std::int32_t l : labels.label)
        if (l != kSeparatorLabel) ++report.component_sizes[static_cast<size_t>(l)];
    for (const Arc& a : g.arcs()) {
        const std::int32_t lt = labels.label[static_cast<size_t>(a.tail)];
        const std::int32_t lh = labels.label[static_cast<size_t>(a.head)];
        if (lt != kSeparatorLabel && lh != kSeparatorLabel && lt != lh) ++report.crossing_arcs;
    }

    if (!s.vertices.empty()) {
        const Graph sym = symmetrize(g);
        constexpr size_t kExactLimit = 512;
        std::vector<NodeId> sources = s.vertices;
        if (sources.size() > kExactLimit) {
            report.diameter_exact = false;
            std::vector<NodeId> sample;
            sample.reserve(kExactLimit);
            for (size_t i = 0; i < kExactLimit; ++i)
                sample.push_back(sources[i * sources.size() / kExactLimit]);
            sources.swap(sample);
        }
        report.diameter_a = report.diameter_b = sources.front();
        for (const NodeId u : sources) {
            const CostField field = dijkstra_one_to_all(sym, u);
            for (const NodeId v : s.vertices) {
                const Cost c = field.cost[static_cast<size_t>(v)];
                if (c > report.cost_diameter) {
                    report.cost_diameter = c;
                    report.diameter_a = u;
                    report.diameter_b = v;
                }
            }
        }
    }
    report.valid =
        !s.vertices.empty() && report.crossing_arcs == 0 && labels.component_count != 1;
    return report;
}

/// Preprocessed data for one separator: both one-sided cost fields plus
/// the component labels used to pick the query formula.
struct SeparatorFields {
    Separator separator;
    ComponentLabels labels;
    std::vector<Cost> to_sep;    // c(v, S), computed on the reversed graph
    std::vector<Cost> from_sep;  // c(S, v)
};

struct SeparatorSet {
    std::vector<SeparatorFields> separators;

    /// max over separators of the two-case bound: nodes in the same
    /// component use max(0, c(v,S) - c(t,S), c(S,t) - c(S,v)) with
    /// unreachable entries skipped; endpoints in different components
    /// (or on the separator itself) use c(v,S) + c(S,t), which stays a
    /// lower bound because every such path must touch the separator.
    Cost lower_bound(NodeId v, NodeId t) const {
        double best = 0.0;
        for (const SeparatorFields& f : separators) {
            const std::int32_t lv = f.labels.label[static_cast<size_t>(v)];
            const std::int32_t lt = f.labels.label[static_cast<size_t>(t)];
            const Cost to_v = f.to_sep[static_cast<size_t>(v)];
            const Cost to_t = f.to_sep[static_cast<size_t>(t)];
            const Cost from_v = f.from_sep[static_cast<size_t>(v)];
            const Cost from_t = f.from_sep[static_cast<size_t>(t)];
            if (lv == lt && lv != kSeparatorLabel) {
                if (reachable(to_v) && reachable(to_t)) best = std::max(best, to_v - to_t);
                if (reachable(from_t) && reachable(from_v)) best = std::max(best, from_t - from_v);
            } else {
                const Cost cross_bound = to_v + from_t;
                if (cross_bound > best) best = cross_bound;
            }
        }
        return best;
    }
};

/// Two multi-source computations (forward and on the reversed graph) and
/// one labeling per separator, run as independent tasks. Throws on an
/// empty separator or one whose labels expose crossing arcs.
inline SeparatorSet build_separator_fields(const Graph& g, std::span<const Separator> separators) {
    for (const Separator& s : separators) {
        if (s.vertices.empty()) throw std::invalid_argument("empty separator");
        for (const NodeId v : s.vertices)
            if (!g.valid_node(v)) throw std::invalid_argument("separator vertex out of range");
    }
    const Graph rev = reverse(g);
    SeparatorSet set;
    set.separators.resize(separators.size());

    std::vector<std::future<void>> tasks;
    tasks.reserve(separators.size());
    for (size_t i = 0; i < separators.size(); ++i) {
        tasks.push_back(std::async(std::launch::async, [&, i] {
            SeparatorFields& f = set.separators[i];
            f.separator = separators[i];
            f.labels = label_components(g, f.separator);
            f.from_sep = multi_source_dijkstra(g, f.separator.vertices).cost;
            f.to_sep = multi_source_dijkstra(rev, f.separator.vertices).cost;
        }));
    }
    for (auto& t : tasks) t.get();

    for (const SeparatorFields& f : set.separators) {
        for (const Arc& a : g.arcs()) {
            const std::int32_t lt = f.labels.label[static_cast<size_t>(a.tail)];
            const std::int32_t lh = f.labels.label[static_cast<size_t>(a.head)];
            if (lt != kSeparatorLabel && lh != kSeparatorLabel && lt != lh)
                throw std::invalid_argument("invalid separator: crossing arcs remain");
        }
    }
    return set;
}

class SeparatorHeuristic final : public HeuristicEvaluator {
public:
    SeparatorHeuristic(const Graph& graph, const SeparatorSet& set) : set_(&set) {
        if (!set.separators.empty() &&
            set.separators[0].to_sep.size() != static_cast<size_t>(graph.node_count()))
            throw std::invalid_argument("separator fields sized for a different graph");
    }

    Cost estimate(NodeId v, NodeId t) const override { return set_->lower_bound(v, t); }

private:
    const SeparatorSet* set_;
};

/// Distance to the separator with opposite signs on the two components;
/// zero on the separator itself. Defined for symmetric graphs split into
/// exactly two components (the lower label gets the positive sign).
struct SignedField {
    std::vector<double> value;
};

inline SignedField signed_field(const Graph& g, const Separator& s,
                                const ComponentLabels& labels) {
    if (labels.component_count != 2)
        throw std::invalid_argument("signed field needs exactly two components");
    if (!is_symmetric(g))
        throw std::invalid_argument("signed field needs a symmetric graph");
    const std::vector<Cost> dist = multi_source_dijkstra(g, s.vertices).cost;
    SignedField field;
    field.value.resize(static_cast<size_t>(g.node_count()), 0.0);
    for (NodeId v = 0; v < g.node_count(); ++v) {
        const std::int32_t l = labels.label[static_cast<size_t>(v)];
        if (l == kSeparatorLabel) continue;
        const double sign = (l == 0) ? 1.0 : -1.0;
        field.value[static_cast<size_t>(v)] = sign * dist[static_cast<size_t>(v)];
    }
    return field;
}

/// CSV export for external plotting: node id (1-based), x, y, value.
inline void write_signed_field_csv(const Graph& g, const SignedField& field, std::ostream& out) {
    out << "node_id,x,y,signed_value\n";
    char buf[128];
    for (NodeId v = 0; v < g.node_count(); ++v) {
        const Position& p = g.position(v);
        std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g\n", v + 1, p.x, p.y,
                      field.value[static_cast<size_t>(v)]);
        out << buf;
    }
}

}  // namespace fastpath

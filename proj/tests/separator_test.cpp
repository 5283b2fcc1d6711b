#include <doctest.h>

#include "fastpath/separator.hpp"
#include "oracle.hpp"

using namespace fastpath;

namespace {

PolylineSpec vertical_line(double x, double y_lo = -10.0, double y_hi = 10.0) {
    return {{{x, y_lo}, {x, y_hi}}};
}

}  // namespace

TEST_CASE("separator from a vertical line through the diamond") {
    const Graph d = oracle::diamond();
    const Separator s = separator_from_polyline(d, vertical_line(1.5));
    CHECK(s.vertices == std::vector<NodeId>{1, 2});  // left endpoints of the crossed arcs

    const Separator miss = separator_from_polyline(d, vertical_line(100.0));
    CHECK(miss.vertices.empty());
    const ComponentLabels miss_labels = label_components(d, miss);
    CHECK(!validate_separator(d, miss, miss_labels).valid);

    CHECK_THROWS_AS(separator_from_polyline(d, PolylineSpec{{{0, 0}}}), std::invalid_argument);
    CHECK_THROWS_AS(separator_from_polyline(d, PolylineSpec{{{0, 0}, {0, 0}}}),
                    std::invalid_argument);
}

TEST_CASE("line through a unit grid picks the column on its left") {
    const Graph g = generate_grid(3, 3, {1.0, 1.0}, 0.0, 0);
    const Separator s = separator_from_polyline(g, vertical_line(0.5));
    CHECK(s.vertices == std::vector<NodeId>{0, 3, 6});  // the x = 0 column
}

TEST_CASE("axis cuts") {
    std::vector<Position> pos{{0, 0}, {2, 2}};
    const Graph g = Graph::from_arcs(pos, {{0, 1, 1.0}});
    SUBCASE("single vertical cut lands on the bbox midline") {
        const std::vector<PolylineSpec> cuts = axis_cuts(g, 1, 0);
        REQUIRE(cuts.size() == 1);
        CHECK(cuts[0].points[0].x == doctest::Approx(1.0));
        CHECK(cuts[0].points[1].x == doctest::Approx(1.0));
        CHECK(cuts[0].points[0].y < 0.0);
        CHECK(cuts[0].points[1].y > 2.0);
    }
    SUBCASE("zero counts mean no cuts") { CHECK(axis_cuts(g, 0, 0).empty()); }
    SUBCASE("negative counts are rejected") {
        CHECK_THROWS_AS(axis_cuts(g, -1, 0), std::invalid_argument);
    }
    SUBCASE("every cut of a 64x64 grid validates") {
        const Graph grid = generate_grid(64, 64, {0.5, 2.0}, 0.1, 1);
        const std::vector<PolylineSpec> cuts = axis_cuts(grid, 3, 3);
        REQUIRE(cuts.size() == 6);
        for (const PolylineSpec& cut : cuts) {
            const Separator s = separator_from_polyline(grid, cut);
            const ComponentLabels labels = label_components(grid, s);
            const SeparatorReport report = validate_separator(grid, s, labels);
            CHECK(report.valid);
            CHECK(report.crossing_arcs == 0);
            CHECK(report.component_sizes.size() == 2);
        }
    }
}

TEST_CASE("component labeling") {
    const Graph d = oracle::diamond();
    SUBCASE("diamond split by {1,2}") {
        const ComponentLabels labels = label_components(d, {{1, 2}});
        CHECK(labels.component_count == 2);
        CHECK(labels.label == std::vector<std::int32_t>{0, kSeparatorLabel, kSeparatorLabel, 1});
    }
    SUBCASE("all nodes in the separator leaves zero components") {
        const ComponentLabels labels = label_components(d, {{0, 1, 2, 3}});
        CHECK(labels.component_count == 0);
        for (const std::int32_t l : labels.label) CHECK(l == kSeparatorLabel);
    }
    SUBCASE("gate nodes split the bottleneck into its two blocks") {
        const BottleneckGraph b = generate_bottleneck(8, 2, {1.0, 1.0}, 4);
        const ComponentLabels labels = label_components(b.graph, {b.gate_nodes});
        CHECK(labels.component_count == 2);
        std::int64_t left = 0, right = 0;
        for (NodeId v = 0; v < b.graph.node_count(); ++v) {
            if (labels.label[static_cast<size_t>(v)] == 0) ++left;
            if (labels.label[static_cast<size_t>(v)] == 1) ++right;
        }
        CHECK(left == 8 * 8 - static_cast<std::int64_t>(b.gate_nodes.size()));
        CHECK(right == 8 * 8);
    }
    SUBCASE("deterministic") {
        const ComponentLabels a = label_components(d, {{1, 2}});
        const ComponentLabels b = label_components(d, {{1, 2}});
        CHECK(a.label == b.label);
    }
}

TEST_CASE("separator validation report") {
    const Graph d = oracle::diamond();
    SUBCASE("valid split") {
        const Separator s{{1, 2}};
        const SeparatorReport report = validate_separator(d, s, label_components(d, s));
        CHECK(report.valid);
        CHECK(report.crossing_arcs == 0);
        CHECK(report.component_sizes == std::vector<std::int64_t>{1, 1});
        CHECK(report.cost_diameter == doctest::Approx(1.5));  // symmetrized c(1,2)
        CHECK(report.diameter_exact);
    }
    SUBCASE("single vertex separates nothing") {
        const Separator s{{1}};
        const ComponentLabels labels = label_components(d, s);
        CHECK(labels.component_count == 1);  // 0-2-3 stay connected
        CHECK(!validate_separator(d, s, labels).valid);
    }
    SUBCASE("whole vertex set is trivially valid") {
        const Separator s{{0, 1, 2, 3}};
        const SeparatorReport report = validate_separator(d, s, label_components(d, s));
        CHECK(report.valid);
        CHECK(report.cost_diameter == doctest::Approx(1.5));  // sym diameter of the full set
    }
    SUBCASE("stale labels expose crossing arcs") {
        // Labels computed for {1,2} checked against the smaller {1}:
        // arcs between the old components now cross.
        const ComponentLabels stale = label_components(d, {{1, 2}});
        ComponentLabels relabeled = stale;
        relabeled.label[2] = 0;  // pretend 2 left the separator into component 0
        const SeparatorReport report = validate_separator(d, {{1}}, relabeled);
        CHECK(report.crossing_arcs > 0);
        CHECK(!report.valid);
    }
}

TEST_CASE("separator fields on the diamond") {
    const Graph d = oracle::diamond();
    const std::vector<Separator> seps{{{1, 2}}};
    const SeparatorSet set = build_separator_fields(d, seps);
    REQUIRE(set.separators.size() == 1);
    const SeparatorFields& f = set.separators[0];
    CHECK(f.from_sep == std::vector<Cost>{1.0, 0.0, 0.0, 1.0});
    CHECK(f.to_sep == std::vector<Cost>{1.0, 0.0, 0.0, 0.5});

    SUBCASE("cross-component bound is exact through the bottleneck") {
        CHECK(set.lower_bound(0, 3) == doctest::Approx(2.0));
        CHECK(set.lower_bound(3, 0) == doctest::Approx(1.5));
        CHECK(set.lower_bound(2, 2) == 0.0);
        CHECK(set.lower_bound(1, 2) == 0.0);  // both on the separator
    }
    SUBCASE("empty separator is rejected") {
        const std::vector<Separator> empty{{{}}};
        CHECK_THROWS_AS(build_separator_fields(d, empty), std::invalid_argument);
    }
}

TEST_CASE("separator bound is admissible and consistent") {
    for (std::uint64_t seed = 400; seed < 410; ++seed) {
        const Graph g = oracle::random_graph(30, seed);
        Rng rng(seed + 1);
        std::vector<Separator> seps;
        // one random vertex-list separator plus one geometric cut when it bites
        Separator random_sep;
        random_sep.vertices = {rng.node(g.node_count())};
        seps.push_back(random_sep);
        const Separator cut = separator_from_polyline(
            g, vertical_line(50.0, -10.0, 110.0));
        if (!cut.vertices.empty()) seps.push_back(cut);

        const SeparatorSet set = build_separator_fields(g, seps);
        const auto ap = oracle::all_pairs(g);
        for (NodeId v = 0; v < g.node_count(); ++v) {
            CHECK(set.lower_bound(v, v) == 0.0);
            for (NodeId t = 0; t < g.node_count(); ++t) {
                const Cost h = set.lower_bound(v, t);
                CHECK(h >= 0.0);
                if (reachable(ap(v, t)))
                    CHECK(h <= ap(v, t) + 1e-9 * std::max(1.0, ap(v, t)));
            }
        }
        for (const Arc& a : g.arcs())
            for (NodeId t = 0; t < g.node_count(); t += 3)
                CHECK(set.lower_bound(a.tail, t) <=
                      a.weight + set.lower_bound(a.head, t) + 1e-9);
    }
}

TEST_CASE("cross-component slack is bounded by the separator cost diameter") {
    const Graph g = symmetrize(generate_grid(8, 8, {0.5, 2.0}, 0.2, 5));
    const Separator s = separator_from_polyline(g, vertical_line(3.5, -10, 20));
    const ComponentLabels labels = label_components(g, s);
    const SeparatorReport report = validate_separator(g, s, labels);
    REQUIRE(report.valid);
    const SeparatorSet set = build_separator_fields(g, std::vector<Separator>{s});
    const auto ap = oracle::all_pairs(g);
    for (NodeId v = 0; v < g.node_count(); ++v)
        for (NodeId t = 0; t < g.node_count(); ++t) {
            const std::int32_t lv = labels.label[static_cast<size_t>(v)];
            const std::int32_t lt = labels.label[static_cast<size_t>(t)];
            if (lv == kSeparatorLabel || lt == kSeparatorLabel || lv == lt) continue;
            if (!reachable(ap(v, t))) continue;
            CHECK(ap(v, t) - set.lower_bound(v, t) <=
                  report.cost_diameter + 1e-9 * std::max(1.0, report.cost_diameter));
        }
}

TEST_CASE("separator fields equal the virtual-vertex construction") {
    for (std::uint64_t seed = 420; seed < 426; ++seed) {
        const Graph g = oracle::random_graph(25, seed);
        Rng rng(seed * 3 + 1);
        Separator s;
        for (int i = 0; i < 3; ++i) s.vertices.push_back(rng.node(g.node_count()));
        std::sort(s.vertices.begin(), s.vertices.end());
        s.vertices.erase(std::unique(s.vertices.begin(), s.vertices.end()), s.vertices.end());

        const SeparatorSet set = build_separator_fields(g, std::vector<Separator>{s});

        // Literal construction: a fresh vertex joined by zero-weight arcs --
        // outgoing for the from-field, incoming for the to-field.
        std::vector<Position> pos(g.positions().begin(), g.positions().end());
        pos.push_back({0, 0});
        const auto virtual_vertex = static_cast<NodeId>(g.node_count());
        std::vector<Arc> fwd_arcs(g.arcs().begin(), g.arcs().end());
        std::vector<Arc> bwd_arcs(g.arcs().begin(), g.arcs().end());
        for (const NodeId v : s.vertices) {
            fwd_arcs.push_back({virtual_vertex, v, 0.0});
            bwd_arcs.push_back({v, virtual_vertex, 0.0});
        }
        const Graph augmented_out = Graph::from_arcs(pos, fwd_arcs);
        const Graph augmented_in = Graph::from_arcs(pos, bwd_arcs);
        const CostField from_field = dijkstra_one_to_all(augmented_out, virtual_vertex);
        const CostField to_field = dijkstra_one_to_all(reverse(augmented_in), virtual_vertex);
        for (NodeId v = 0; v < g.node_count(); ++v) {
            CHECK(set.separators[0].from_sep[static_cast<size_t>(v)] ==
                  from_field.cost[static_cast<size_t>(v)]);
            CHECK(set.separators[0].to_sep[static_cast<size_t>(v)] ==
                  to_field.cost[static_cast<size_t>(v)]);
        }
    }
}

TEST_CASE("adding a separator never weakens the bound") {
    const Graph g = oracle::random_graph(30, 7);
    Rng rng(77);
    Separator s1{{rng.node(g.node_count())}};
    Separator s2{{rng.node(g.node_count()), rng.node(g.node_count())}};
    std::sort(s2.vertices.begin(), s2.vertices.end());
    s2.vertices.erase(std::unique(s2.vertices.begin(), s2.vertices.end()), s2.vertices.end());
    const SeparatorSet one = build_separator_fields(g, std::vector<Separator>{s1});
    const SeparatorSet two = build_separator_fields(g, std::vector<Separator>{s1, s2});
    for (NodeId v = 0; v < g.node_count(); ++v)
        for (NodeId t = 0; t < g.node_count(); ++t)
            CHECK(two.lower_bound(v, t) >= one.lower_bound(v, t));
}

TEST_CASE("signed field") {
    const Graph s = symmetrize(oracle::diamond());
    const Separator sep{{1, 2}};
    const ComponentLabels labels = label_components(s, sep);
    const SignedField field = signed_field(s, sep, labels);
    CHECK(field.value[0] == doctest::Approx(1.0));   // component of node 0 gets +
    CHECK(field.value[3] == doctest::Approx(-0.5));  // shortest exit is the 0.5 edge to node 2
    CHECK(field.value[1] == 0.0);
    CHECK(field.value[2] == 0.0);

    SUBCASE("signed gap equals the cross formula on symmetric graphs") {
        const SeparatorSet set = build_separator_fields(s, std::vector<Separator>{sep});
        CHECK(std::abs(field.value[0] - field.value[3]) ==
              doctest::Approx(set.lower_bound(0, 3)));
    }
    SUBCASE("rejects directed graphs and non-binary splits") {
        CHECK_THROWS_AS(signed_field(oracle::diamond(), sep, labels), std::invalid_argument);
        const Separator all{{0, 1, 2, 3}};
        CHECK_THROWS_AS(signed_field(s, all, label_components(s, all)), std::invalid_argument);
    }
}

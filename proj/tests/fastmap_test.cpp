#include <doctest.h>

#include "fastpath/fastmap.hpp"
#include "oracle.hpp"

using namespace fastpath;

TEST_CASE("fastmap on a two-node path is exact after one coordinate") {
    std::vector<Position> pos{{0, 0}, {4, 0}};
    const Graph g = Graph::from_arcs(pos, {{0, 1, 4.0}, {1, 0, 4.0}});
    FastMapStats stats;
    const FastMapEmbedding fm = build_fastmap_embedding(g, 1, 10, 3, &stats);
    REQUIRE(fm.coords.size() == 1);
    CHECK(std::abs(fm.coords[0][0]) == doctest::Approx(2.0));
    CHECK(fm.coords[0][0] == doctest::Approx(-fm.coords[0][1]));
    CHECK(fm.lower_bound(0, 1) == doctest::Approx(4.0));  // exact
    CHECK(stats.max_clamp <= 1e-9);

    // The first coordinate absorbs the whole edge: a second round sees a
    // zero-residual graph and contributes nothing.
    const FastMapEmbedding fm2 = build_fastmap_embedding(g, 2, 10, 3);
    CHECK(fm2.lower_bound(0, 1) == doctest::Approx(4.0));
    for (const double c : fm2.coords[1]) CHECK(c == doctest::Approx(0.0));
}

TEST_CASE("fastmap refuses directed input") {
    CHECK_THROWS_AS(build_fastmap_embedding(oracle::diamond(), 2, 10, 1, nullptr),
                    std::invalid_argument);
    CHECK_THROWS_AS(build_fastmap_embedding(symmetrize(oracle::diamond()), 0, 10, 1, nullptr),
                    std::invalid_argument);
}

TEST_CASE("fastmap residuals stay non-negative with tiny clamps") {
    const Graph s = symmetrize(oracle::diamond());
    FastMapStats stats;
    build_fastmap_embedding(s, 2, 10, 1, &stats);
    CHECK(stats.max_clamp <= 1e-6);

    for (std::uint64_t seed = 300; seed < 306; ++seed) {
        const Graph g = symmetrize(oracle::random_graph(30, seed));
        FastMapStats st;
        build_fastmap_embedding(g, 4, 10, seed, &st);
        CHECK(st.max_clamp <= 1e-6);
    }
}

TEST_CASE("fastmap bound is admissible and consistent on undirected graphs") {
    const Graph s = symmetrize(oracle::diamond());
    const auto ap = oracle::all_pairs(s);
    const FastMapEmbedding fm = build_fastmap_embedding(s, 2, 10, 1);
    for (NodeId v = 0; v < s.node_count(); ++v) {
        CHECK(fm.lower_bound(v, v) == 0.0);
        for (NodeId t = 0; t < s.node_count(); ++t) {
            CHECK(fm.lower_bound(v, t) >= 0.0);
            CHECK(fm.lower_bound(v, t) <= ap(v, t) + 1e-9 * std::max(1.0, ap(v, t)));
        }
    }

    for (std::uint64_t seed = 310; seed < 318; ++seed) {
        const Graph g = symmetrize(oracle::random_graph(28, seed));
        const auto truth = oracle::all_pairs(g);
        const FastMapEmbedding emb = build_fastmap_embedding(g, 3, 10, seed);
        for (NodeId v = 0; v < g.node_count(); ++v)
            for (NodeId t = 0; t < g.node_count(); ++t)
                if (reachable(truth(v, t)))
                    CHECK(emb.lower_bound(v, t) <= truth(v, t) + 1e-9 * std::max(1.0, truth(v, t)));
        for (const Arc& a : g.arcs())
            for (NodeId t = 0; t < g.node_count(); t += 4)
                CHECK(emb.lower_bound(a.tail, t) <=
                      a.weight + emb.lower_bound(a.head, t) + 1e-9);
    }
}

TEST_CASE("fastmap k=1 matches the closed form") {
    const Graph s = symmetrize(oracle::diamond());
    const auto ap = oracle::all_pairs(s);
    const FastMapEmbedding fm = build_fastmap_embedding(s, 1, 10, 7);
    const auto [a, b] = fm.pivot_pairs[0];
    for (NodeId v = 0; v < s.node_count(); ++v)
        for (NodeId t = 0; t < s.node_count(); ++t)
            CHECK(fm.lower_bound(v, t) ==
                  doctest::Approx(0.5 * std::abs(ap(a, v) - ap(b, v) - ap(a, t) + ap(b, t))));
}

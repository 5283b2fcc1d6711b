#pragma once

#include <bit>
#include <cstring>
#include <istream>
#include <memory>
#include <ostream>
#include <variant>

#include "fastpath/fastmap.hpp"
#include "fastpath/landmarks.hpp"
#include "fastpath/separator.hpp"

namespace fastpath {

/// FNV-1a over the canonical byte sequence of the graph: node count,
/// arc count, then each arc as (tail, head, weight bits) in (tail, head)
/// order, all fields little-endian 64-bit. Invariant under the input
/// order of the arc list because Graph stores arcs canonically sorted.
inline std::uint64_t fingerprint(const Graph& g) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    auto mix = [&h](std::uint64_t value) {
        for (int byte = 0; byte < 8; ++byte) {
            h ^= (value >> (8 * byte)) & 0xffull;
            h *= 0x100000001b3ull;
        }
    };
    mix(static_cast<std::uint64_t>(g.node_count()));
    mix(static_cast<std::uint64_t>(g.arc_count()));
    for (const Arc& a : g.arcs()) {
        mix(static_cast<std::uint64_t>(a.tail));
        mix(static_cast<std::uint64_t>(a.head));
        mix(std::bit_cast<std::uint64_t>(a.weight));
    }
    return h;
}

enum class BundleKind : std::uint8_t { Landmark = 0, FastMap = 1, Separator = 2 };

inline const char* bundle_kind_name(BundleKind k) {
    switch (k) {
        case BundleKind::Landmark: return "landmark";
        case BundleKind::FastMap: return "fastmap";
        case BundleKind::Separator: return "separator";
    }
    return "?";
}

/// Preprocessed heuristic data bound to the graph it was built from via
/// the graph fingerprint. Serialized in the SHPB binary format.
struct HeuristicBundle {
    BundleKind kind = BundleKind::Landmark;
    std::uint64_t graph_fingerprint = 0;
    std::int32_t k = 0;
    std::uint32_t format_version = 1;
    std::variant<LandmarkTables, FastMapEmbedding, SeparatorSet> payload;
};

namespace detail {

inline constexpr char kBundleMagic[4] = {'S', 'H', 'P', 'B'};
inline constexpr std::uint32_t kBundleVersion = 1;
inline constexpr std::uint32_t kSepLabelEncoding = 0xffffffffu;

inline void put_u32(std::ostream& out, std::uint32_t v) {
    char b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xffu);
    out.write(b, 4);
}

inline void put_u64(std::ostream& out, std::uint64_t v) {
    char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xffu);
    out.write(b, 8);
}

inline void put_f64(std::ostream& out, double v) { put_u64(out, std::bit_cast<std::uint64_t>(v)); }

inline std::uint32_t get_u32(std::istream& in) {
    unsigned char b[4];
    if (!in.read(reinterpret_cast<char*>(b), 4)) throw ParseError("bundle: truncated stream");
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
    return v;
}

inline std::uint64_t get_u64(std::istream& in) {
    unsigned char b[8];
    if (!in.read(reinterpret_cast<char*>(b), 8)) throw ParseError("bundle: truncated stream");
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    return v;
}

inline double get_f64(std::istream& in) { return std::bit_cast<double>(get_u64(in)); }

inline void put_cost_array(std::ostream& out, const std::vector<Cost>& a) {
    for (const Cost c : a) put_f64(out, c);
}

inline std::vector<Cost> get_cost_array(std::istream& in, size_t n) {
    std::vector<Cost> a(n);
    for (size_t i = 0; i < n; ++i) a[i] = get_f64(in);
    return a;
}

}  // namespace detail

inline void save_bundle(const HeuristicBundle& bundle, std::ostream& out) {
    using namespace detail;
    out.write(kBundleMagic, 4);
    put_u32(out, kBundleVersion);
    out.put(static_cast<char>(bundle.kind));
    put_u64(out, bundle.graph_fingerprint);
    put_u32(out, static_cast<std::uint32_t>(bundle.k));

    if (const auto* lm = std::get_if<LandmarkTables>(&bundle.payload)) {
        const auto n = lm->from_landmark.empty() ? 0 : lm->from_landmark[0].size();
        put_u32(out, static_cast<std::uint32_t>(n));
        for (const NodeId l : lm->landmarks) put_u32(out, static_cast<std::uint32_t>(l));
        for (const auto& row : lm->from_landmark) put_cost_array(out, row);
        for (const auto& row : lm->to_landmark) put_cost_array(out, row);
    } else if (const auto* fm = std::get_if<FastMapEmbedding>(&bundle.payload)) {
        const auto n = fm->coords.empty() ? 0 : fm->coords[0].size();
        put_u32(out, static_cast<std::uint32_t>(n));
        for (const auto& [a, b] : fm->pivot_pairs) {
            put_u32(out, static_cast<std::uint32_t>(a));
            put_u32(out, static_cast<std::uint32_t>(b));
        }
        for (const auto& row : fm->coords) put_cost_array(out, row);
    } else {
        const auto& set = std::get<SeparatorSet>(bundle.payload);
        const auto n = set.separators.empty() ? 0 : set.separators[0].to_sep.size();
        put_u32(out, static_cast<std::uint32_t>(n));
        for (const SeparatorFields& f : set.separators) {
            put_u32(out, static_cast<std::uint32_t>(f.separator.vertices.size()));
            for (const NodeId v : f.separator.vertices) put_u32(out, static_cast<std::uint32_t>(v));
            for (const std::int32_t l : f.labels.label)
                put_u32(out, l == kSeparatorLabel ? kSepLabelEncoding
                                                  : static_cast<std::uint32_t>(l));
            put_cost_array(out, f.to_sep);
            put_cost_array(out, f.from_sep);
        }
    }
    if (!out) throw std::runtime_error("bundle: write failed");
}

inline HeuristicBundle load_bundle(std::istream& in) {
    using namespace detail;
    char magic[4];
    if (!in.read(magic, 4)) throw ParseError("bundle: truncated stream");
    if (std::memcmp(magic, kBundleMagic, 4) != 0) throw ParseError("bundle: bad magic");
    const std::uint32_t version = get_u32(in);
    if (version != kBundleVersion)
        throw ParseError("bundle: unsupported format version " + std::to_string(version));

    HeuristicBundle bundle;
    bundle.format_version = version;
    const int kind_byte = in.get();
    if (kind_byte < 0) throw ParseError("bundle: truncated stream");
    if (kind_byte > 2) throw ParseError("bundle: unknown kind byte");
    bundle.kind = static_cast<BundleKind>(kind_byte);
    bundle.graph_fingerprint = get_u64(in);
    bundle.k = static_cast<std::int32_t>(get_u32(in));
    const size_t k = static_cast<size_t>(bundle.k);
    const size_t n = get_u32(in);

    if (bundle.kind == BundleKind::Landmark) {
        LandmarkTables lm;
        for (size_t i = 0; i < k; ++i) lm.landmarks.push_back(static_cast<NodeId>(get_u32(in)));
        for (size_t i = 0; i < k; ++i) lm.from_landmark.push_back(get_cost_array(in, n));
        for (size_t i = 0; i < k; ++i) lm.to_landmark.push_back(get_cost_array(in, n));
        bundle.payload = std::move(lm);
    } else if (bundle.kind == BundleKind::FastMap) {
        FastMapEmbedding fm;
        for (size_t i = 0; i < k; ++i) {
            const auto a = static_cast<NodeId>(get_u32(in));
            const auto b = static_cast<NodeId>(get_u32(in));
            fm.pivot_pairs.emplace_back(a, b);
        }
        for (size_t i = 0; i < k; ++i) fm.coords.push_back(get_cost_array(in, n));
        bundle.payload = std::move(fm);
    } else {
        SeparatorSet set;
        set.separators.resize(k);
        for (size_t i = 0; i < k; ++i) {
            SeparatorFields& f = set.separators[i];
            const size_t sep_size = get_u32(in);
            for (size_t j = 0; j < sep_size; ++j)
                f.separator.vertices.push_back(static_cast<NodeId>(get_u32(in)));
            f.labels.label.resize(n);
            std::int32_t max_label = -1;
            for (size_t v = 0; v < n; ++v) {
                const std::uint32_t raw = get_u32(in);
                f.labels.label[v] = raw == kSepLabelEncoding ? kSeparatorLabel
                                                             : static_cast<std::int32_t>(raw);
                max_label = std::max(max_label, f.labels.label[v]);
            }
            f.labels.component_count = max_label + 1;
            f.to_sep = get_cost_array(in, n);
            f.from_sep = get_cost_array(in, n);
        }
        bundle.payload = std::move(set);
    }
    return bundle;
}

/// Every arc weight multiplied by an independent seeded draw from
/// [factor_lo, factor_hi); graph structure unchanged. Models dynamic
/// travel times ahead of a recompute.
inline Graph perturb_weights(const Graph& g, double factor_lo, double factor_hi,
                             std::uint64_t seed) {
    if (!(factor_lo > 0.0) || factor_hi < factor_lo)
        throw std::invalid_argument("perturb_weights: factors must satisfy 0 < lo <= hi");
    Rng rng(seed);
    std::vector<Arc> arcs(g.arcs().begin(), g.arcs().end());
    for (Arc& a : arcs) a.weight *= rng.uniform(factor_lo, factor_hi);
    return Graph::from_arcs(std::vector<Position>(g.positions().begin(), g.positions().end()),
                            std::move(arcs));
}

/// Frozen selectors for rebuilding a bundle after weights change:
/// landmark lists and separator vertex sets survive weight updates
/// unchanged; the fastmap pivot search reruns from its recorded seed.
struct BundleRecipe {
    BundleKind kind = BundleKind::Landmark;
    std::vector<NodeId> landmarks;
    std::int64_t fastmap_k = 0;
    std::int64_t fastmap_pivot_iters = 10;
    std::uint64_t fastmap_seed = 0;
    std::vector<Separator> separators;
};

inline HeuristicBundle build_bundle(const BundleRecipe& recipe, const Graph& g) {
    HeuristicBundle bundle;
    bundle.kind = recipe.kind;
    bundle.graph_fingerprint = fingerprint(g);
    switch (recipe.kind) {
        case BundleKind::Landmark:
            bundle.k = static_cast<std::int32_t>(recipe.landmarks.size());
            bundle.payload = build_landmark_tables(g, recipe.landmarks);
            break;
        case BundleKind::FastMap:
            bundle.k = static_cast<std::int32_t>(recipe.fastmap_k);
            bundle.payload = build_fastmap_embedding(g, recipe.fastmap_k,
                                                     recipe.fastmap_pivot_iters,
                                                     recipe.fastmap_seed);
            break;
        case BundleKind::Separator:
            bundle.k = static_cast<std::int32_t>(recipe.separators.size());
            bundle.payload = build_separator_fields(g, recipe.separators);
            break;
    }
    return bundle;
}

/// Evaluator over the bundle payload; the bundle must outlive it.
/// Throws FingerprintMismatch when the bundle was built from a
/// different graph.
inline std::unique_ptr<HeuristicEvaluator> attach_bundle(const Graph& g,
                                                         const HeuristicBundle& bundle) {
    if (bundle.graph_fingerprint != fingerprint(g))
        throw FingerprintMismatch("bundle was built from a different graph (fingerprint mismatch)");
    if (const auto* lm = std::get_if<LandmarkTables>(&bundle.payload))
        return std::make_unique<LandmarkHeuristic>(g, *lm);
    if (const auto* fm = std::get_if<FastMapEmbedding>(&bundle.payload))
        return std::make_unique<FastMapHeuristic>(g, *fm);
    return std::make_unique<SeparatorHeuristic>(g, std::get<SeparatorSet>(bundle.payload));
}

}  // namespace fastpath

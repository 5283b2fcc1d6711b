#pragma once

#include <array>
#include <cctype>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>

#include <json.hpp>

#include "fastpath/bundle.hpp"
#include "fastpath/dimacs.hpp"
#include "fastpath/generators.hpp"

namespace fastpath {

/// Mean, population standard deviation, and a 20-bin histogram over
/// [0, 1] of a per-pair metric.
struct MetricStats {
    double mean = 0.0;
    double stddev = 0.0;
    std::array<std::int64_t, 20> histogram{};
    std::int64_t pair_count_used = 0;
};
using QualityStats = MetricStats;
using EfficiencyStats = MetricStats;

using NodePair = std::pair<NodeId, NodeId>;

/// Seeded uniform points in the bounding box, snapped to the nearest
/// vertex within snap_fraction of the box diagonal. Pairs where either
/// snap fails, s = t, or t is unreachable from s are redrawn; the redraw
/// budget is 100x count, after which sampling fails.
inline std::vector<NodePair> sample_pairs(const Graph& g, std::int64_t count, std::uint64_t seed,
                                          double snap_fraction) {
    if (count < 1) throw std::invalid_argument("sample_pairs: count must be >= 1");
    if (!(snap_fraction > 0.0) || snap_fraction > 1.0)
        throw std::invalid_argument("sample_pairs: snap_fraction must be in (0, 1]");
    const BoundingBox& bb = g.bounding_box();
    const double max_snap = snap_fraction * bb.diagonal();
    Rng rng(seed);
    std::vector<NodePair> pairs;
    pairs.reserve(static_cast<size_t>(count));
    const std::int64_t budget = 100 * count;
    for (std::int64_t attempts = 0; static_cast<std::int64_t>(pairs.size()) < count; ++attempts) {
        if (attempts >= budget)
            throw std::runtime_error(
                "sample_pairs: redraw budget exhausted (snap_fraction too small for this graph)");
        const Position ps{rng.uniform(bb.min_x, bb.max_x), rng.uniform(bb.min_y, bb.max_y)};
        const Position pt{rng.uniform(bb.min_x, bb.max_x), rng.uniform(bb.min_y, bb.max_y)};
        const auto s = snap(g, ps, max_snap);
        const auto t = snap(g, pt, max_snap);
        if (!s || !t || *s == *t) continue;
        if (!reachable(dijkstra_point_to_point(g, *s, *t).cost)) continue;
        pairs.emplace_back(*s, *t);
    }
    return pairs;
}

namespace detail {

inline void accumulate(MetricStats& stats, double value, double& sum, double& sum_sq) {
    sum += value;
    sum_sq += value * value;
    const auto bin = std::min<std::int64_t>(19, static_cast<std::int64_t>(value * 20.0));
    ++stats.histogram[static_cast<size_t>(std::max<std::int64_t>(0, bin))];
    ++stats.pair_count_used;
}

inline void finalize(MetricStats& stats, double sum, double sum_sq) {
    if (stats.pair_count_used == 0) return;
    const auto n = static_cast<double>(stats.pair_count_used);
    stats.mean = sum / n;
    stats.stddev = std::sqrt(std::max(0.0, sum_sq / n - stats.mean * stats.mean));
}

}  // namespace detail

/// Per-pair heuristic quality h(s,t) / c(s,t), ground truth from plain
/// point-to-point Dijkstra. Values must land in [0, 1]; anything above
/// betrays an inadmissible evaluator and throws.
inline QualityStats measure_quality(const Graph& g, const HeuristicEvaluator& h,
                                    std::span<const NodePair> pairs) {
    QualityStats stats;
    double sum = 0.0, sum_sq = 0.0;
    for (const auto& [s, t] : pairs) {
        const Cost c = dijkstra_point_to_point(g, s, t).cost;
        if (!reachable(c)) throw std::invalid_argument("measure_quality: unreachable pair");
        const Cost estimate = h.estimate(s, t);
        double quality;
        if (c > 0.0)
            quality = estimate / c;
        else
            quality = estimate <= 0.0 ? 1.0 : 2.0;
        if (quality > 1.0 + 1e-9)
            throw std::runtime_error("measure_quality: estimate above true cost (inadmissible)");
        detail::accumulate(stats, std::clamp(quality, 0.0, 1.0), sum, sum_sq);
    }
    detail::finalize(stats, sum, sum_sq);
    return stats;
}

/// Per-pair A* efficiency: fastest-path vertex count divided by settled
/// vertex count, in (0, 1].
inline EfficiencyStats measure_efficiency(const Graph& g, const HeuristicEvaluator& h,
                                          std::span<const NodePair> pairs) {
    EfficiencyStats stats;
    double sum = 0.0, sum_sq = 0.0;
    for (const auto& [s, t] : pairs) {
        const QueryResult r = astar(g, s, t, h);
        if (!reachable(r.cost)) throw std::invalid_argument("measure_efficiency: unreachable pair");
        const double eff =
            static_cast<double>(r.path.size()) / static_cast<double>(r.settled_count);
        detail::accumulate(stats, std::clamp(eff, 0.0, 1.0), sum, sum_sq);
    }
    detail::finalize(stats, sum, sum_sq);
    return stats;
}

// ---------------------------------------------------------------------------
// Benchmark configuration and pipeline
// ---------------------------------------------------------------------------

struct GraphSpec {
    enum class Kind { Dimacs, Grid, Bottleneck };
    Kind kind = Kind::Grid;
    std::string gr_path, co_path;
    std::int64_t rows = 16, cols = 16;
    std::int64_t block = 16, gates = 3;
    double speed_min = 1.0, speed_max = 1.0;
    double one_way_fraction = 0.0;
    std::uint64_t seed = 1;
    bool symmetrize = false;
};

struct SeparatorSpecConfig {
    enum class Kind { Polyline, Vertices, AxisCuts, Gate };
    Kind kind = Kind::Polyline;
    PolylineSpec polyline;
    std::vector<NodeId> vertices;  // 0-based after parsing
    std::int64_t axis_x = 0, axis_y = 0;
};

struct HeuristicSpecConfig {
    enum class Kind { Zero, Euclidean, Landmark, FastMap, Separator };
    Kind kind = Kind::Zero;
    std::string name;
    std::int64_t k = 4;
    std::uint64_t seed = 1;
    std::int64_t pivot_iters = 10;
    double euclidean_scale = 0.0;  // 0 = derive the admissible scale from the graph
    std::vector<SeparatorSpecConfig> separators;
};

struct BenchConfig {
    GraphSpec graph;
    std::vector<HeuristicSpecConfig> heuristics;
    std::int64_t pair_count = 1000;
    std::uint64_t seed = 1;
    double snap_fraction = 0.01;
    std::string output_dir = "bench_out";
    bool dump_pairs = false;
    bool include_timings = false;  // wall-clock column breaks byte-identical reruns
};

inline BenchConfig parse_bench_config(const nlohmann::json& j) {
    BenchConfig cfg;
    const auto& jg = j.at("graph");
    const std::string kind = jg.at("kind").get<std::string>();
    if (kind == "dimacs") {
        cfg.graph.kind = GraphSpec::Kind::Dimacs;
        cfg.graph.gr_path = jg.at("gr").get<std::string>();
        cfg.graph.co_path = jg.at("co").get<std::string>();
    } else if (kind == "grid") {
        cfg.graph.kind = GraphSpec::Kind::Grid;
        cfg.graph.rows = jg.at("rows").get<std::int64_t>();
        cfg.graph.cols = jg.at("cols").get<std::int64_t>();
        cfg.graph.one_way_fraction = jg.value("one_way_fraction", 0.0);
    } else if (kind == "bottleneck") {
        cfg.graph.kind = GraphSpec::Kind::Bottleneck;
        cfg.graph.block = jg.at("block").get<std::int64_t>();
        cfg.graph.gates = jg.at("gates").get<std::int64_t>();
    } else {
        throw ParseError("config: unknown graph kind '" + kind + "'");
    }
    cfg.graph.speed_min = jg.value("speed_min", 1.0);
    cfg.graph.speed_max = jg.value("speed_max", 1.0);
    cfg.graph.seed = jg.value("seed", std::uint64_t{1});
    cfg.graph.symmetrize = jg.value("symmetrize", false);

    for (const auto& jh : j.at("heuristics")) {
        HeuristicSpecConfig h;
        const std::string hk = jh.at("kind").get<std::string>();
        if (hk == "zero") h.kind = HeuristicSpecConfig::Kind::Zero;
        else if (hk == "euclidean") h.kind = HeuristicSpecConfig::Kind::Euclidean;
        else if (hk == "landmark") h.kind = HeuristicSpecConfig::Kind::Landmark;
        else if (hk == "fastmap") h.kind = HeuristicSpecConfig::Kind::FastMap;
        else if (hk == "separator") h.kind = HeuristicSpecConfig::Kind::Separator;
        else throw ParseError("config: unknown heuristic kind '" + hk + "'");
        h.name = jh.value("name", hk);
        h.k = jh.value("k", std::int64_t{4});
        h.seed = jh.value("seed", std::uint64_t{1});
        h.pivot_iters = jh.value("pivot_iters", std::int64_t{10});
        h.euclidean_scale = jh.value("scale", 0.0);
        if (jh.contains("separators")) {
            for (const auto& js : jh.at("separators")) {
                SeparatorSpecConfig s;
                const std::string sk = js.at("kind").get<std::string>();
                if (sk == "polyline") {
                    s.kind = SeparatorSpecConfig::Kind::Polyline;
                    for (const auto& pt : js.at("points"))
                        s.polyline.points.push_back(
                            {pt.at(0).get<double>(), pt.at(1).get<double>()});
                } else if (sk == "vertices") {
                    s.kind = SeparatorSpecConfig::Kind::Vertices;
                    for (const auto& id : js.at("ids")) {
                        const auto raw = id.get<std::int64_t>();
                        if (raw < 1) throw ParseError("config: separator vertex ids are 1-based");
                        s.vertices.push_back(static_cast<NodeId>(raw - 1));
                    }
                } else if (sk == "axis_cuts") {
                    s.kind = SeparatorSpecConfig::Kind::AxisCuts;
                    s.axis_x = js.value("x", std::int64_t{0});
                    s.axis_y = js.value("y", std::int64_t{0});
                } else if (sk == "gate") {
                    s.kind = SeparatorSpecConfig::Kind::Gate;
                } else {
                    throw ParseError("config: unknown separator kind '" + sk + "'");
                }
                h.separators.push_back(std::move(s));
            }
        }
        cfg.heuristics.push_back(std::move(h));
    }
    cfg.pair_count = j.value("pairs", std::int64_t{1000});
    cfg.seed = j.value("seed", std::uint64_t{1});
    cfg.snap_fraction = j.value("snap_fraction", 0.01);
    cfg.output_dir = j.value("output_dir", std::string{"bench_out"});
    cfg.dump_pairs = j.value("dump_pairs", false);
    cfg.include_timings = j.value("include_timings", false);
    return cfg;
}

inline BenchConfig load_bench_config(std::istream& in) {
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string{"config: "} + e.what());
    }
    try {
        return parse_bench_config(j);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string{"config: "} + e.what());
    }
}

struct BenchGraph {
    Graph graph;
    std::vector<NodeId> gate_nodes;
};

inline BenchGraph build_bench_graph(const GraphSpec& spec) {
    BenchGraph bg;
    switch (spec.kind) {
        case GraphSpec::Kind::Dimacs: {
            std::ifstream gr(spec.gr_path), co(spec.co_path);
            if (!gr) throw ParseError("config: cannot open " + spec.gr_path);
            if (!co) throw ParseError("config: cannot open " + spec.co_path);
            bg.graph = load_dimacs(gr, co);
            break;
        }
        case GraphSpec::Kind::Grid:
            bg.graph = generate_grid(spec.rows, spec.cols, {spec.speed_min, spec.speed_max},
                                     spec.one_way_fraction, spec.seed);
            break;
        case GraphSpec::Kind::Bottleneck: {
            BottleneckGraph b = generate_bottleneck(spec.block, spec.gates,
                                                    {spec.speed_min, spec.speed_max}, spec.seed);
            bg.graph = std::move(b.graph);
            bg.gate_nodes = std::move(b.gate_nodes);
            break;
        }
    }
    if (spec.symmetrize) bg.graph = symmetrize(bg.graph);
    return bg;
}

inline std::vector<Separator> realize_separators(const Graph& g,
                                                 std::span<const SeparatorSpecConfig> specs,
                                                 std::span<const NodeId> gate_nodes) {
    std::vector<Separator> result;
    for (const SeparatorSpecConfig& spec : specs) {
        switch (spec.kind) {
            case SeparatorSpecConfig::Kind::Polyline:
                result.push_back(separator_from_polyline(g, spec.polyline));
                break;
            case SeparatorSpecConfig::Kind::Vertices: {
                Separator s;
                s.vertices = spec.vertices;
                std::sort(s.vertices.begin(), s.vertices.end());
                s.vertices.erase(std::unique(s.vertices.begin(), s.vertices.end()),
                                 s.vertices.end());
                for (const NodeId v : s.vertices)
                    if (!g.valid_node(v))
                        throw ParseError("config: separator vertex id out of range");
                result.push_back(std::move(s));
                break;
            }
            case SeparatorSpecConfig::Kind::AxisCuts:
                for (const PolylineSpec& line : axis_cuts(g, spec.axis_x, spec.axis_y))
                    result.push_back(separator_from_polyline(g, line));
                break;
            case SeparatorSpecConfig::Kind::Gate:
                if (gate_nodes.empty())
                    throw ParseError(
                        "config: 'gate' separator needs a bottleneck-generated graph");
                result.push_back({{gate_nodes.begin(), gate_nodes.end()}});
                break;
        }
    }
    return result;
}

struct BenchRow {
    std::string name;
    std::int64_t k = 0;
    QualityStats quality;
    EfficiencyStats efficiency;
    double preprocess_seconds = 0.0;
    std::uint64_t bytes_stored = 0;
};

struct BenchReport {
    std::vector<BenchRow> rows;
    std::vector<NodePair> pairs;
};

namespace detail {

inline std::string sanitize_name(const std::string& name) {
    std::string out;
    for (const char c : name)
        out.push_back(std::isalnum(static_cast<unsigned char>(c)) ? c : '_');
    return out.empty() ? std::string{"h"} : out;
}

inline std::uint64_t bundle_bytes(const HeuristicBundle& bundle) {
    std::ostringstream out;
    save_bundle(bundle, out);
    return static_cast<std::uint64_t>(out.str().size());
}

inline std::string fmt(const char* format, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, format, v);
    return buf;
}

}  // namespace detail

/// Runs the full pipeline: build or load the graph, build every
/// configured heuristic (timing preprocessing), sample one pair list
/// shared by all heuristics, measure quality and efficiency, and write
/// summary.csv plus one histogram CSV per heuristic into output_dir.
/// Partial outputs are removed on failure.
inline BenchReport run_benchmark(const BenchConfig& cfg) {
    const BenchGraph bg = build_bench_graph(cfg.graph);
    const Graph& g = bg.graph;

    for (const HeuristicSpecConfig& spec : cfg.heuristics) {
        if (spec.kind == HeuristicSpecConfig::Kind::FastMap && !is_symmetric(g))
            throw ParseError(
                "config: fastmap requires an undirected graph (set graph.symmetrize)");
    }

    BenchReport report;
    report.pairs = sample_pairs(g, cfg.pair_count, cfg.seed, cfg.snap_fraction);

    std::vector<std::unique_ptr<HeuristicBundle>> bundles;   // keep payloads alive
    std::vector<std::unique_ptr<HeuristicEvaluator>> evaluators;
    std::vector<std::string> names;
    for (const HeuristicSpecConfig& spec : cfg.heuristics) {
        std::string name = detail::sanitize_name(spec.name);
        for (int suffix = 2; std::find(names.begin(), names.end(), name) != names.end(); ++suffix)
            name = detail::sanitize_name(spec.name) + "_" + std::to_string(suffix);
        names.push_back(name);

        BenchRow row;
        row.name = name;
        const auto t0 = std::chrono::steady_clock::now();
        switch (spec.kind) {
            case HeuristicSpecConfig::Kind::Zero:
                evaluators.push_back(std::make_unique<ZeroHeuristic>());
                break;
            case HeuristicSpecConfig::Kind::Euclidean:
                evaluators.push_back(spec.euclidean_scale > 0.0
                                         ? std::make_unique<EuclideanHeuristic>(
                                               g, spec.euclidean_scale)
                                         : std::make_unique<EuclideanHeuristic>(
                                               EuclideanHeuristic::admissible_for(g)));
                break;
            case HeuristicSpecConfig::Kind::Landmark: {
                BundleRecipe recipe;
                recipe.kind = BundleKind::Landmark;
                recipe.landmarks = select_landmarks(g, spec.k, spec.seed);
                bundles.push_back(std::make_unique<HeuristicBundle>(build_bundle(recipe, g)));
                row.k = spec.k;
                row.bytes_stored = detail::bundle_bytes(*bundles.back());
                evaluators.push_back(attach_bundle(g, *bundles.back()));
                break;
            }
            case HeuristicSpecConfig::Kind::FastMap: {
                BundleRecipe recipe;
                recipe.kind = BundleKind::FastMap;
                recipe.fastmap_k = spec.k;
                recipe.fastmap_pivot_iters = spec.pivot_iters;
                recipe.fastmap_seed = spec.seed;
                bundles.push_back(std::make_unique<HeuristicBundle>(build_bundle(recipe, g)));
                row.k = spec.k;
                row.bytes_stored = detail::bundle_bytes(*bundles.back());
                evaluators.push_back(attach_bundle(g, *bundles.back()));
                break;
            }
            case HeuristicSpecConfig::Kind::Separator: {
                BundleRecipe recipe;
                recipe.kind = BundleKind::Separator;
                recipe.separators = realize_separators(g, spec.separators, bg.gate_nodes);
                bundles.push_back(std::make_unique<HeuristicBundle>(build_bundle(recipe, g)));
                row.k = static_cast<std::int64_t>(recipe.separators.size());
                row.bytes_stored = detail::bundle_bytes(*bundles.back());
                evaluators.push_back(attach_bundle(g, *bundles.back()));
                break;
            }
        }
        const auto t1 = std::chrono::steady_clock::now();
        row.preprocess_seconds = std::chrono::duration<double>(t1 - t0).count();

        const HeuristicEvaluator& h = *evaluators.back();
        row.quality = measure_quality(g, h, report.pairs);
        row.efficiency = measure_efficiency(g, h, report.pairs);
        report.rows.push_back(std::move(row));
    }

    // Write outputs; sweep away partial files if anything fails.
    namespace fs = std::filesystem;
    fs::create_directories(cfg.output_dir);
    std::vector<fs::path> written;
    try {
        const fs::path summary_path = fs::path(cfg.output_dir) / "summary.csv";
        std::ofstream summary(summary_path);
        if (!summary) throw std::runtime_error("cannot write " + summary_path.string());
        written.push_back(summary_path);
        summary << "# efficiency denominator: settled (closed) vertex count per A* query\n";
        summary << "heuristic,k,quality_mean,quality_std,efficiency_mean,efficiency_std,"
                   "preprocess_seconds,bytes_stored\n";
        for (const BenchRow& row : report.rows) {
            summary << row.name << ',' << row.k << ',' << detail::fmt("%.9g", row.quality.mean)
                    << ',' << detail::fmt("%.9g", row.quality.stddev) << ','
                    << detail::fmt("%.9g", row.efficiency.mean) << ','
                    << detail::fmt("%.9g", row.efficiency.stddev) << ','
                    << detail::fmt("%.6f", cfg.include_timings ? row.preprocess_seconds : 0.0)
                    << ',' << row.bytes_stored << '\n';
        }
        summary.close();

        for (size_t i = 0; i < report.rows.size(); ++i) {
            const BenchRow& row = report.rows[i];
            const fs::path hist_path = fs::path(cfg.output_dir) / ("hist_" + row.name + ".csv");
            std::ofstream hist(hist_path);
            if (!hist) throw std::runtime_error("cannot write " + hist_path.string());
            written.push_back(hist_path);
            hist << "bin_lower_edge,quality_count,efficiency_count\n";
            for (size_t bin = 0; bin < 20; ++bin) {
                hist << detail::fmt("%.2f", static_cast<double>(bin) * 0.05) << ','
                     << row.quality.histogram[bin] << ',' << row.efficiency.histogram[bin] << '\n';
            }
            hist.close();

            if (cfg.dump_pairs) {
                const fs::path dump_path =
                    fs::path(cfg.output_dir) / ("pairs_" + row.name + ".csv");
                std::ofstream dump(dump_path);
                if (!dump) throw std::runtime_error("cannot write " + dump_path.string());
                written.push_back(dump_path);
                dump << "s,t,cost,heuristic_value,quality,path_vertices,settled,efficiency\n";
                const HeuristicEvaluator& h = *evaluators[i];
                for (const auto& [s, t] : report.pairs) {
                    const QueryResult r = astar(g, s, t, h);
                    const Cost estimate = h.estimate(s, t);
                    dump << (s + 1) << ',' << (t + 1) << ',' << detail::fmt("%.17g", r.cost)
                         << ',' << detail::fmt("%.17g", estimate) << ','
                         << detail::fmt("%.17g", r.cost > 0.0 ? estimate / r.cost : 1.0) << ','
                         << r.path.size() << ',' << r.settled_count << ','
                         << detail::fmt("%.17g", static_cast<double>(r.path.size()) /
                                                     static_cast<double>(r.settled_count))
                         << '\n';
                }
            }
        }
    } catch (...) {
        for (const fs::path& p : written) {
            std::error_code ec;
            fs::remove(p, ec);
        }
        throw;
    }
    return report;
}

}  // namespace fastpath

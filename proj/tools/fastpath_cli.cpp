// Command-line frontend: graph ingestion and generation, heuristic
// preprocessing, point-to-point queries, separator tooling, and the
// benchmark pipeline. Node ids on the command line and in all outputs
// are 1-based, matching the DIMACS file convention.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "fastpath/bench.hpp"

namespace {

using namespace fastpath;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

Graph load_graph(const std::string& gr_path, const std::string& co_path) {
    std::ifstream gr(gr_path), co(co_path);
    if (!gr) throw ParseError("cannot open " + gr_path);
    if (!co) throw ParseError("cannot open " + co_path);
    return load_dimacs(gr, co);
}

std::vector<double> parse_number_list(const std::string& text) {
    std::vector<double> values;
    std::string token;
    std::istringstream in(text);
    while (std::getline(in, token, ',')) {
        try {
            values.push_back(std::stod(token));
        } catch (const std::exception&) {
            throw ParseError("cannot parse number '" + token + "'");
        }
    }
    return values;
}

struct SeparatorOptions {
    std::vector<std::string> lines;     // "x1,y1,x2,y2[,x3,y3...]"
    std::vector<std::string> vertices;  // "1,5,9" (1-based)
    std::string axis;                   // "x,y" cut counts

    void attach(CLI::App* cmd) {
        cmd->add_option("--sep-line", lines,
                        "polyline separator as comma-separated coordinates x1,y1,x2,y2,...");
        cmd->add_option("--sep-vertices", vertices,
                        "explicit separator as comma-separated 1-based vertex ids");
        cmd->add_option("--sep-axis", axis, "axis cuts as vertical,horizontal counts");
    }

    std::vector<Separator> realize(const Graph& g) const {
        std::vector<Separator> result;
        for (const std::string& text : lines) {
            const std::vector<double> nums = parse_number_list(text);
            if (nums.size() < 4 || nums.size() % 2 != 0)
                throw ParseError("--sep-line needs an even number (>= 4) of coordinates");
            PolylineSpec spec;
            for (size_t i = 0; i < nums.size(); i += 2) spec.points.push_back({nums[i], nums[i + 1]});
            result.push_back(separator_from_polyline(g, spec));
        }
        for (const std::string& text : vertices) {
            Separator s;
            for (const double raw : parse_number_list(text)) {
                const auto id = static_cast<std::int64_t>(raw);
                if (id < 1 || id > g.node_count())
                    throw ParseError("separator vertex id out of range: " + std::to_string(id));
                s.vertices.push_back(static_cast<NodeId>(id - 1));
            }
            std::sort(s.vertices.begin(), s.vertices.end());
            s.vertices.erase(std::unique(s.vertices.begin(), s.vertices.end()), s.vertices.end());
            result.push_back(std::move(s));
        }
        if (!axis.empty()) {
            const std::vector<double> nums = parse_number_list(axis);
            if (nums.size() != 2) throw ParseError("--sep-axis needs two counts");
            for (const PolylineSpec& line :
                 axis_cuts(g, static_cast<std::int64_t>(nums[0]), static_cast<std::int64_t>(nums[1])))
                result.push_back(separator_from_polyline(g, line));
        }
        if (result.empty()) throw ParseError("no separator specified");
        return result;
    }
};

void print_report(const Graph& g, const Separator& s, const SeparatorReport& report) {
    std::cout << "separator_vertices " << s.vertices.size() << '\n';
    std::cout << "components " << report.component_sizes.size() << '\n';
    std::cout << "component_sizes";
    for (const std::int64_t size : report.component_sizes) std::cout << ' ' << size;
    std::cout << '\n';
    std::cout << "crossing_arcs " << report.crossing_arcs << '\n';
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", report.cost_diameter);
    std::cout << "cost_diameter " << buf << (report.diameter_exact ? " (exact)" : " (sampled)")
              << '\n';
    if (report.diameter_a != kNoNode)
        std::cout << "diameter_witness " << report.diameter_a + 1 << ' ' << report.diameter_b + 1
                  << '\n';
    std::cout << "valid " << (report.valid ? "yes" : "no") << '\n';
    (void)g;
}

int run(int argc, char** argv) {
    CLI::App app{"fastest-path engine: preprocessed A* heuristics on road graphs"};
    app.require_subcommand(1);

    // --- ingest ---------------------------------------------------------
    std::string gr_path, co_path;
    auto* ingest = app.add_subcommand("ingest", "load a DIMACS graph and print statistics");
    ingest->add_option("--gr", gr_path, "DIMACS .gr file")->required();
    ingest->add_option("--co", co_path, "DIMACS .co file")->required();

    // --- gen ------------------------------------------------------------
    auto* gen = app.add_subcommand("gen", "generate a synthetic graph as DIMACS files");
    gen->require_subcommand(1);
    std::string out_gr, out_co;
    double speed_min = 1.0, speed_max = 1.0;
    std::uint64_t gen_seed = 1;

    auto* grid = gen->add_subcommand("grid", "rows x cols travel-time grid");
    std::int64_t rows = 16, cols = 16;
    double one_way = 0.0;
    grid->add_option("--rows", rows)->required();
    grid->add_option("--cols", cols)->required();
    grid->add_option("--speed-min", speed_min);
    grid->add_option("--speed-max", speed_max);
    grid->add_option("--one-way", one_way, "fraction of one-way edges");
    grid->add_option("--seed", gen_seed);
    grid->add_option("--out-gr", out_gr)->required();
    grid->add_option("--out-co", out_co)->required();

    auto* bottleneck = gen->add_subcommand("bottleneck", "two grids joined by gate edges");
    std::int64_t block = 16, gates = 3;
    bool print_gates = false;
    bottleneck->add_option("--block", block)->required();
    bottleneck->add_option("--gates", gates)->required();
    bottleneck->add_option("--speed-min", speed_min);
    bottleneck->add_option("--speed-max", speed_max);
    bottleneck->add_option("--seed", gen_seed);
    bottleneck->add_option("--out-gr", out_gr)->required();
    bottleneck->add_option("--out-co", out_co)->required();
    bottleneck->add_flag("--print-gates", print_gates, "print 1-based gate separator vertices");

    // --- preprocess -----------------------------------------------------
    auto* preprocess = app.add_subcommand("preprocess", "build a heuristic bundle (.shpb)");
    std::string kind, bundle_out;
    std::int64_t k = 4, pivot_iters = 10;
    std::uint64_t h_seed = 1;
    bool symmetrize_flag = false;
    SeparatorOptions pre_seps;
    preprocess->add_option("--gr", gr_path)->required();
    preprocess->add_option("--co", co_path)->required();
    preprocess->add_option("--kind", kind, "landmark | fastmap | separator")->required();
    preprocess->add_option("--k", k, "landmark / coordinate count");
    preprocess->add_option("--seed", h_seed);
    preprocess->add_option("--pivot-iters", pivot_iters, "fastmap pivot iterations");
    preprocess->add_flag("--symmetrize", symmetrize_flag, "symmetrize the graph first");
    pre_seps.attach(preprocess);
    preprocess->add_option("--out", bundle_out)->required();

    // --- query ----------------------------------------------------------
    auto* query = app.add_subcommand("query", "point-to-point fastest path");
    std::int64_t from = 0, to = 0;
    std::string bundle_path, plain_heuristic = "zero";
    query->add_option("--gr", gr_path)->required();
    query->add_option("--co", co_path)->required();
    query->add_option("--from", from, "1-based source id")->required();
    query->add_option("--to", to, "1-based target id")->required();
    query->add_option("--bundle", bundle_path, "heuristic bundle (.shpb)");
    query->add_option("--heuristic", plain_heuristic, "zero | euclidean (when no bundle)");
    query->add_flag("--symmetrize", symmetrize_flag);

    // --- bench ----------------------------------------------------------
    auto* bench = app.add_subcommand("bench", "run a benchmark config, write CSV reports");
    std::string config_path;
    bool dump_pairs = false;
    bench->add_option("--config", config_path, "JSON benchmark config")->required();
    bench->add_flag("--dump-pairs", dump_pairs, "also write per-pair CSVs");

    // --- validate-sep ---------------------------------------------------
    auto* validate = app.add_subcommand("validate-sep", "check a separator and report quality");
    SeparatorOptions val_seps;
    validate->add_option("--gr", gr_path)->required();
    validate->add_option("--co", co_path)->required();
    val_seps.attach(validate);

    // --- export-field ---------------------------------------------------
    auto* export_field = app.add_subcommand("export-field", "signed cost field as CSV");
    std::string field_out;
    SeparatorOptions exp_seps;
    export_field->add_option("--gr", gr_path)->required();
    export_field->add_option("--co", co_path)->required();
    export_field->add_flag("--symmetrize", symmetrize_flag,
                           "symmetrize the graph (the field needs a symmetric graph)");
    exp_seps.attach(export_field);
    export_field->add_option("--out", field_out)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (ingest->parsed()) {
            const Graph g = load_graph(gr_path, co_path);
            double w_min = g.arc_count() ? g.arc(0).weight : 0.0, w_max = w_min;
            for (const Arc& a : g.arcs()) {
                w_min = std::min(w_min, a.weight);
                w_max = std::max(w_max, a.weight);
            }
            const BoundingBox& bb = g.bounding_box();
            std::cout << "nodes " << g.node_count() << '\n'
                      << "arcs " << g.arc_count() << '\n'
                      << "weight_min " << w_min << '\n'
                      << "weight_max " << w_max << '\n'
                      << "bbox " << bb.min_x << ' ' << bb.min_y << ' ' << bb.max_x << ' '
                      << bb.max_y << '\n'
                      << "symmetric " << (is_symmetric(g) ? "yes" : "no") << '\n';
            return kExitOk;
        }

        if (grid->parsed() || bottleneck->parsed()) {
            Graph g;
            std::vector<NodeId> gate_nodes;
            if (grid->parsed()) {
                g = generate_grid(rows, cols, {speed_min, speed_max}, one_way, gen_seed);
            } else {
                BottleneckGraph b = generate_bottleneck(block, gates, {speed_min, speed_max},
                                                        gen_seed);
                g = std::move(b.graph);
                gate_nodes = std::move(b.gate_nodes);
            }
            std::ofstream gr_out(out_gr), co_out(out_co);
            if (!gr_out) throw ParseError("cannot write " + out_gr);
            if (!co_out) throw ParseError("cannot write " + out_co);
            save_dimacs(g, gr_out, co_out);
            std::cout << "nodes " << g.node_count() << "\narcs " << g.arc_count() << '\n';
            if (print_gates) {
                std::cout << "gates";
                for (const NodeId v : gate_nodes) std::cout << ' ' << v + 1;
                std::cout << '\n';
            }
            return kExitOk;
        }

        if (preprocess->parsed()) {
            Graph g = load_graph(gr_path, co_path);
            if (symmetrize_flag) g = symmetrize(g);
            BundleRecipe recipe;
            if (kind == "landmark") {
                recipe.kind = BundleKind::Landmark;
                recipe.landmarks = select_landmarks(g, k, h_seed);
            } else if (kind == "fastmap") {
                recipe.kind = BundleKind::FastMap;
                recipe.fastmap_k = k;
                recipe.fastmap_pivot_iters = pivot_iters;
                recipe.fastmap_seed = h_seed;
            } else if (kind == "separator") {
                recipe.kind = BundleKind::Separator;
                recipe.separators = pre_seps.realize(g);
            } else {
                throw ParseError("unknown heuristic kind '" + kind + "'");
            }
            const HeuristicBundle bundle = build_bundle(recipe, g);
            std::ofstream out(bundle_out, std::ios::binary);
            if (!out) throw ParseError("cannot write " + bundle_out);
            save_bundle(bundle, out);
            std::ostringstream probe;
            save_bundle(bundle, probe);
            std::cout << "kind " << bundle_kind_name(bundle.kind) << "\nk " << bundle.k
                      << "\nbytes " << probe.str().size() << '\n';
            return kExitOk;
        }

        if (query->parsed()) {
            Graph g = load_graph(gr_path, co_path);
            if (symmetrize_flag) g = symmetrize(g);
            if (from < 1 || from > g.node_count() || to < 1 || to > g.node_count())
                throw ParseError("query endpoint out of range");
            HeuristicBundle bundle;
            std::unique_ptr<HeuristicEvaluator> evaluator;
            if (!bundle_path.empty()) {
                std::ifstream in(bundle_path, std::ios::binary);
                if (!in) throw ParseError("cannot open " + bundle_path);
                bundle = load_bundle(in);
                evaluator = attach_bundle(g, bundle);
            } else if (plain_heuristic == "zero") {
                evaluator = std::make_unique<ZeroHeuristic>();
            } else if (plain_heuristic == "euclidean") {
                evaluator =
                    std::make_unique<EuclideanHeuristic>(EuclideanHeuristic::admissible_for(g));
            } else {
                throw ParseError("unknown heuristic '" + plain_heuristic + "'");
            }
            const QueryResult r = astar(g, static_cast<NodeId>(from - 1),
                                        static_cast<NodeId>(to - 1), *evaluator);
            if (reachable(r.cost)) {
                char buf[64];
                std::snprintf(buf, sizeof buf, "%.17g", r.cost);
                std::cout << "cost " << buf << '\n' << "path";
                for (const NodeId v : r.path) std::cout << ' ' << v + 1;
                std::cout << '\n';
            } else {
                std::cout << "cost unreachable\npath\n";
            }
            std::cout << "settled " << r.settled_count << '\n'
                      << "relaxed " << r.relaxed_count << '\n';
            return kExitOk;
        }

        if (bench->parsed()) {
            std::ifstream in(config_path);
            if (!in) {
                std::cerr << "cannot open config " << config_path << '\n';
                return kExitUsage;
            }
            BenchConfig cfg = load_bench_config(in);
            if (dump_pairs) cfg.dump_pairs = true;
            const BenchReport report = run_benchmark(cfg);
            std::cout << "pairs " << report.pairs.size() << '\n';
            for (const BenchRow& row : report.rows) {
                char buf[128];
                std::snprintf(buf, sizeof buf, "%s k=%lld quality %.4f±%.4f efficiency %.4f±%.4f",
                              row.name.c_str(), static_cast<long long>(row.k), row.quality.mean,
                              row.quality.stddev, row.efficiency.mean, row.efficiency.stddev);
                std::cout << buf << '\n';
            }
            std::cout << "wrote " << cfg.output_dir << "/summary.csv\n";
            return kExitOk;
        }

        if (validate->parsed()) {
            const Graph g = load_graph(gr_path, co_path);
            const std::vector<Separator> seps = val_seps.realize(g);
            for (size_t i = 0; i < seps.size(); ++i) {
                if (seps.size() > 1) std::cout << "--- separator " << i + 1 << " ---\n";
                const ComponentLabels labels = label_components(g, seps[i]);
                print_report(g, seps[i], validate_separator(g, seps[i], labels));
            }
            return kExitOk;
        }

        if (export_field->parsed()) {
            Graph g = load_graph(gr_path, co_path);
            if (symmetrize_flag) g = symmetrize(g);
            const std::vector<Separator> seps = exp_seps.realize(g);
            if (seps.size() != 1) throw ParseError("export-field expects exactly one separator");
            const ComponentLabels labels = label_components(g, seps[0]);
            const SignedField field = signed_field(g, seps[0], labels);
            std::ofstream out(field_out);
            if (!out) throw ParseError("cannot write " + field_out);
            write_signed_field_csv(g, field, out);
            std::cout << "wrote " << field_out << '\n';
            return kExitOk;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitData;
    }
    return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }

#pragma once

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "fastpath/graph.hpp"

namespace fastpath {

/// Reads the DIMACS shortest-path pair of files: a .gr stream
/// (`p sp <n> <m>` header, `a <u> <v> <w>` arcs, 1-based ids) and a .co
/// stream (`v <id> <x> <y>` coordinates). Comment lines start with `c`.
/// Weights are parsed as reals and must be >= 0. Duplicate arcs keep the
/// minimum weight; self-loops are dropped. Every node needs a coordinate.
inline Graph load_dimacs(std::istream& gr_text, std::istream& co_text) {
    std::string line, tag;
    std::int64_t n = -1, m = -1;
    std::vector<Arc> arcs;
    std::int64_t line_no = 0;

    auto fail = [](const std::string& what, std::int64_t ln) -> void {
        throw ParseError("dimacs: " + what + " (line " + std::to_string(ln) + ")");
    };

    while (std::getline(gr_text, line)) {
        ++line_no;
        std::istringstream in(line);
        if (!(in >> tag)) continue;
        if (tag == "c") continue;
        if (tag == "p") {
            std::string kind;
            if (n >= 0 || !(in >> kind >> n >> m) || kind != "sp" || n < 0 || m < 0)
                fail("malformed problem header", line_no);
            arcs.reserve(static_cast<size_t>(m));
        } else if (tag == "a") {
            if (n < 0) fail("arc before problem header", line_no);
            std::int64_t u = 0, v = 0;
            double w = 0.0;
            if (!(in >> u >> v >> w)) fail("malformed arc line", line_no);
            if (u < 1 || u > n || v < 1 || v > n) fail("arc endpoint out of range", line_no);
            if (!(w >= 0.0) || !std::isfinite(w)) fail("negative or non-finite arc weight", line_no);
            arcs.push_back({static_cast<NodeId>(u - 1), static_cast<NodeId>(v - 1), w});
        } else {
            fail("unrecognized line type '" + tag + "'", line_no);
        }
    }
    if (n < 0) fail("missing problem header", line_no);

    std::vector<Position> positions(static_cast<size_t>(n));
    std::vector<bool> seen(static_cast<size_t>(n), false);
    line_no = 0;
    while (std::getline(co_text, line)) {
        ++line_no;
        std::istringstream in(line);
        if (!(in >> tag)) continue;
        if (tag == "c" || tag == "p") continue;
        if (tag == "v") {
            std::int64_t id = 0;
            double x = 0.0, y = 0.0;
            if (!(in >> id >> x >> y)) fail("malformed coordinate line", line_no);
            if (id < 1 || id > n) fail("coordinate id out of range", line_no);
            positions[static_cast<size_t>(id - 1)] = {x, y};
            seen[static_cast<size_t>(id - 1)] = true;
        } else {
            fail("unrecognized coordinate line type '" + tag + "'", line_no);
        }
    }
    for (std::int64_t v = 0; v < n; ++v)
        if (!seen[static_cast<size_t>(v)])
            throw ParseError("dimacs: missing coordinate for node " + std::to_string(v + 1));

    return Graph::from_arcs(std::move(positions), std::move(arcs));
}

/// Inverse of load_dimacs; weights and coordinates printed with enough
/// digits (%.17g) that a reload reproduces the arc multiset exactly.
inline void save_dimacs(const Graph& g, std::ostream& gr_text, std::ostream& co_text) {
    char buf[96];
    gr_text << "p sp " << g.node_count() << ' ' << g.arc_count() << '\n';
    for (const Arc& a : g.arcs()) {
        std::snprintf(buf, sizeof buf, "a %d %d %.17g\n", a.tail + 1, a.head + 1, a.weight);
        gr_text << buf;
    }
    co_text << "p aux sp co " << g.node_count() << '\n';
    for (NodeId v = 0; v < g.node_count(); ++v) {
        const Position& p = g.position(v);
        std::snprintf(buf, sizeof buf, "v %d %.17g %.17g\n", v + 1, p.x, p.y);
        co_text << buf;
    }
}

}  // namespace fastpath

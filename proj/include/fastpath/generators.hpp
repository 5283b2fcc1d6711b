#pragma once

#include <vector>

#include "fastpath/graph.hpp"

namespace fastpath {

/// rows x cols planar grid at unit spacing, weighted by travel time
/// (edge length / drawn speed). Grid edges are enumerated row-major,
/// right edge before down edge, drawing four values per edge in order:
/// forward speed, backward speed, one-way roll, direction roll. A
/// one_way_fraction share of edges keeps a single direction. The draw
/// order is part of the contract; results are deterministic per seed.
inline Graph generate_grid(std::int64_t rows, std::int64_t cols,
                           std::pair<double, double> speed_range,
                           double one_way_fraction, std::uint64_t seed) {
    if (rows < 2 || cols < 2) throw std::invalid_argument("grid: rows and cols must be >= 2");
    const auto [lo, hi] = speed_range;
    if (!(lo > 0.0) || hi < lo) throw std::invalid_argument("grid: bad speed range");
    if (one_way_fraction < 0.0 || one_way_fraction > 1.0)
        throw std::invalid_argument("grid: one_way_fraction must be in [0, 1]");

    std::vector<Position> positions;
    positions.reserve(static_cast<size_t>(rows * cols));
    for (std::int64_t r = 0; r < rows; ++r)
        for (std::int64_t c = 0; c < cols; ++c)
            positions.push_back({static_cast<double>(c), static_cast<double>(r)});

    auto id = [cols](std::int64_t r, std::int64_t c) {
        return static_cast<NodeId>(r * cols + c);
    };

    Rng rng(seed);
    std::vector<Arc> arcs;
    arcs.reserve(static_cast<size_t>(4 * rows * cols));
    auto emit_edge = [&](NodeId a, NodeId b) {
        const double w_ab = 1.0 / rng.uniform(lo, hi);
        const double w_ba = 1.0 / rng.uniform(lo, hi);
        const double one_way_roll = rng.uniform01();
        const double dir_roll = rng.uniform01();
        if (one_way_roll < one_way_fraction) {
            if (dir_roll < 0.5)
                arcs.push_back({a, b, w_ab});
            else
                arcs.push_back({b, a, w_ba});
        } else {
            arcs.push_back({a, b, w_ab});
            arcs.push_back({b, a, w_ba});
        }
    };
    for (std::int64_t r = 0; r < rows; ++r) {
        for (std::int64_t c = 0; c < cols; ++c) {
            if (c + 1 < cols) emit_edge(id(r, c), id(r, c + 1));
            if (r + 1 < rows) emit_edge(id(r, c), id(r + 1, c));
        }
    }
    return Graph::from_arcs(std::move(positions), std::move(arcs));
}

/// Two block x block grids joined only by a few gate edges: the gate
/// rows form a natural bottleneck. gate_nodes lists the left endpoints
/// of the gate edges; removing them disconnects the two blocks.
struct BottleneckGraph {
    Graph graph;
    std::vector<NodeId> gate_nodes;
    std::vector<std::int64_t> gate_rows;
};

/// Left block occupies x in [0, block), right block x in [block, 2*block);
/// gate edges have unit length between column block-1 and column block.
/// Internal block edges draw like generate_grid (both directions kept);
/// draw order: left block edges, right block edges, gate row selection,
/// then two speeds per gate.
inline BottleneckGraph generate_bottleneck(std::int64_t block, std::int64_t gates,
                                           std::pair<double, double> speed_range,
                                           std::uint64_t seed) {
    if (block < 4) throw std::invalid_argument("bottleneck: block must be >= 4");
    if (gates < 1 || gates > block)
        throw std::invalid_argument("bottleneck: gates must be in [1, block]");
    const auto [lo, hi] = speed_range;
    if (!(lo > 0.0) || hi < lo) throw std::invalid_argument("bottleneck: bad speed range");

    const std::int64_t block_nodes = block * block;
    std::vector<Position> positions;
    positions.reserve(static_cast<size_t>(2 * block_nodes));
    for (std::int64_t r = 0; r < block; ++r)
        for (std::int64_t c = 0; c < block; ++c)
            positions.push_back({static_cast<double>(c), static_cast<double>(r)});
    for (std::int64_t r = 0; r < block; ++r)
        for (std::int64_t c = 0; c < block; ++c)
            positions.push_back({static_cast<double>(block + c), static_cast<double>(r)});

    Rng rng(seed);
    std::vector<Arc> arcs;
    arcs.reserve(static_cast<size_t>(8 * block_nodes));
    auto emit_edge = [&](NodeId a, NodeId b) {
        arcs.push_back({a, b, 1.0 / rng.uniform(lo, hi)});
        arcs.push_back({b, a, 1.0 / rng.uniform(lo, hi)});
    };
    auto emit_block = [&](NodeId base) {
        auto id = [&](std::int64_t r, std::int64_t c) {
            return static_cast<NodeId>(base + r * block + c);
        };
        for (std::int64_t r = 0; r < block; ++r) {
            for (std::int64_t c = 0; c < block; ++c) {
                if (c + 1 < block) emit_edge(id(r, c), id(r, c + 1));
                if (r + 1 < block) emit_edge(id(r, c), id(r + 1, c));
            }
        }
    };
    emit_block(0);
    emit_block(static_cast<NodeId>(block_nodes));

    // Seeded choice of distinct gate rows (partial Fisher-Yates).
    std::vector<std::int64_t> rows(static_cast<size_t>(block));
    for (std::int64_t r = 0; r < block; ++r) rows[static_cast<size_t>(r)] = r;
    std::vector<std::int64_t> gate_rows;
    for (std::int64_t i = 0; i < gates; ++i) {
        const auto j = i + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(block - i)));
        std::swap(rows[static_cast<size_t>(i)], rows[static_cast<size_t>(j)]);
        gate_rows.push_back(rows[static_cast<size_t>(i)]);
    }

    std::vector<NodeId> gate_nodes;
    for (const std::int64_t r : gate_rows) {
        const auto left = static_cast<NodeId>(r * block + (block - 1));
        const auto right = static_cast<NodeId>(block_nodes + r * block);
        emit_edge(left, right);
        gate_nodes.push_back(left);
    }
    std::sort(gate_nodes.begin(), gate_nodes.end());
    std::sort(gate_rows.begin(), gate_rows.end());

    return {Graph::from_arcs(std::move(positions), std::move(arcs)), std::move(gate_nodes),
            std::move(gate_rows)};
}

}  // namespace fastpath

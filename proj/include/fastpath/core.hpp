#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace fastpath {

/// Dense 0-based vertex index, stable after graph construction.
using NodeId = std::int32_t;
inline constexpr NodeId kNoNode = -1;

/// Arc index into Graph::arcs(); kNoArc marks "no parent".
using ArcId = std::int32_t;
inline constexpr ArcId kNoArc = -1;

/// Non-negative travel time. kUnreachable behaves as +inf under
/// addition and comparison, which is exactly IEEE infinity.
using Cost = double;
inline constexpr Cost kUnreachable = std::numeric_limits<double>::infinity();

constexpr bool reachable(Cost c) noexcept { return c != kUnreachable; }

struct Position {
    double x = 0.0;
    double y = 0.0;
};

inline double euclidean_distance(const Position& a, const Position& b) noexcept {
    return std::hypot(a.x - b.x, a.y - b.y);
}

struct Arc {
    NodeId tail = kNoNode;
    NodeId head = kNoNode;
    double weight = 0.0;
};

struct BoundingBox {
    double min_x = 0.0, min_y = 0.0, max_x = 0.0, max_y = 0.0;

    double width() const noexcept { return max_x - min_x; }
    double height() const noexcept { return max_y - min_y; }
    double diagonal() const noexcept { return std::hypot(width(), height()); }
};

/// Malformed input data (file formats, configs, serialized bundles).
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A preprocessed bundle attached to a graph it was not built from.
class FingerprintMismatch : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// splitmix64. Self-contained so that seeded runs produce identical
/// streams on every platform, unlike std::uniform_*_distribution.
class Rng {
public:
    explicit Rng(std::uint64_t seed) noexcept : state_(seed) {}

    std::uint64_t next() noexcept {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Uniform draw from [0, 1).
    double uniform01() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform draw from [lo, hi).
    double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform01(); }

    /// Uniform draw from [0, bound); bound must be positive.
    std::uint64_t below(std::uint64_t bound) noexcept {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next()) * bound) >> 64);
    }

    NodeId node(std::int64_t node_count) noexcept {
        return static_cast<NodeId>(below(static_cast<std::uint64_t>(node_count)));
    }

private:
    std::uint64_t state_;
};

}  // namespace fastpath

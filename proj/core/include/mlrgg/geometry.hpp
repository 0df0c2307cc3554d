#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "mlrgg/rng.hpp"

namespace mlrgg {

struct Point {
    double x = 0.0;
    double y = 0.0;

    bool operator==(const Point&) const = default;
};

inline double squared_distance(const Point& a, const Point& b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return dx * dx + dy * dy;
}

// Largest admissible radius: the diagonal of the unit square.
constexpr double kMaxRadius = 1.4142135623730951;

// n points uniform on [0,1]^2, in draw order. x is drawn before y for each
// point, so the layout is a pure function of the stream key.
std::vector<Point> sample_positions(std::size_t n, RngStream& rng);

// Uniform-cell spatial hash over owned points, built once for a fixed query
// radius. Cell side equals the radius clamped to (0, 1], so a 3x3 block of
// cells always covers the query disc; for radius >= 1 the whole square fits
// in that block. Immutable after construction and safe for concurrent reads.
class GridIndex {
public:
    // Throws std::domain_error when radius is outside [0, kMaxRadius].
    GridIndex(std::vector<Point> points, double radius);

    double radius() const { return radius_; }
    double cell_size() const { return cell_; }
    std::size_t size() const { return points_.size(); }
    const std::vector<Point>& points() const { return points_; }

    // Ids of indexed points within the construction radius of point v
    // (closed ball, v excluded), sorted ascending. Throws
    // std::invalid_argument for an unknown id. Radius 0 yields no
    // neighbors, coincident points included.
    std::vector<std::uint32_t> neighbors_within(std::uint32_t v) const;

    // Appends the neighbors of q (any point, not necessarily indexed) to
    // out, skipping the id `skip` (pass size() or more to keep everything).
    // Order follows bucket traversal; callers wanting sorted output sort.
    void gather(const Point& q, std::uint64_t skip,
                std::vector<std::uint32_t>& out) const;

    // Number of ids gather would append, without materializing them.
    std::size_t count_within(const Point& q, std::uint64_t skip) const;

private:
    std::uint64_t cell_key(double x, double y) const;

    double radius_;
    double cell_;
    std::vector<Point> points_;
    std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> buckets_;
};

// Neighbors of v at radius r. r must match the index's construction radius;
// the parameter exists so call sites state their intent and mismatches are
// caught early (std::invalid_argument).
std::vector<std::uint32_t> radius_neighbors(const GridIndex& index,
                                            std::uint32_t v, double r);

// Probability that two independent uniform points of the unit square lie
// within distance r (closed ball). Exact polynomial for r <= 1,
// deterministic adaptive quadrature (absolute error <= 1e-10) for
// 1 < r <= sqrt(2). Throws std::domain_error outside [0, sqrt(2)].
double pair_adjacency_probability(double r);

}  // namespace mlrgg

#include "mlrgg/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace mlrgg {

std::vector<Point> sample_positions(std::size_t n, RngStream& rng) {
    std::vector<Point> pts(n);
    for (std::size_t i = 0; i < n; ++i) {
        pts[i].x = rng.next_unit();
        pts[i].y = rng.next_unit();
    }
    return pts;
}

namespace {

void check_radius(double r) {
    if (!(r >= 0.0) || r > kMaxRadius)
        throw std::domain_error("radius must lie in [0, sqrt(2)], got " +
                                std::to_string(r));
}

}  // namespace

GridIndex::GridIndex(std::vector<Point> points, double radius)
    : radius_(radius), points_(std::move(points)) {
    check_radius(radius);
    cell_ = (radius_ > 0.0 && radius_ < 1.0) ? radius_ : 1.0;
    buckets_.reserve(points_.size());
    for (std::size_t i = 0; i < points_.size(); ++i) {
        const Point& p = points_[i];
        if (!(p.x >= 0.0 && p.x <= 1.0 && p.y >= 0.0 && p.y <= 1.0))
            throw std::domain_error("point outside the unit square");
        buckets_[cell_key(p.x, p.y)].push_back(
            static_cast<std::uint32_t>(i));
    }
}

std::uint64_t GridIndex::cell_key(double x, double y) const {
    const auto cx = static_cast<std::int64_t>(std::floor(x / cell_));
    const auto cy = static_cast<std::int64_t>(std::floor(y / cell_));
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(cx)) << 32) |
           static_cast<std::uint64_t>(static_cast<std::uint32_t>(cy));
}

void GridIndex::gather(const Point& q, std::uint64_t skip,
                       std::vector<std::uint32_t>& out) const {
    if (radius_ == 0.0) return;
    const double r2 = radius_ * radius_;
    const auto cx = static_cast<std::int64_t>(std::floor(q.x / cell_));
    const auto cy = static_cast<std::int64_t>(std::floor(q.y / cell_));
    for (std::int64_t dx = -1; dx <= 1; ++dx) {
        for (std::int64_t dy = -1; dy <= 1; ++dy) {
            const std::uint64_t key =
                (static_cast<std::uint64_t>(
                     static_cast<std::uint32_t>(cx + dx))
                 << 32) |
                static_cast<std::uint64_t>(
                    static_cast<std::uint32_t>(cy + dy));
            const auto it = buckets_.find(key);
            if (it == buckets_.end()) continue;
            for (const std::uint32_t id : it->second) {
                if (id == skip) continue;
                if (squared_distance(points_[id], q) <= r2) out.push_back(id);
            }
        }
    }
}

std::size_t GridIndex::count_within(const Point& q, std::uint64_t skip) const {
    if (radius_ == 0.0) return 0;
    std::size_t count = 0;
    const double r2 = radius_ * radius_;
    const auto cx = static_cast<std::int64_t>(std::floor(q.x / cell_));
    const auto cy = static_cast<std::int64_t>(std::floor(q.y / cell_));
    for (std::int64_t dx = -1; dx <= 1; ++dx) {
        for (std::int64_t dy = -1; dy <= 1; ++dy) {
            const std::uint64_t key =
                (static_cast<std::uint64_t>(
                     static_cast<std::uint32_t>(cx + dx))
                 << 32) |
                static_cast<std::uint64_t>(
                    static_cast<std::uint32_t>(cy + dy));
            const auto it = buckets_.find(key);
            if (it == buckets_.end()) continue;
            for (const std::uint32_t id : it->second) {
                if (id == skip) continue;
                if (squared_distance(points_[id], q) <= r2) ++count;
            }
        }
    }
    return count;
}

std::vector<std::uint32_t> GridIndex::neighbors_within(std::uint32_t v) const {
    if (v >= points_.size())
        throw std::invalid_argument("unknown point id " + std::to_string(v));
    std::vector<std::uint32_t> out;
    gather(points_[v], v, out);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::uint32_t> radius_neighbors(const GridIndex& index,
                                            std::uint32_t v, double r) {
    if (r != index.radius())
        throw std::invalid_argument(
            "query radius does not match the index radius");
    return index.neighbors_within(v);
}

namespace {

// Recursive adaptive Simpson on [a, b] with error control by interval
// halving.
template <typename F>
double adaptive_simpson(const F& f, double a, double b, double fa, double fm,
                        double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

template <typename F>
double integrate(const F& f, double a, double b, double tol) {
    if (!(b > a)) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a);
    const double fm = f(m);
    const double fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 48);
}

}  // namespace

double pair_adjacency_probability(double r) {
    check_radius(r);
    if (r <= 1.0) {
        const double r2 = r * r;
        return 3.141592653589793 * r2 - (8.0 / 3.0) * r2 * r + 0.5 * r2 * r2;
    }
    // Coordinate gaps U = |x1-x2| and V = |y1-y2| are independent with
    // density 2(1-u) on [0,1] and CDF 2v - v^2. For u below
    // a = sqrt(r^2 - 1) the disc spans the full V range, so
    //   P = (2a - a^2) + integral_a^1 2(1-u) (2w - w^2) du,  w = sqrt(r^2-u^2).
    const double a = std::sqrt(r * r - 1.0);
    const double head = 2.0 * a - a * a;
    const auto f = [r](double u) {
        const double w2 = r * r - u * u;
        const double w = std::sqrt(std::max(w2, 0.0));
        return 2.0 * (1.0 - u) * (2.0 * w - w2);
    };
    const double tail = integrate(f, a, 1.0, 1e-12);
    return std::min(head + tail, 1.0);
}

}  // namespace mlrgg

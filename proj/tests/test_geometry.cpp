#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "mlrgg/geometry.hpp"
#include "mlrgg/rng.hpp"

using namespace mlrgg;

namespace {

// Test-local integrator: fixed-depth interval halving, written without
// reference to the library's quadrature so the two can disagree.
template <typename F>
double bisect_integrate(const F& f, double a, double b, int depth) {
    if (depth == 0) {
        const double m = 0.5 * (a + b);
        return (b - a) / 6.0 * (f(a) + 4.0 * f(m) + f(b));
    }
    const double m = 0.5 * (a + b);
    return bisect_integrate(f, a, m, depth - 1) +
           bisect_integrate(f, m, b, depth - 1);
}

// Independent oracle for the pair probability: both coordinate gaps are
// integrated numerically (nested), never using the closed form or the CDF
// head-term split the implementation relies on.
double oracle_pair_probability(double r) {
    const auto outer = [r](double u) {
        const double w2 = r * r - u * u;
        if (w2 <= 0.0) return 0.0;
        const double vmax = std::min(1.0, std::sqrt(w2));
        const auto inner = [](double v) { return 2.0 * (1.0 - v); };
        return 2.0 * (1.0 - u) * bisect_integrate(inner, 0.0, vmax, 6);
    };
    return bisect_integrate(outer, 0.0, std::min(1.0, r), 14);
}

std::vector<Point> random_points(std::size_t n, std::uint64_t seed) {
    RngStream s(seed);
    return sample_positions(n, s);
}

}  // namespace

TEST_CASE("position sampling is deterministic and in range") {
    RngStream a(5), b(5);
    const auto p1 = sample_positions(1000, a);
    const auto p2 = sample_positions(1000, b);
    REQUIRE(p1.size() == 1000);
    CHECK(p1 == p2);
    for (const Point& p : p1) {
        CHECK(p.x >= 0.0);
        CHECK(p.x <= 1.0);
        CHECK(p.y >= 0.0);
        CHECK(p.y <= 1.0);
    }
    RngStream c(6);
    CHECK(sample_positions(0, c).empty());
}

TEST_CASE("position sampling matches uniform moments") {
    RngStream s(77);
    const int n = 100000;
    const auto pts = sample_positions(n, s);
    double sum_x = 0.0;
    int in_corner = 0;
    for (const Point& p : pts) {
        sum_x += p.x;
        if (p.x < 0.5 && p.y < 0.5) ++in_corner;
    }
    CHECK(std::fabs(sum_x / n - 0.5) < 0.003);
    CHECK(std::fabs(in_corner / static_cast<double>(n) - 0.25) < 0.006);
}

TEST_CASE("grid queries on a hand-built instance") {
    const std::vector<Point> pts = {{0.0, 0.0}, {0.0, 0.5}, {0.0, 1.0}};
    const GridIndex index(pts, 0.5);
    CHECK(index.cell_size() == 0.5);
    CHECK(index.neighbors_within(0) == std::vector<std::uint32_t>{1});
    CHECK(index.neighbors_within(1) == std::vector<std::uint32_t>{0, 2});
    CHECK(index.neighbors_within(2) == std::vector<std::uint32_t>{1});
    CHECK_THROWS_AS((void)index.neighbors_within(3), std::invalid_argument);
    CHECK_THROWS_AS((void)radius_neighbors(index, 0, 0.25),
                    std::invalid_argument);
    CHECK(radius_neighbors(index, 0, 0.5) == std::vector<std::uint32_t>{1});
}

TEST_CASE("radius zero yields no neighbors even for coincident points") {
    const std::vector<Point> pts = {{0.3, 0.3}, {0.3, 0.3}, {0.9, 0.9}};
    const GridIndex index(pts, 0.0);
    for (std::uint32_t v = 0; v < 3; ++v)
        CHECK(index.neighbors_within(v).empty());
}

TEST_CASE("isolated points report empty neighborhoods") {
    const std::vector<Point> pts = {{0.1, 0.1}, {0.9, 0.9}};
    const GridIndex index(pts, 0.2);
    CHECK(index.neighbors_within(0).empty());
    CHECK(index.neighbors_within(1).empty());
}

TEST_CASE("grid agrees with the all-pairs scan at every radius regime") {
    const auto pts = random_points(2000, 2024);
    for (const double r : {0.01, 0.1, 0.5, 1.0, 1.4}) {
        const GridIndex index(pts, r);
        CHECK(index.cell_size() == std::min(r, 1.0));
        for (std::uint32_t v = 0; v < pts.size(); ++v) {
            std::vector<std::uint32_t> brute;
            for (std::uint32_t u = 0; u < pts.size(); ++u)
                if (u != v && squared_distance(pts[u], pts[v]) <= r * r)
                    brute.push_back(u);
            REQUIRE(index.neighbors_within(v) == brute);
        }
    }
}

TEST_CASE("grid construction rejects bad inputs") {
    CHECK_THROWS_AS(GridIndex({{0.5, 0.5}}, -0.1), std::domain_error);
    CHECK_THROWS_AS(GridIndex({{0.5, 0.5}}, 1.5), std::domain_error);
    CHECK_THROWS_AS(GridIndex({{1.5, 0.5}}, 0.1), std::domain_error);
    CHECK_THROWS_AS(GridIndex({{0.5, -0.1}}, 0.1), std::domain_error);
}

TEST_CASE("pair probability closed form hits hand-computed anchors") {
    CHECK(pair_adjacency_probability(0.0) == 0.0);
    // pi/4 - 1/3 + 1/32 at r = 1/2.
    CHECK(pair_adjacency_probability(0.5) ==
          doctest::Approx(0.48331483006411527).epsilon(1e-12));
    // pi - 8/3 + 1/2 at r = 1.
    CHECK(pair_adjacency_probability(1.0) ==
          doctest::Approx(0.97492598692312557).epsilon(1e-12));
    CHECK(std::fabs(pair_adjacency_probability(0.1) - 0.0287993) < 1e-6);
    CHECK(pair_adjacency_probability(kMaxRadius) == 1.0);
}

TEST_CASE("pair probability agrees with the independent oracle") {
    for (const double r : {0.05, 0.1, 0.2, 0.35, 0.5, 0.75, 0.9, 0.99, 1.05,
                           1.2, 1.3, 1.41}) {
        CAPTURE(r);
        CHECK(std::fabs(pair_adjacency_probability(r) -
                        oracle_pair_probability(r)) < 1e-7);
    }
}

TEST_CASE("pair probability is continuous and monotone across the split") {
    CHECK(std::fabs(pair_adjacency_probability(1.0) -
                    pair_adjacency_probability(1.0 + 1e-9)) < 1e-8);
    double prev = -1.0;
    for (double r = 0.0; r <= 1.414; r += 0.01) {
        const double p = pair_adjacency_probability(r);
        CHECK(p >= prev);
        prev = p;
    }
    CHECK(prev <= 1.0);
}

TEST_CASE("pair probability brackets for small radii") {
    // pi r^2 (1 - 3r + 3r^2) <= p(r) <= pi r^2 on r <= 1/2.
    for (double r = 0.01; r <= 0.5; r += 0.01) {
        const double p = pair_adjacency_probability(r);
        const double upper = 3.141592653589793 * r * r;
        const double lower = upper * (1.0 - 3.0 * r + 3.0 * r * r);
        CHECK(p <= upper + 1e-15);
        CHECK(p >= lower - 1e-15);
    }
}

TEST_CASE("pair probability rejects radii outside the square's reach") {
    CHECK_THROWS_AS((void)pair_adjacency_probability(-0.01),
                    std::domain_error);
    CHECK_THROWS_AS((void)pair_adjacency_probability(1.42),
                    std::domain_error);
}

TEST_CASE("pair probability matches sampled pair frequencies") {
    RngStream root(31337);
    const int pairs = 1000000;
    const double r = 0.2;
    const double p = pair_adjacency_probability(r);
    int hits = 0;
    RngStream s = root.substream(0);
    for (int i = 0; i < pairs; ++i) {
        const Point a{s.next_unit(), s.next_unit()};
        const Point b{s.next_unit(), s.next_unit()};
        if (squared_distance(a, b) <= r * r) ++hits;
    }
    const double freq = hits / static_cast<double>(pairs);
    const double se = std::sqrt(p * (1.0 - p) / pairs);
    CHECK(std::fabs(freq - p) < 4.0 * se);
}

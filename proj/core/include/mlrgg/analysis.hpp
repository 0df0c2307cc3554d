#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mlrgg/graph.hpp"
#include "mlrgg/rainbow.hpp"

namespace mlrgg {

// Two-sided 95% normal quantile.
constexpr double kZ95 = 1.959963984540054;

struct WilsonInterval {
    double low = 0.0;
    double high = 1.0;
};

// Wilson score interval for a binomial proportion at 95% confidence.
// Throws std::invalid_argument when trials is zero.
WilsonInterval wilson95(std::uint64_t successes, std::uint64_t trials);

// Radius scale (ln n / n^(h-1))^(1/(2h)) around which rainbow connectivity
// of an h-layer instance turns on. Needs n >= 2 and h >= 2 (with a single
// layer the relevant scale is the plain connectivity radius instead);
// violations throw std::domain_error.
double threshold_radius(std::uint64_t n, int h);

struct ThresholdConstants {
    // Radii b * threshold_radius(n, h) and above connect asymptotically;
    // c * threshold_radius(n, h) and below do not.
    double b_lower = 0.0;
    double c_upper = 0.0;
    // True when the tuned two-layer pair (0.68, 0.56) was returned instead
    // of the general-h expressions.
    bool sharpened_two_layer = false;
};

// Constants of the connectivity threshold for h layers. h == 2 returns the
// sharpened pair unless use_general_formula asks for the generic
// expressions (useful as a diagnostic; the generic b at h = 2 is about
// 1.0079). Throws std::domain_error for h < 2.
ThresholdConstants theorem_constants(int h, bool use_general_formula = false);

struct LayerBound {
    std::optional<std::int64_t> value;
    std::string reason;  // set when value is absent
};

// Closed-form layer-count bounds (floor/ceil of two log ratios, natural
// logarithms throughout). The expressions are evaluated literally; a
// non-positive denominator or a non-positive result leaves the bound
// undefined with the offending quantity spelled out in reason. Requires
// n >= 3 and 0 < r < 1.
struct LayerBounds {
    LayerBound h0;  // fewer layers than this: asymptotically not connected
    LayerBound h1;  // at least this many layers: asymptotically connected
};

LayerBounds corollary_layer_bounds(std::uint64_t n, double r);

struct ReferenceFormulas {
    // sqrt((ln n - ln ln n) / (pi n)): the single-layer connectivity radius
    // scale.
    double connectivity_radius = 0.0;
    // sqrt(2) / r: the hop-count scale of a geometric graph at radius r.
    double expected_diameter = 0.0;
};

// Requires n >= 3 (so ln ln n is defined) and r > 0.
ReferenceFormulas reference_formulas(std::uint64_t n, double r);

struct RunOptions {
    unsigned workers = 1;
    std::uint64_t dp_budget_bits = kDefaultDpBudgetBits;
};

struct ProbabilityEstimate {
    std::uint64_t trials = 0;
    std::uint64_t successes = 0;
    double p_hat = 0.0;
    double ci_low = 0.0;
    double ci_high = 1.0;
    std::uint64_t seed = 0;
};

// Fraction of seeded instances at (n, r, h) that are rainbow connected,
// with a Wilson 95% interval. Trial t builds its graph from
// substream(seed, t), so results are reproducible and worker-count
// independent. Throws BudgetError before running anything when n * 2^h
// exceeds the reachability budget.
ProbabilityEstimate estimate_rainbow_probability(const GraphParams& params,
                                                 std::uint64_t trials,
                                                 std::uint64_t seed,
                                                 const RunOptions& opts = {});

struct SweepPoint {
    double r = 0.0;
    ProbabilityEstimate estimate;
};

// One estimate per radius, reported in ascending radius order regardless of
// the input order. Point i draws from substream(seed, i) of the sorted
// grid.
std::vector<SweepPoint> sweep_rainbow_probability(
    std::uint64_t n, int h, std::vector<double> radii, std::uint64_t trials,
    std::uint64_t seed, const RunOptions& opts = {});

struct ThresholdEstimate {
    double r_hat = 0.0;
    double bracket_low = 0.0;
    double bracket_high = 0.0;
    std::vector<SweepPoint> trace;  // every point probed, ascending radius
    // n <= 1 is connected at every radius; r_hat is then 0 by convention.
    bool degenerate = false;
    // Set when a final bracket endpoint's estimate sits on the wrong side
    // of 1/2 by more than three Wilson half-widths, i.e. the bisection was
    // driven by noise rather than signal.
    bool noisy = false;
};

// Noisy bisection for the radius where the connection probability crosses
// 1/2. Starts from [0, sqrt(2)], whose endpoint probabilities are known
// exactly (0 and 1 for n >= 2), and probes midpoints with fresh substreams
// until the bracket is narrower than tol. trials_per_point < 50 or
// tol <= 0 throw std::invalid_argument.
ThresholdEstimate estimate_threshold(std::uint64_t n, int h,
                                     std::uint64_t trials_per_point,
                                     double tol, std::uint64_t seed,
                                     const RunOptions& opts = {});

struct ExpansionSample {
    ExpansionProfile profile;
    // within[l-1]: step-l frontier size lies inside [lower_bounds[l-1],
    // upper_bounds[l-1]].
    std::vector<bool> within;
};

struct ExpansionResult {
    GraphParams params;
    std::uint64_t seed = 0;
    double scale = 0.0;  // n * r^2, the per-step growth factor
    // Step-l frontier size bounds, index l-1, for l = 1..h-1:
    // (pi/2) (n r^2 / 4)^l <= |frontier_l| <= ((3 pi / 2) n r^2)^l.
    std::vector<double> lower_bounds;
    std::vector<double> upper_bounds;
    std::vector<ExpansionSample> samples;
    std::vector<double> within_rate;  // fraction of samples within, per step
    // The bounds target h >= 3 with the radius near threshold_radius(n, h);
    // outside that regime results are reported but labeled accordingly.
    bool in_regime = false;
};

// Builds one seeded instance and measures color-ordered expansion from
// sampled sources. With all_permutations, every source is paired with each
// of the h! color orders (h <= 5 enforced); otherwise each sample draws one
// uniform order. Sample i draws from substream(seed, i + 1); the graph
// comes from substream(seed, 0).
ExpansionResult expansion_experiment(std::uint64_t n, double r, int h,
                                     std::uint64_t source_samples,
                                     std::uint64_t seed,
                                     const RunOptions& opts = {},
                                     bool all_permutations = false);

// Exact E|g([m])| = k (1 - (1 - 1/k)^m) for a uniform random map
// [m] -> [k], evaluated in log space so large m, k stay accurate.
// k must be positive.
double expected_image_size(std::uint64_t m, std::uint64_t k);

struct OccupancyTail {
    double a = 0.0;
    // Pr(|Y - EY| >= a) and its bound 2 exp(-2 a^2 / m).
    double centered_freq = 0.0;
    double centered_bound = 0.0;
    // Pr(|Y - m| > a) and its bound 2 exp(-2 (a - m^2/(2k))^2 / m); the
    // bound statement only carries meaning for a > m^2/(2k).
    double absolute_freq = 0.0;
    double absolute_bound = 0.0;
    bool absolute_bound_valid = false;
};

struct OccupancyResult {
    std::uint64_t m = 0;
    std::uint64_t k = 0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    double expected = 0.0;
    double mean = 0.0;
    double max_abs_deviation = 0.0;  // max over trials of |Y - EY|
    std::vector<OccupancyTail> tails;
};

// Samples Y = |image| of uniform random maps [m] -> [k] and compares tail
// frequencies against the two concentration bounds. Default deviation grid:
// {0.5, 1, 1.5, 2, 2.5, 3} * sqrt(m). Trial t draws from
// substream(seed, t).
OccupancyResult occupancy_experiment(std::uint64_t m, std::uint64_t k,
                                     std::uint64_t trials,
                                     std::uint64_t seed,
                                     std::span<const double> deviations = {});

struct BallStatistics {
    std::uint64_t n = 0;
    double r = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    double mean = 0.0;  // over every (vertex, trial) ball size
    std::uint64_t min = 0;
    std::uint64_t max = 0;
    double predicted = 0.0;  // (n - 1) * pair_adjacency_probability(r)
    // Expectation bracket pi n r^2 [1/4, 1] for the ball size.
    double lower = 0.0;
    double upper = 0.0;
    std::vector<double> per_trial_mean;
    // Fraction of samples with |Z - predicted| > predicted / 2, and the
    // concentration bound 2 exp(-predicted / 12) it should stay under.
    double half_dev_rate = 0.0;
    double half_dev_bound = 0.0;
};

// Single-layer ball sizes across seeded instances. Trial t builds its graph
// from substream(seed, t). Requires n >= 2 and trials >= 1.
BallStatistics ball_statistics_experiment(std::uint64_t n, double r,
                                          std::uint64_t trials,
                                          std::uint64_t seed,
                                          const RunOptions& opts = {});

}  // namespace mlrgg

#include "mlrgg/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_set>

#include "mlrgg/errors.hpp"
#include "mlrgg/parallel.hpp"
#include "mlrgg/rng.hpp"

namespace mlrgg {

namespace {

constexpr double kPi = std::numbers::pi;

unsigned effective_workers(const RunOptions& opts) {
    return opts.workers ? opts.workers : default_workers();
}

double half_width(const ProbabilityEstimate& est) {
    return 0.5 * (est.ci_high - est.ci_low);
}

}  // namespace

WilsonInterval wilson95(std::uint64_t successes, std::uint64_t trials) {
    if (trials == 0)
        throw std::invalid_argument("interval needs at least one trial");
    if (successes > trials)
        throw std::invalid_argument("more successes than trials");
    const double t = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / t;
    const double z2 = kZ95 * kZ95;
    const double denom = 1.0 + z2 / t;
    const double center = (p + z2 / (2.0 * t)) / denom;
    const double half =
        kZ95 * std::sqrt(p * (1.0 - p) / t + z2 / (4.0 * t * t)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

double threshold_radius(std::uint64_t n, int h) {
    if (h < 2)
        throw std::domain_error(
            "the multilayer threshold needs at least 2 layers");
    if (n < 2)
        throw std::domain_error("the threshold needs at least 2 vertices");
    const double ln_n = std::log(static_cast<double>(n));
    return std::exp((std::log(ln_n) - (h - 1) * ln_n) / (2.0 * h));
}

ThresholdConstants theorem_constants(int h, bool use_general_formula) {
    if (h < 2)
        throw std::domain_error(
            "threshold constants need at least 2 layers");
    if (h == 2 && !use_general_formula) return {0.68, 0.56, true};
    const double b = std::pow(
        std::pow(2.0, 2.0 + 3.0 * (h - 1)) / (kPi * kPi * kPi),
        1.0 / (2.0 * h));
    const double c =
        (2.0 / (3.0 * kPi)) * std::pow(1.0 / (2.0 * kPi), h - 1);
    return {b, c, false};
}

namespace {

LayerBound finish_layer_bound(double numerator, double denominator,
                              bool round_up) {
    LayerBound out;
    if (!(denominator > 0.0)) {
        out.reason = "denominator " + std::to_string(denominator) +
                     " is not positive";
        return out;
    }
    const double q = numerator / denominator;
    const double rounded = round_up ? std::ceil(q) : std::floor(q);
    if (!(rounded > 0.0)) {
        out.reason =
            "evaluates to " + std::to_string(rounded) + ", not positive";
        return out;
    }
    out.value = static_cast<std::int64_t>(rounded);
    return out;
}

}  // namespace

LayerBounds corollary_layer_bounds(std::uint64_t n, double r) {
    if (n < 3)
        throw std::domain_error("layer-count bounds need n >= 3");
    if (!(r > 0.0) || r >= 1.0)
        throw std::domain_error("layer-count bounds need 0 < r < 1");
    const double ln_n = std::log(static_cast<double>(n));
    const double ln_ln_n = std::log(ln_n);
    const double ln_r = std::log(r);
    LayerBounds out;
    out.h0 = finish_layer_bound(
        ln_n + ln_ln_n, 2.0 * ln_r + ln_n - std::log(4.0) + std::log(3.0 * kPi),
        false);
    out.h1 = finish_layer_bound(
        ln_n + ln_ln_n - std::log(2.0 * kPi * kPi * kPi),
        2.0 * ln_r - ln_n - std::log(8.0), true);
    return out;
}

ReferenceFormulas reference_formulas(std::uint64_t n, double r) {
    if (n < 3)
        throw std::domain_error("reference formulas need n >= 3");
    if (!(r > 0.0))
        throw std::domain_error("reference formulas need r > 0");
    const double ln_n = std::log(static_cast<double>(n));
    ReferenceFormulas out;
    out.connectivity_radius =
        std::sqrt((ln_n - std::log(ln_n)) / (kPi * static_cast<double>(n)));
    out.expected_diameter = std::sqrt(2.0) / r;
    return out;
}

ProbabilityEstimate estimate_rainbow_probability(const GraphParams& params,
                                                 std::uint64_t trials,
                                                 std::uint64_t seed,
                                                 const RunOptions& opts) {
    params.validate();
    if (trials == 0)
        throw std::invalid_argument("estimation needs at least one trial");
    check_reachability_budget(params.n, params.h, opts.dp_budget_bits);

    const RngStream root(seed);
    std::vector<std::uint8_t> connected(trials, 0);
    parallel_for(trials, effective_workers(opts), [&](std::uint64_t t) {
        const MultilayerGraph g =
            MultilayerGraph::generate_random(params, root.substream(t).key());
        connected[t] = is_rainbow_connected(g, ReportDetail::verdict,
                                            opts.dp_budget_bits)
                               .connected
                           ? 1
                           : 0;
    });
    const std::uint64_t successes =
        std::accumulate(connected.begin(), connected.end(), std::uint64_t{0});
    const WilsonInterval ci = wilson95(successes, trials);
    ProbabilityEstimate est;
    est.trials = trials;
    est.successes = successes;
    est.p_hat = static_cast<double>(successes) / static_cast<double>(trials);
    est.ci_low = ci.low;
    est.ci_high = ci.high;
    est.seed = seed;
    return est;
}

std::vector<SweepPoint> sweep_rainbow_probability(std::uint64_t n, int h,
                                                  std::vector<double> radii,
                                                  std::uint64_t trials,
                                                  std::uint64_t seed,
                                                  const RunOptions& opts) {
    std::sort(radii.begin(), radii.end());
    const RngStream root(seed);
    std::vector<SweepPoint> points;
    points.reserve(radii.size());
    for (std::size_t i = 0; i < radii.size(); ++i) {
        const GraphParams params{n, radii[i], h};
        points.push_back({radii[i],
                          estimate_rainbow_probability(
                              params, trials, root.substream(i).key(), opts)});
    }
    return points;
}

ThresholdEstimate estimate_threshold(std::uint64_t n, int h,
                                     std::uint64_t trials_per_point,
                                     double tol, std::uint64_t seed,
                                     const RunOptions& opts) {
    if (trials_per_point < 50)
        throw std::invalid_argument(
            "bisection needs at least 50 trials per point");
    if (!(tol > 0.0))
        throw std::invalid_argument("tolerance must be positive");
    GraphParams{n, 0.0, h}.validate();

    ThresholdEstimate out;
    if (n <= 1) {
        // Every instance is vacuously connected, so there is no crossing.
        out.degenerate = true;
        return out;
    }

    const RngStream root(seed);
    double lo = 0.0;
    double hi = kMaxRadius;
    std::uint64_t draws = 0;
    const auto probe = [&](double r) {
        const GraphParams params{n, r, h};
        ProbabilityEstimate est = estimate_rainbow_probability(
            params, trials_per_point, root.substream(draws).key(), opts);
        ++draws;
        out.trace.push_back({r, est});
        return est;
    };

    bool lo_probed = false;
    bool hi_probed = false;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        const ProbabilityEstimate est = probe(mid);
        if (est.p_hat < 0.5) {
            lo = mid;
            lo_probed = true;
        } else {
            hi = mid;
            hi_probed = true;
        }
    }
    out.bracket_low = lo;
    out.bracket_high = hi;
    out.r_hat = 0.5 * (lo + hi);

    // Fresh confirmation passes over the final bracket. The exact endpoints
    // r = 0 (never connected for n >= 2) and r = sqrt(2) (always connected)
    // need no sampling.
    if (lo_probed) {
        const ProbabilityEstimate check = probe(lo);
        if (check.p_hat - 0.5 > 3.0 * half_width(check)) out.noisy = true;
    }
    if (hi_probed) {
        const ProbabilityEstimate check = probe(hi);
        if (0.5 - check.p_hat > 3.0 * half_width(check)) out.noisy = true;
    }
    std::stable_sort(
        out.trace.begin(), out.trace.end(),
        [](const SweepPoint& a, const SweepPoint& b) { return a.r < b.r; });
    return out;
}

ExpansionResult expansion_experiment(std::uint64_t n, double r, int h,
                                     std::uint64_t source_samples,
                                     std::uint64_t seed,
                                     const RunOptions& opts,
                                     bool all_permutations) {
    const GraphParams params{n, r, h};
    params.validate();
    if (n == 0 && source_samples > 0)
        throw std::invalid_argument(
            "cannot sample sources from an empty graph");
    if (all_permutations && h > 5)
        throw std::invalid_argument(
            "the full permutation sweep is limited to 5 layers");

    const RngStream root(seed);
    ExpansionResult out;
    out.params = params;
    out.seed = seed;
    out.scale = static_cast<double>(n) * r * r;
    for (int l = 1; l < h; ++l) {
        out.lower_bounds.push_back((kPi / 2.0) * std::pow(out.scale / 4.0, l));
        out.upper_bounds.push_back(std::pow(1.5 * kPi * out.scale, l));
    }
    out.in_regime = false;
    if (h >= 3 && n >= 2) {
        const double ratio = r / threshold_radius(n, h);
        out.in_regime = ratio >= 0.25 && ratio <= 4.0;
    }

    const MultilayerGraph g =
        MultilayerGraph::generate_random(params, root.substream(0).key());

    std::vector<std::vector<int>> orders;
    if (all_permutations) {
        std::vector<int> sigma(static_cast<std::size_t>(h));
        std::iota(sigma.begin(), sigma.end(), 0);
        do {
            orders.push_back(sigma);
        } while (std::next_permutation(sigma.begin(), sigma.end()));
    }

    const std::uint64_t total =
        all_permutations ? source_samples * orders.size() : source_samples;
    out.samples.resize(total);
    parallel_for(total, effective_workers(opts), [&](std::uint64_t j) {
        std::vector<int> sigma;
        std::uint32_t source;
        if (all_permutations) {
            const std::uint64_t s = j / orders.size();
            RngStream stream = root.substream(s + 1);
            source = static_cast<std::uint32_t>(stream.next_below(n));
            sigma = orders[j % orders.size()];
        } else {
            RngStream stream = root.substream(j + 1);
            source = static_cast<std::uint32_t>(stream.next_below(n));
            sigma.resize(static_cast<std::size_t>(h));
            std::iota(sigma.begin(), sigma.end(), 0);
            for (std::size_t i = sigma.size() - 1; i > 0; --i)
                std::swap(sigma[i], sigma[stream.next_below(i + 1)]);
        }
        ExpansionSample& sample = out.samples[j];
        sample.profile = sigma_neighborhoods(g, source, sigma);
        sample.within.resize(static_cast<std::size_t>(h > 0 ? h - 1 : 0));
        for (int l = 1; l < h; ++l) {
            const double size =
                static_cast<double>(sample.profile.sizes[static_cast<std::size_t>(l)]);
            sample.within[static_cast<std::size_t>(l - 1)] =
                size >= out.lower_bounds[static_cast<std::size_t>(l - 1)] &&
                size <= out.upper_bounds[static_cast<std::size_t>(l - 1)];
        }
    });

    out.within_rate.assign(static_cast<std::size_t>(h > 0 ? h - 1 : 0), 0.0);
    if (total > 0) {
        for (const auto& sample : out.samples)
            for (std::size_t l = 0; l < out.within_rate.size(); ++l)
                out.within_rate[l] += sample.within[l] ? 1.0 : 0.0;
        for (auto& rate : out.within_rate)
            rate /= static_cast<double>(total);
    }
    return out;
}

double expected_image_size(std::uint64_t m, std::uint64_t k) {
    if (k == 0)
        throw std::invalid_argument("the codomain must not be empty");
    if (m == 0) return 0.0;
    const double dk = static_cast<double>(k);
    const double dm = static_cast<double>(m);
    return dk * (-std::expm1(dm * std::log1p(-1.0 / dk)));
}

OccupancyResult occupancy_experiment(std::uint64_t m, std::uint64_t k,
                                     std::uint64_t trials,
                                     std::uint64_t seed,
                                     std::span<const double> deviations) {
    if (m == 0 || k == 0)
        throw std::invalid_argument("m and k must be positive");
    if (trials == 0)
        throw std::invalid_argument("occupancy needs at least one trial");

    OccupancyResult out;
    out.m = m;
    out.k = k;
    out.trials = trials;
    out.seed = seed;
    out.expected = expected_image_size(m, k);

    std::vector<double> grid(deviations.begin(), deviations.end());
    if (grid.empty()) {
        const double root_m = std::sqrt(static_cast<double>(m));
        for (const double f : {0.5, 1.0, 1.5, 2.0, 2.5, 3.0})
            grid.push_back(f * root_m);
    }

    const RngStream root(seed);
    std::vector<std::uint64_t> image_sizes(trials);
    const bool dense_marks = k <= (1ull << 24);
    std::vector<std::uint64_t> stamp(dense_marks ? k : 0, 0);
    std::unordered_set<std::uint64_t> sparse_marks;
    for (std::uint64_t t = 0; t < trials; ++t) {
        RngStream stream = root.substream(t);
        std::uint64_t count = 0;
        if (dense_marks) {
            const std::uint64_t epoch = t + 1;
            for (std::uint64_t i = 0; i < m; ++i) {
                const std::uint64_t x = stream.next_below(k);
                if (stamp[x] != epoch) {
                    stamp[x] = epoch;
                    ++count;
                }
            }
        } else {
            sparse_marks.clear();
            for (std::uint64_t i = 0; i < m; ++i)
                sparse_marks.insert(stream.next_below(k));
            count = sparse_marks.size();
        }
        image_sizes[t] = count;
    }

    double sum = 0.0;
    double max_dev = 0.0;
    for (const std::uint64_t y : image_sizes) {
        sum += static_cast<double>(y);
        max_dev = std::max(max_dev,
                           std::fabs(static_cast<double>(y) - out.expected));
    }
    out.mean = sum / static_cast<double>(trials);
    out.max_abs_deviation = max_dev;

    const double dm = static_cast<double>(m);
    const double shift = dm * dm / (2.0 * static_cast<double>(k));
    for (const double a : grid) {
        OccupancyTail tail;
        tail.a = a;
        std::uint64_t centered = 0;
        std::uint64_t absolute = 0;
        for (const std::uint64_t y : image_sizes) {
            const double dy = static_cast<double>(y);
            if (std::fabs(dy - out.expected) >= a) ++centered;
            if (std::fabs(dy - dm) > a) ++absolute;
        }
        tail.centered_freq =
            static_cast<double>(centered) / static_cast<double>(trials);
        tail.absolute_freq =
            static_cast<double>(absolute) / static_cast<double>(trials);
        tail.centered_bound = 2.0 * std::exp(-2.0 * a * a / dm);
        tail.absolute_bound =
            2.0 * std::exp(-2.0 * (a - shift) * (a - shift) / dm);
        tail.absolute_bound_valid = a > shift;
        out.tails.push_back(tail);
    }
    return out;
}

BallStatistics ball_statistics_experiment(std::uint64_t n, double r,
                                          std::uint64_t trials,
                                          std::uint64_t seed,
                                          const RunOptions& opts) {
    if (n < 2)
        throw std::invalid_argument("ball statistics need n >= 2");
    if (trials == 0)
        throw std::invalid_argument("ball statistics need at least one trial");
    const GraphParams params{n, r, 1};
    params.validate();

    BallStatistics out;
    out.n = n;
    out.r = r;
    out.trials = trials;
    out.seed = seed;
    out.predicted =
        static_cast<double>(n - 1) * pair_adjacency_probability(r);
    out.lower = kPi * static_cast<double>(n) * r * r / 4.0;
    out.upper = kPi * static_cast<double>(n) * r * r;
    out.half_dev_bound = 2.0 * std::exp(-out.predicted / 12.0);

    struct TrialStats {
        double sum = 0.0;
        std::uint64_t min = 0;
        std::uint64_t max = 0;
        std::uint64_t half_dev = 0;
    };
    std::vector<TrialStats> stats(trials);
    const RngStream root(seed);
    parallel_for(trials, effective_workers(opts), [&](std::uint64_t t) {
        const MultilayerGraph g =
            MultilayerGraph::generate_random(params, root.substream(t).key());
        TrialStats s;
        s.min = n;
        for (std::uint32_t v = 0; v < n; ++v) {
            const std::uint64_t deg = g.layer(0).neighbors(v).size();
            s.sum += static_cast<double>(deg);
            s.min = std::min(s.min, deg);
            s.max = std::max(s.max, deg);
            if (std::fabs(static_cast<double>(deg) - out.predicted) >
                out.predicted / 2.0)
                ++s.half_dev;
        }
        stats[t] = s;
    });

    double total = 0.0;
    std::uint64_t half_dev = 0;
    out.min = n;
    out.max = 0;
    out.per_trial_mean.reserve(trials);
    for (const TrialStats& s : stats) {
        total += s.sum;
        half_dev += s.half_dev;
        out.min = std::min(out.min, s.min);
        out.max = std::max(out.max, s.max);
        out.per_trial_mean.push_back(s.sum / static_cast<double>(n));
    }
    out.mean = total / (static_cast<double>(n) * static_cast<double>(trials));
    out.half_dev_rate =
        static_cast<double>(half_dev) /
        (static_cast<double>(n) * static_cast<double>(trials));
    return out;
}

}  // namespace mlrgg

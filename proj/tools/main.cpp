#include <algorithm>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "mlrgg/analysis.hpp"
#include "mlrgg/csv.hpp"
#include "mlrgg/errors.hpp"
#include "mlrgg/fixture.hpp"
#include "mlrgg/graph_io.hpp"
#include "mlrgg/io.hpp"
#include "mlrgg/rainbow.hpp"

namespace {

using mlrgg::CsvTable;
using nlohmann::json;

std::string fmt(double value) { return mlrgg::format_double(value); }

void attach_config(CLI::App* sub, std::string& path) {
    sub->add_option(
        "--config", path,
        "JSON file mirroring this command's flags; flags override it");
}

std::string config_scalar(const json& value) {
    if (value.is_string()) return value.get<std::string>();
    if (value.is_boolean() || value.is_number()) return value.dump();
    throw std::invalid_argument(
        "config values must be scalars or arrays of scalars");
}

// Expands `--config FILE` into the equivalent flag tokens, appended after
// the explicit arguments. Keys already given on the command line are
// dropped, so flags override file values; unknown keys surface as unknown
// flags.
void expand_config_args(std::vector<std::string>& args) {
    std::string path;
    for (std::size_t i = 1; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size())
            path = args[i + 1];
        else if (args[i].starts_with("--config="))
            path = args[i].substr(9);
    }
    if (path.empty()) return;

    std::string text;
    try {
        text = mlrgg::read_file(path);
    } catch (const mlrgg::IoError& e) {
        throw std::invalid_argument(e.what());
    }
    const json doc = json::parse(text);
    if (!doc.is_object())
        throw std::invalid_argument("config must be a JSON object");
    for (const auto& [key, value] : doc.items()) {
        if (key == "config") continue;
        const std::string flag = "--" + key;
        bool given = false;
        for (const std::string& arg : args)
            if (arg == flag || arg.starts_with(flag + "="))
                given = true;
        if (given) continue;
        if (value.is_boolean()) {
            args.push_back(flag + "=" + value.dump());
        } else if (value.is_array()) {
            args.push_back(flag);
            for (const auto& element : value)
                args.push_back(config_scalar(element));
        } else {
            args.push_back(flag);
            args.push_back(config_scalar(value));
        }
    }
}

void write_summary_file(const std::string& path, const json& summary) {
    mlrgg::write_file_atomic(path, summary.dump(2) + "\n");
}

json estimate_json(const mlrgg::ProbabilityEstimate& est) {
    return json{{"trials", est.trials},
                {"successes", est.successes},
                {"p_hat", est.p_hat},
                {"ci_low", est.ci_low},
                {"ci_high", est.ci_high}};
}

void add_estimate_row(CsvTable& table, double r,
                      const mlrgg::ProbabilityEstimate& est) {
    table.add_row({CsvTable::field(r), CsvTable::field(est.trials),
                   CsvTable::field(est.successes), CsvTable::field(est.p_hat),
                   CsvTable::field(est.ci_low), CsvTable::field(est.ci_high)});
}

CsvTable estimate_table() {
    return CsvTable(
        {"r", "trials", "successes", "p_hat", "ci_low", "ci_high"});
}

struct GraphSource {
    std::string input;
    bool fixture = false;

    void attach(CLI::App* sub) {
        auto* in = sub->add_option("--input", input,
                                   "path to a graph document");
        auto* fx = sub->add_flag("--fixture", fixture,
                                 "use the bundled six-vertex instance");
        in->excludes(fx);
    }

    mlrgg::MultilayerGraph load() const {
        if (fixture) return mlrgg::bundled_fixture();
        if (input.empty())
            throw std::invalid_argument(
                "either --input or --fixture is required");
        return mlrgg::load_graph(input);
    }
};

struct GenCmd {
    std::uint64_t n = 0;
    double r = 0.0;
    int h = 1;
    std::uint64_t seed = 0;
    std::string out;

    std::string config;

    void attach(CLI::App& app) {
        auto* sub = app.add_subcommand(
            "gen", "generate a seeded random instance");
        attach_config(sub, config);
        sub->add_option("--n", n, "vertex count")->required();
        sub->add_option("--r", r, "connection radius")->required();
        sub->add_option("--h", h, "layer count")->required();
        sub->add_option("--seed", seed, "master seed")->required();
        sub->add_option("--out", out,
                        "graph document path (stdout when omitted)");
        sub->callback([this] { run(); });
    }

    void run() const {
        const auto g = mlrgg::MultilayerGraph::generate_random(
            mlrgg::GraphParams{n, r, h}, seed);
        const std::string doc = mlrgg::serialize(g);
        if (out.empty()) {
            std::cout << doc;
            return;
        }
        mlrgg::write_file_atomic(out, doc);
        std::uint64_t edges = 0;
        for (const std::uint64_t e : g.layer_edge_counts()) edges += e;
        std::cout << "wrote graph n=" << n << " r=" << fmt(r) << " h=" << h
                  << " seed=" << seed << " edges=" << edges << " to " << out
                  << "\n";
    }
};

struct FixtureCmd {
    std::string out;

    std::string config;

    void attach(CLI::App& app) {
        auto* sub = app.add_subcommand(
            "fixture", "emit the bundled six-vertex instance");
        attach_config(sub, config);
        sub->add_option("--out", out,
                        "graph document path (stdout when omitted)");
        sub->callback([this] { run(); });
    }

    void run() const {
        const std::string doc = mlrgg::serialize(mlrgg::bundled_fixture());
        if (out.empty()) {
            std::cout << doc;
            return;
        }
        mlrgg::write_file_atomic(out, doc);
        std::cout << "wrote fixture to " << out << "\n";
    }
};

struct CheckCmd {
    GraphSource source;
    bool full = false;
    std::uint64_t budget_bits = mlrgg::kDefaultDpBudgetBits;
    std::string out;

    std::string config;

    void attach(CLI::App& app) {
        auto* sub = app.add_subcommand(
            "check", "decide rainbow connectivity of a stored instance");
        attach_config(sub, config);
        source.attach(sub);
        sub->add_flag("--full", full,
                      "scan every source for exact pair counts");
        sub->add_option("--budget-bits", budget_bits,
                        "reachability state budget in bits");
        sub->add_option("--out", out, "JSON report path");
        sub->callback([this] { run(); });
    }

    void run() const {
        const auto g = source.load();
        const auto report = mlrgg::is_rainbow_connected(
            g,
            full ? mlrgg::ReportDetail::full : mlrgg::ReportDetail::verdict,
            budget_bits);
        if (report.connected) {
            std::cout << "rainbow connected\n";
        } else {
            std::cout << "not rainbow connected; first failure ("
                      << report.first_failure->first << ","
                      << report.first_failure->second << ")";
            if (full)
                std::cout << "; unconnected pairs "
                          << report.unconnected_pairs;
            std::cout << "\n";
        }
        if (out.empty()) return;
        json doc{{"connected", report.connected},
                 {"unconnected_pairs", report.unconnected_pairs}};
        doc["first_failure"] =
            report.first_failure
                ? json::array({report.first_failure->first,
                               report.first_failure->second})
                : json();
        if (full) doc["per_source_unconnected"] = report.per_source_unconnected;
        write_summary_file(out, doc);
    }
};

struct WitnessCmd {
    GraphSource source;
    std::uint32_t from = 0;
    std::uint32_t to = 0;
    std::uint64_t budget_bits = mlrgg::kDefaultDpBudgetBits;
    std::string out;

    std::string config;

    void attach(CLI::App& app) {
        auto* sub = app.add_subcommand(
            "witness", "produce a rainbow path between two vertices");
        attach_config(sub, config);
        source.attach(sub);
        sub->add_option("--from", from, "source vertex id")->required();
        sub->add_option("--to", to, "target vertex id")->required();
        sub->add_option("--budget-bits", budget_bits,
                        "reachability state budget in bits");
        sub->add_option("--out", out, "JSON witness path");
        sub->callback([this] { run(); });
    }

    void run() const {
        const auto g = source.load();
        const auto path = mlrgg::rainbow_witness(g, from, to, budget_bits);
        if (!path) {
            std::cout << "no rainbow path from " << from << " to " << to
                      << "\n";
        } else {
            std::cout << "rainbow path " << path->vertices[0];
            for (std::size_t i = 0; i < path->colors.size(); ++i)
                std::cout << " -[" << path->colors[i] << "]-> "
                          << path->vertices[i + 1];
            std::cout << "\n";
        }
        if (out.empty()) return;
        json doc{{"from", from}, {"to", to}, {"found", path.has_value()}};
        doc["vertices"] =
            path ? json(path->vertices) : json::array();
        doc["colors"] = path ? json(path->colors) : json::array();
        write_summary_file(out, doc);
    }
};

struct SweepCmd {
    std::uint64_t n = 0;
    int h = 1;
    std::vector<double> radii;
    double r_min = 0.0;
    double r_max = 0.0;
    std::uint64_t points = 0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    unsigned workers = 0;
    std::uint64_t budget_bits = mlrgg::kDefaultDpBudgetBits;
    std::string csv;
    std::string summary;

    std::string config;

    void attach(CLI::App& app) {
        auto* sub = app.add_subcommand(
            "sweep", "connection probability over a radius grid");
        attach_config(sub, config);
        sub->add_option("--n", n, "vertex count")->required();
        sub->add_option("--h", h, "layer count")->required();
        sub->add_option("--trials", trials, "trials per grid point")
            ->required();
        sub->add_option("--seed", seed, "master seed")->required();
        auto* list = sub->add_option("--radii", radii, "explicit radius grid");
        auto* lo = sub->add_option("--r-min", r_min, "grid start");
        auto* hi = sub->add_option("--r-max", r_max, "grid end");
        auto* np = sub->add_option("--points", points, "grid size");
        for (auto* opt : {lo, hi, np}) list->excludes(opt);
        sub->add_option("--workers", workers, "worker threads (0 = all)");
        sub->add_option("--budget-bits", budget_bits,
                        "reachability state budget in bits");
        sub->add_option("--csv", csv, "per-point CSV path");
        sub->add_option("--summary", summary, "JSON summary path");
        sub->callback([this] { run(); });
    }

    std::vector<double> grid() const {
        if (!radii.empty()) return radii;
        if (points < 2)
            throw std::invalid_argument(
                "either --radii or --r-min/--r-max/--points (>= 2) is "
                "required");
        if (!(r_min <= r_max))
            throw std::invalid_argument("--r-min must not exceed --r-max");
        std::vector<double> out;
        for (std::uint64_t i = 0; i < points; ++i)
            out.push_back(r_min + (r_max - r_min) *
                                      static_cast<double>(i) /
                                      static_cast<double>(points - 1));
        return out;
    }

    void run() const {
        mlrgg::RunOptions opts;
        opts.workers = workers;
        opts.dp_budget_bits = budget_bits;
        const auto result =
            mlrgg::sweep_rainbow_probability(n, h, grid(), trials, seed, opts);

        CsvTable table = estimate_table();
        json rows = json::array();
        for (const auto& point : result) {
            add_estimate_row(table, point.r, point.estimate);
            json row = estimate_json(point.estimate);
            row["r"] = point.r;
            rows.push_back(std::move(row));
        }
        json outputs = json::array();
        if (!csv.empty()) {
            mlrgg::save_csv(table, csv);
            outputs.push_back(csv);
        }
        if (!summary.empty()) {
            write_summary_file(
                summary,
                json{{"experiment", "sweep"},
                     {"params",
                      {{"n", n}, {"h", h}, {"trials", trials}}},
                     {"seed", seed},
                     {"outputs", outputs},
                     {"results", rows}});
        }
        std::cout << "sweep n=" << n << " h=" << h << " trials=" << trials
                  << " points=" << result.size();
        if (!result.empty())
            std::cout << " p_hat " << fmt(result.front().estimate.p_hat)
                      << ".." << fmt(result.back().estimate.p_hat);
        if (!csv.empty()) std::cout << " csv=" << csv;
        std::cout << "\n";
    }
};

struct ThresholdCmd {
    std::uint64_t n = 0;
    int h = 1;
    std::uint64_t trials_per_point = 200;
    double tol = 0.01;
    std::uint64_t seed = 0;
    unsigned workers = 0;
    std::uint64_t budget_bits = mlrgg::kDefaultDpBudgetBits;
    std::string csv;
    std::string summary;

    std::string config;

    void attach(CLI::App& app) {
        auto* sub = app.add_subcommand(
            "threshold", "bisect the radius where connection hits 1/2");
        attach_config(sub, config);
        sub->add_option("--n", n, "vertex count")->required();
        sub->add_option("--h", h, "layer count")->required();
        sub->add_option("--seed", seed, "master seed")->required();
        sub->add_option("--trials-per-point", trials_per_point,
                        "trials per probed radius");
        sub->add_option("--tol", tol, "bracket width target");
        sub->add_option("--workers", workers, "worker threads (0 = all)");
        sub->add_option("--budget-bits", budget_bits,
                        "reachability state budget in bits");
        sub->add_option("--csv", csv, "probe trace CSV path");
        sub->add_option("--summary", summary, "JSON summary path");
        sub->callback([this] { run(); });
    }

    void run() const {
        mlrgg::RunOptions opts;
        opts.workers = workers;
        opts.dp_budget_bits = budget_bits;
        const auto est = mlrgg::estimate_threshold(n, h, trials_per_point,
                                                   tol, seed, opts);

        CsvTable table = estimate_table();
        for (const auto& point : est.trace)
            add_estimate_row(table, point.r, point.estimate);
        json outputs = json::array();
        if (!csv.empty()) {
            mlrgg::save_csv(table, csv);
            outputs.push_back(csv);
        }
        if (!summary.empty()) {
            write_summary_file(
                summary,
                json{{"experiment", "threshold"},
                     {"params",
                      {{"n", n}, {"h", h},
                       {"trials_per_point", trials_per_point}, {"tol", tol}}},
                     {"seed", seed},
                     {"outputs", outputs},
                     {"results",
                      {{"r_hat", est.r_hat},
                       {"bracket_low", est.bracket_low},
                       {"bracket_high", est.bracket_high},
                       {"degenerate", est.degenerate},
                       {"noisy", est.noisy},
                       {"probes", est.trace.size()}}}});
        }
        if (est.degenerate) {
            std::cout << "threshold n=" << n << " h=" << h
                      << " degenerate (always connected)\n";
            return;
        }
        std::cout << "threshold n=" << n << " h=" << h
                  << " r_hat=" << fmt(est.r_hat) << " bracket ["
                  << fmt(est.bracket_low) << "," << fmt(est.bracket_high)
                  << "] probes=" << est.trace.size();
        if (est.noisy) std::cout << " noisy";
        if (!csv.empty()) std::cout << " csv=" << csv;
        std::cout << "\n";
    }
};

struct ExpansionCmd {
    std::uint64_t n = 0;
    double r = 0.0;
    int h = 1;
    std::uint64_t samples = 50;
    std::uint64_t seed = 0;
    bool all_permutations = false;
    unsigned workers = 0;
    std::string csv;
    std::string summary;

    std::string config;

    void attach(CLI::App& app) {
        auto* sub = app.add_subcommand(
            "expansion", "frontier growth under color-ordered expansion");
        attach_config(sub, config);
        sub->add_option("--n", n, "vertex count")->required();
        sub->add_option("--r", r, "connection radius")->required();
        sub->add_option("--h", h, "layer count")->required();
        sub->add_option("--seed", seed, "master seed")->required();
        sub->add_option("--samples", samples, "sampled sources");
        sub->add_flag("--all-permutations", all_permutations,
                      "pair each source with every color order");
        sub->add_option("--workers", workers, "worker threads (0 = all)");
        sub->add_option("--csv", csv, "per-sample CSV path");
        sub->add_option("--summary", summary, "JSON summary path");
        sub->callback([this] { run(); });
    }

    void run() const {
        mlrgg::RunOptions opts;
        opts.workers = workers;
        const auto res = mlrgg::expansion_experiment(
            n, r, h, samples, seed, opts, all_permutations);

        CsvTable table({"sample", "source", "order", "step", "frontier",
                        "lower", "upper", "within"});
        for (std::size_t j = 0; j < res.samples.size(); ++j) {
            const auto& sample = res.samples[j];
            std::string order;
            for (const int c : sample.profile.sigma) {
                if (!order.empty()) order += ';';
                order += std::to_string(c);
            }
            for (std::size_t l = 1; l <= sample.within.size(); ++l) {
                table.add_row(
                    {CsvTable::field(static_cast<std::uint64_t>(j)),
                     CsvTable::field(
                         static_cast<std::uint64_t>(sample.profile.source)),
                     order, CsvTable::field(static_cast<std::uint64_t>(l)),
                     CsvTable::field(sample.profile.sizes[l]),
                     CsvTable::field(res.lower_bounds[l - 1]),
                     CsvTable::field(res.upper_bounds[l - 1]),
                     CsvTable::field(
                         static_cast<std::uint64_t>(sample.within[l - 1]))});
            }
        }
        json outputs = json::array();
        if (!csv.empty()) {
            mlrgg::save_csv(table, csv);
            outputs.push_back(csv);
        }
        if (!summary.empty()) {
            write_summary_file(
                summary,
                json{{"experiment", "expansion"},
                     {"params",
                      {{"n", n}, {"r", r}, {"h", h}, {"samples", samples},
                       {"all_permutations", all_permutations}}},
                     {"seed", seed},
                     {"outputs", outputs},
                     {"results",
                      {{"scale", res.scale},
                       {"lower_bounds", res.lower_bounds},
                       {"upper_bounds", res.upper_bounds},
                       {"within_rate", res.within_rate},
                       {"in_regime", res.in_regime}}}});
        }
        std::cout << "expansion n=" << n << " r=" << fmt(r) << " h=" << h
                  << " samples=" << res.samples.size()
                  << " scale=" << fmt(res.scale) << " within=[";
        for (std::size_t l = 0; l < res.within_rate.size(); ++l)
            std::cout << (l ? "," : "") << fmt(res.within_rate[l]);
        std::cout << "] regime="
                  << (res.in_regime ? "near-threshold" : "off-regime");
        if (!csv.empty()) std::cout << " csv=" << csv;
        std::cout << "\n";
    }
};

struct OccupancyCmd {
    std::uint64_t m = 0;
    std::uint64_t k = 0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    std::vector<double> deviations;
    std::string csv;
    std::string summary;

    std::string config;

    void attach(CLI::App& app) {
        auto* sub = app.add_subcommand(
            "occupancy", "image size of random maps vs its tail bounds");
        attach_config(sub, config);
        sub->add_option("--m", m, "domain size")->required();
        sub->add_option("--k", k, "codomain size")->required();
        sub->add_option("--trials", trials, "sampled maps")->required();
        sub->add_option("--seed", seed, "master seed")->required();
        sub->add_option("--deviations", deviations,
                        "deviation grid (default {0.5..3} * sqrt(m))");
        sub->add_option("--csv", csv, "per-deviation CSV path");
        sub->add_option("--summary", summary, "JSON summary path");
        sub->callback([this] { run(); });
    }

    void run() const {
        const auto res =
            mlrgg::occupancy_experiment(m, k, trials, seed, deviations);

        CsvTable table({"a", "centered_freq", "centered_bound",
                        "absolute_freq", "absolute_bound",
                        "absolute_bound_valid"});
        json tails = json::array();
        for (const auto& tail : res.tails) {
            table.add_row(
                {CsvTable::field(tail.a), CsvTable::field(tail.centered_freq),
                 CsvTable::field(tail.centered_bound),
                 CsvTable::field(tail.absolute_freq),
                 CsvTable::field(tail.absolute_bound),
                 CsvTable::field(
                     static_cast<std::uint64_t>(tail.absolute_bound_valid))});
            tails.push_back(json{{"a", tail.a},
                                 {"centered_freq", tail.centered_freq},
                                 {"centered_bound", tail.centered_bound},
                                 {"absolute_freq", tail.absolute_freq},
                                 {"absolute_bound", tail.absolute_bound},
                                 {"absolute_bound_valid",
                                  tail.absolute_bound_valid}});
        }
        json outputs = json::array();
        if (!csv.empty()) {
            mlrgg::save_csv(table, csv);
            outputs.push_back(csv);
        }
        if (!summary.empty()) {
            write_summary_file(
                summary,
                json{{"experiment", "occupancy"},
                     {"params", {{"m", m}, {"k", k}, {"trials", trials}}},
                     {"seed", seed},
                     {"outputs", outputs},
                     {"results",
                      {{"expected", res.expected},
                       {"mean", res.mean},
                       {"max_abs_deviation", res.max_abs_deviation},
                       {"tails", tails}}}});
        }
        std::cout << "occupancy m=" << m << " k=" << k
                  << " trials=" << trials << " expected=" << fmt(res.expected)
                  << " mean=" << fmt(res.mean)
                  << " max_dev=" << fmt(res.max_abs_deviation);
        if (!csv.empty()) std::cout << " csv=" << csv;
        std::cout << "\n";
    }
};

struct BallsCmd {
    std::uint64_t n = 0;
    double r = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    unsigned workers = 0;
    std::string csv;
    std::string summary;

    std::string config;

    void attach(CLI::App& app) {
        auto* sub = app.add_subcommand(
            "balls", "single-layer ball sizes vs prediction and bracket");
        attach_config(sub, config);
        sub->add_option("--n", n, "vertex count")->required();
        sub->add_option("--r", r, "connection radius")->required();
        sub->add_option("--trials", trials, "sampled instances")->required();
        sub->add_option("--seed", seed, "master seed")->required();
        sub->add_option("--workers", workers, "worker threads (0 = all)");
        sub->add_option("--csv", csv, "per-trial CSV path");
        sub->add_option("--summary", summary, "JSON summary path");
        sub->callback([this] { run(); });
    }

    void run() const {
        mlrgg::RunOptions opts;
        opts.workers = workers;
        const auto res =
            mlrgg::ball_statistics_experiment(n, r, trials, seed, opts);

        CsvTable table({"trial", "mean_ball_size"});
        for (std::size_t t = 0; t < res.per_trial_mean.size(); ++t)
            table.add_row({CsvTable::field(static_cast<std::uint64_t>(t)),
                           CsvTable::field(res.per_trial_mean[t])});
        json outputs = json::array();
        if (!csv.empty()) {
            mlrgg::save_csv(table, csv);
            outputs.push_back(csv);
        }
        if (!summary.empty()) {
            write_summary_file(
                summary,
                json{{"experiment", "balls"},
                     {"params",
                      {{"n", n}, {"r", r}, {"trials", trials}}},
                     {"seed", seed},
                     {"outputs", outputs},
                     {"results",
                      {{"mean", res.mean},
                       {"min", res.min},
                       {"max", res.max},
                       {"predicted", res.predicted},
                       {"lower", res.lower},
                       {"upper", res.upper},
                       {"half_dev_rate", res.half_dev_rate},
                       {"half_dev_bound", res.half_dev_bound}}}});
        }
        std::cout << "balls n=" << n << " r=" << fmt(r)
                  << " trials=" << trials << " mean=" << fmt(res.mean)
                  << " predicted=" << fmt(res.predicted) << " bracket=["
                  << fmt(res.lower) << "," << fmt(res.upper) << "]";
        if (!csv.empty()) std::cout << " csv=" << csv;
        std::cout << "\n";
    }
};

struct FormulasCmd {
    std::uint64_t n = 0;
    int h = 2;
    std::optional<double> r;
    std::string out;

    std::string config;

    void attach(CLI::App& app) {
        auto* sub = app.add_subcommand(
            "formulas", "closed-form radii, constants and layer bounds");
        attach_config(sub, config);
        sub->add_option("--n", n, "vertex count")->required();
        sub->add_option("--h", h, "layer count (default 2)");
        sub->add_option("--r", r, "radius for the radius-dependent formulas");
        sub->add_option("--out", out, "JSON path (stdout when omitted)");
        sub->callback([this] { run(); });
    }

    void run() const {
        const auto constants = mlrgg::theorem_constants(h);
        json doc{{"n", n},
                 {"h", h},
                 {"threshold_radius", mlrgg::threshold_radius(n, h)},
                 {"constants",
                  {{"b_lower", constants.b_lower},
                   {"c_upper", constants.c_upper},
                   {"sharpened_two_layer", constants.sharpened_two_layer}}}};
        if (r) {
            const auto ref = mlrgg::reference_formulas(n, *r);
            doc["r"] = *r;
            doc["connectivity_radius"] = ref.connectivity_radius;
            doc["expected_diameter"] = ref.expected_diameter;
            if (*r < 1.0) {
                const auto bounds = mlrgg::corollary_layer_bounds(n, *r);
                const auto bound_json = [](const mlrgg::LayerBound& b) {
                    return json{{"value", b.value ? json(*b.value) : json()},
                                {"reason", b.reason}};
                };
                doc["layer_bounds"] = json{{"h0", bound_json(bounds.h0)},
                                           {"h1", bound_json(bounds.h1)}};
            } else {
                doc["layer_bounds"] = json();
            }
        }
        const std::string text = doc.dump(2) + "\n";
        if (out.empty()) {
            std::cout << text;
            return;
        }
        mlrgg::write_file_atomic(out, text);
        std::cout << "wrote formulas for n=" << n << " h=" << h << " to "
                  << out << "\n";
    }
};

struct Commands {
    GenCmd gen;
    FixtureCmd fixture;
    CheckCmd check;
    WitnessCmd witness;
    SweepCmd sweep;
    ThresholdCmd threshold;
    ExpansionCmd expansion;
    OccupancyCmd occupancy;
    BallsCmd balls;
    FormulasCmd formulas;

    void attach(CLI::App& app) {
        gen.attach(app);
        check.attach(app);
        witness.attach(app);
        sweep.attach(app);
        threshold.attach(app);
        expansion.attach(app);
        occupancy.attach(app);
        balls.attach(app);
        formulas.attach(app);
        fixture.attach(app);
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "multilayered random geometric graphs: generation, rainbow "
        "connectivity and seeded experiments"};
    app.set_help_flag("--help", "print this help message and exit");
    app.require_subcommand(1);
    Commands commands;
    commands.attach(app);

    try {
        std::vector<std::string> args(argv + 1, argv + argc);
        expand_config_args(args);
        std::reverse(args.begin(), args.end());
        app.parse(std::move(args));
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const mlrgg::BudgetError& e) {
        std::cerr << "budget error: " << e.what() << "\n";
        return 3;
    } catch (const mlrgg::IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 4;
    } catch (const mlrgg::FormatError& e) {
        std::cerr << "format error: " << e.what() << "\n";
        return 2;
    } catch (const json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

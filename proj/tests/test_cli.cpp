#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

#include <nlohmann/json.hpp>

#include "mlrgg/csv.hpp"
#include "mlrgg/fixture.hpp"
#include "mlrgg/graph_io.hpp"
#include "mlrgg/io.hpp"

namespace {

using nlohmann::json;

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run_cli(const std::string& args) {
    const std::string cmd =
        std::string(MLRGG_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = ::popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult res;
    char buf[4096];
    std::size_t got = 0;
    while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0)
        res.output.append(buf, got);
    const int status = ::pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

class TempDir {
public:
    TempDir() {
        path_ = std::filesystem::temp_directory_path() /
                ("mlrgg_cli_" + std::to_string(::getpid()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    std::string file(const std::string& name) const {
        return (path_ / name).string();
    }

private:
    std::filesystem::path path_;
};

}  // namespace

TEST_CASE("help lists every command") {
    const auto res = run_cli("--help");
    CHECK(res.exit_code == 0);
    for (const char* cmd :
         {"gen", "check", "witness", "sweep", "threshold", "expansion",
          "occupancy", "balls", "formulas", "fixture"})
        CHECK(res.output.find(cmd) != std::string::npos);
}

TEST_CASE("gen emits byte-identical documents across runs") {
    const auto a = run_cli("gen --n 100 --r 0.1 --h 2 --seed 42");
    const auto b = run_cli("gen --n 100 --r 0.1 --h 2 --seed 42");
    CHECK(a.exit_code == 0);
    CHECK(a.output == b.output);
    CHECK(a.output == mlrgg::serialize(mlrgg::deserialize(a.output)));

    TempDir dir;
    const std::string f1 = dir.file("a.json");
    const std::string f2 = dir.file("b.json");
    CHECK(run_cli("gen --n 100 --r 0.1 --h 2 --seed 42 --out " + f1)
              .exit_code == 0);
    CHECK(run_cli("gen --n 100 --r 0.1 --h 2 --seed 42 --out " + f2)
              .exit_code == 0);
    CHECK(mlrgg::read_file(f1) == mlrgg::read_file(f2));
    CHECK(mlrgg::read_file(f1) == a.output);
}

TEST_CASE("fixture command prints the bundled instance document") {
    const auto res = run_cli("fixture");
    CHECK(res.exit_code == 0);
    CHECK(res.output == mlrgg::serialize(mlrgg::bundled_fixture()));
}

TEST_CASE("check reports the fixture verdict line") {
    const auto res = run_cli("check --fixture");
    CHECK(res.exit_code == 0);
    CHECK(res.output == "not rainbow connected; first failure (0,5)\n");

    const auto full = run_cli("check --fixture --full");
    CHECK(full.exit_code == 0);
    CHECK(full.output ==
          "not rainbow connected; first failure (0,5); unconnected pairs "
          "1\n");
}

TEST_CASE("gen then check round trips through a file") {
    TempDir dir;
    const std::string path = dir.file("g.json");
    CHECK(run_cli("gen --n 40 --r 0.6 --h 2 --seed 7 --out " + path)
              .exit_code == 0);
    const auto res = run_cli("check --input " + path);
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("rainbow connected") != std::string::npos);
}

TEST_CASE("witness prints paths and absences on the fixture") {
    const auto found = run_cli("witness --fixture --from 2 --to 4");
    CHECK(found.exit_code == 0);
    CHECK(found.output == "rainbow path 2 -[1]-> 0 -[0]-> 4\n");

    const auto absent = run_cli("witness --fixture --from 0 --to 5");
    CHECK(absent.exit_code == 0);
    CHECK(absent.output == "no rainbow path from 0 to 5\n");

    TempDir dir;
    const std::string out = dir.file("w.json");
    CHECK(run_cli("witness --fixture --from 2 --to 4 --out " + out)
              .exit_code == 0);
    const json doc = json::parse(mlrgg::read_file(out));
    CHECK(doc.at("found").get<bool>());
    CHECK(doc.at("vertices") == json::array({2, 0, 4}));
    CHECK(doc.at("colors") == json::array({1, 0}));
}

TEST_CASE("formulas reports threshold radius and constants as JSON") {
    const auto res = run_cli("formulas --n 1000000 --h 2");
    CHECK(res.exit_code == 0);
    const json doc = json::parse(res.output);
    CHECK(doc.at("threshold_radius").get<double>() ==
          doctest::Approx(0.0609666).epsilon(1e-4));
    CHECK(doc.at("constants").at("b_lower").get<double>() == 0.68);
    CHECK(doc.at("constants").at("c_upper").get<double>() == 0.56);
    CHECK(doc.at("constants").at("sharpened_two_layer").get<bool>());

    const auto with_r = run_cli("formulas --n 1000000 --h 2 --r 0.1");
    const json doc2 = json::parse(with_r.output);
    CHECK(doc2.at("connectivity_radius").get<double>() ==
          doctest::Approx(0.0018873).epsilon(1e-3));
    CHECK(doc2.at("expected_diameter").get<double>() ==
          doctest::Approx(14.142135).epsilon(1e-6));
    CHECK(doc2.at("layer_bounds").at("h0").at("value").get<int>() == 1);
    CHECK(doc2.at("layer_bounds").at("h1").at("value").is_null());
}

TEST_CASE("config file mirrors flags and flags override it") {
    TempDir dir;
    const std::string cfg = dir.file("gen.json");
    mlrgg::write_file_atomic(cfg,
                             "{\"n\": 100, \"r\": 0.1, \"h\": 2, \"seed\": "
                             "42}\n");
    const auto from_cfg = run_cli("gen --config " + cfg);
    const auto from_flags = run_cli("gen --n 100 --r 0.1 --h 2 --seed 42");
    CHECK(from_cfg.exit_code == 0);
    CHECK(from_cfg.output == from_flags.output);

    const auto overridden = run_cli("gen --config " + cfg + " --seed 43");
    CHECK(overridden.exit_code == 0);
    CHECK(overridden.output != from_flags.output);
    CHECK(overridden.output ==
          run_cli("gen --n 100 --r 0.1 --h 2 --seed 43").output);

    const std::string sweep_cfg = dir.file("sweep.json");
    mlrgg::write_file_atomic(sweep_cfg,
                             "{\"n\": 64, \"h\": 2, \"trials\": 10, "
                             "\"seed\": 3, \"radii\": [0.1, 0.4]}\n");
    const auto sweep = run_cli("sweep --config " + sweep_cfg);
    CHECK(sweep.exit_code == 0);
    CHECK(sweep.output ==
          run_cli("sweep --n 64 --h 2 --trials 10 --seed 3 --radii 0.1 0.4")
              .output);
}

TEST_CASE("config errors exit with status 2") {
    TempDir dir;
    const std::string stray = dir.file("stray.json");
    mlrgg::write_file_atomic(
        stray, "{\"n\": 10, \"r\": 0.1, \"h\": 2, \"seed\": 1, \"bogus\": "
               "5}\n");
    CHECK(run_cli("gen --config " + stray).exit_code == 2);

    const std::string broken = dir.file("broken.json");
    mlrgg::write_file_atomic(broken, "not json\n");
    CHECK(run_cli("gen --config " + broken).exit_code == 2);

    const std::string array = dir.file("array.json");
    mlrgg::write_file_atomic(array, "[1, 2]\n");
    CHECK(run_cli("gen --config " + array).exit_code == 2);

    CHECK(run_cli("gen --config " + dir.file("absent.json")).exit_code == 2);
}

TEST_CASE("exit codes by failure category") {
    CHECK(run_cli("").exit_code == 2);
    CHECK(run_cli("gen --n 10 --r 0.1 --h 2").exit_code == 2);
    CHECK(run_cli("gen --n 10 --r 0.1 --h 2 --seed 1 --bogus").exit_code ==
          2);
    CHECK(run_cli("gen --n 10 --r 5.0 --h 2 --seed 1").exit_code == 2);
    CHECK(run_cli("witness --fixture --from 0 --to 0").exit_code == 2);
    CHECK(run_cli("witness --fixture --from 0 --to 99").exit_code == 2);
    CHECK(run_cli("check --fixture --budget-bits 16").exit_code == 3);
    CHECK(run_cli("check --input /nonexistent/graph.json").exit_code == 4);
    CHECK(run_cli("gen --n 10 --r 0.1 --h 2 --seed 1 --out "
                  "/nonexistent/dir/g.json")
              .exit_code == 4);
    CHECK(run_cli("check").exit_code == 2);

    TempDir dir;
    const std::string mangled = dir.file("mangled.json");
    mlrgg::write_file_atomic(mangled, "{\"version\": 9}\n");
    CHECK(run_cli("check --input " + mangled).exit_code == 2);
}

TEST_CASE("sweep artifacts parse back and keep ascending radius order") {
    TempDir dir;
    const std::string csv = dir.file("sweep.csv");
    const std::string summary = dir.file("sweep_summary.json");
    const auto res =
        run_cli("sweep --n 64 --h 2 --trials 20 --seed 3 --radii 0.4 0.05 "
                "0.2 --csv " +
                csv + " --summary " + summary);
    CHECK(res.exit_code == 0);

    const std::string text = mlrgg::read_file(csv);
    const auto rows = mlrgg::parse_csv(text);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0] == std::vector<std::string>{"r", "trials", "successes",
                                              "p_hat", "ci_low", "ci_high"});
    CHECK(std::stod(rows[1][0]) < std::stod(rows[2][0]));
    CHECK(std::stod(rows[2][0]) < std::stod(rows[3][0]));

    mlrgg::CsvTable table(rows[0]);
    for (std::size_t i = 1; i < rows.size(); ++i) table.add_row(rows[i]);
    CHECK(table.encode() == text);

    const json doc = json::parse(mlrgg::read_file(summary));
    CHECK(doc.at("experiment") == "sweep");
    CHECK(doc.at("seed") == 3);
    CHECK(doc.at("outputs") == json::array({csv}));
    REQUIRE(doc.at("results").size() == 3);
    for (const auto& row : doc.at("results"))
        CHECK(row.at("trials") == 20);
}

TEST_CASE("experiment outputs are identical across worker counts") {
    TempDir dir;
    const std::string csv = dir.file("t.csv");
    const std::string summary = dir.file("t.json");
    const std::string base =
        "threshold --n 48 --h 2 --seed 5 --trials-per-point 60 --tol 0.05 "
        "--csv " +
        csv + " --summary " + summary;

    const auto one = run_cli(base + " --workers 1");
    const std::string csv_one = mlrgg::read_file(csv);
    const std::string sum_one = mlrgg::read_file(summary);
    const auto two = run_cli(base + " --workers 2");
    CHECK(one.exit_code == 0);
    CHECK(one.output == two.output);
    CHECK(csv_one == mlrgg::read_file(csv));
    CHECK(sum_one == mlrgg::read_file(summary));
}

TEST_CASE("every experiment command runs and reports one summary line") {
    TempDir dir;
    const struct {
        const char* name;
        std::string args;
    } cases[] = {
        {"sweep", "sweep --n 32 --h 2 --trials 10 --seed 1 --r-min 0.1 "
                  "--r-max 0.5 --points 3"},
        {"threshold",
         "threshold --n 32 --h 2 --seed 2 --trials-per-point 50 --tol 0.1"},
        {"expansion",
         "expansion --n 400 --r 0.12 --h 3 --seed 3 --samples 4"},
        {"occupancy", "occupancy --m 50 --k 50 --trials 50 --seed 4"},
        {"balls", "balls --n 200 --r 0.1 --trials 5 --seed 5"},
    };
    for (const auto& c : cases) {
        const auto res = run_cli(c.args + " --csv " + dir.file("out.csv"));
        CHECK(res.exit_code == 0);
        CHECK(res.output.rfind(c.name, 0) == 0);
        CHECK(std::count(res.output.begin(), res.output.end(), '\n') == 1);
    }
}

TEST_CASE("expansion csv rows cover the bounded steps of every sample") {
    TempDir dir;
    const std::string csv = dir.file("exp.csv");
    const auto res = run_cli(
        "expansion --n 300 --r 0.15 --h 3 --seed 9 --samples 2 "
        "--all-permutations --csv " +
        csv);
    CHECK(res.exit_code == 0);
    const auto rows = mlrgg::parse_csv(mlrgg::read_file(csv));
    REQUIRE(rows.size() == 1 + 2 * 6 * 2);
    CHECK(rows[0][0] == "sample");
    CHECK(rows[1][3] == "1");
    CHECK(rows[2][3] == "2");
    CHECK(rows[1][2] == "0;1;2");
}

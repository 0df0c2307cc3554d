#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unistd.h>

#include <filesystem>
#include <string>
#include <vector>

#include "mlrgg/csv.hpp"
#include "mlrgg/errors.hpp"
#include "mlrgg/graph_io.hpp"
#include "mlrgg/io.hpp"

using namespace mlrgg;

namespace {

std::filesystem::path temp_path(const std::string& name) {
    return std::filesystem::temp_directory_path() /
           ("mlrgg_test_" + std::to_string(::getpid()) + "_" + name);
}

struct FileGuard {
    std::filesystem::path path;
    ~FileGuard() {
        std::error_code ec;
        std::filesystem::remove(path, ec);
    }
};

}  // namespace

TEST_CASE("file round trip") {
    const auto path = temp_path("roundtrip.txt");
    FileGuard guard{path};
    write_file_atomic(path.string(), "alpha\nbeta\n");
    CHECK(read_file(path.string()) == "alpha\nbeta\n");
    write_file_atomic(path.string(), "");
    CHECK(read_file(path.string()).empty());
    CHECK_FALSE(std::filesystem::exists(path.string() + ".tmp"));
}

TEST_CASE("io failures raise") {
    CHECK_THROWS_AS((void)read_file("/nonexistent/dir/file"), IoError);
    CHECK_THROWS_AS(write_file_atomic("/nonexistent/dir/file", "x"), IoError);
}

TEST_CASE("graph files survive a disk round trip") {
    const auto g =
        MultilayerGraph::generate_random(GraphParams{25, 0.3, 2}, 77);
    const auto path = temp_path("graph.json");
    FileGuard guard{path};
    save_graph(g, path.string());
    CHECK(load_graph(path.string()) == g);

    write_file_atomic(path.string(), "{broken");
    CHECK_THROWS_AS((void)load_graph(path.string()), FormatError);
}

TEST_CASE("csv encoding quotes exactly when needed") {
    CsvTable table({"name", "value"});
    table.add_row({"plain", "1"});
    table.add_row({"with,comma", "2"});
    table.add_row({"with\"quote", "3"});
    table.add_row({"with\nnewline", "4"});
    const std::string text = table.encode();
    CHECK(text ==
          "name,value\r\n"
          "plain,1\r\n"
          "\"with,comma\",2\r\n"
          "\"with\"\"quote\",3\r\n"
          "\"with\nnewline\",4\r\n");

    CHECK(CsvTable::field(0.5) == "0.5");
    CHECK(CsvTable::field(std::uint64_t{42}) == "42");
    CHECK(CsvTable::field(std::int64_t{-7}) == "-7");

    CHECK_THROWS_AS(CsvTable({}), std::invalid_argument);
    CHECK_THROWS_AS(CsvTable({"a", "b"}).add_row({"only one"}),
                    std::invalid_argument);
}

TEST_CASE("csv parsing inverts encoding") {
    CsvTable table({"a", "b"});
    table.add_row({"x,y", "plain"});
    table.add_row({"he said \"hi\"", "line\nbreak"});
    const auto rows = parse_csv(table.encode());
    REQUIRE(rows.size() == 3);
    CHECK(rows[0] == std::vector<std::string>{"a", "b"});
    CHECK(rows[1] == std::vector<std::string>{"x,y", "plain"});
    CHECK(rows[2] == std::vector<std::string>{"he said \"hi\"", "line\nbreak"});

    CHECK(parse_csv("").empty());
    const auto bare = parse_csv("h1,h2\nv1,v2\n");
    REQUIRE(bare.size() == 2);
    CHECK(bare[1] == std::vector<std::string>{"v1", "v2"});

    CHECK_THROWS_AS((void)parse_csv("a,b\n\"unterminated"), FormatError);
    CHECK_THROWS_AS((void)parse_csv("a,b\nonly_one\n"), FormatError);
}

TEST_CASE("csv files are written atomically") {
    CsvTable table({"r", "p"});
    table.add_row({CsvTable::field(0.25), CsvTable::field(0.75)});
    const auto path = temp_path("table.csv");
    FileGuard guard{path};
    save_csv(table, path.string());
    CHECK(read_file(path.string()) == table.encode());
    CHECK_THROWS_AS(save_csv(table, "/nonexistent/dir/out.csv"), IoError);
}

#include "dimenfix/bench.hpp"
#include "dimenfix/error.hpp"

#include <doctest.h>

#include <cmath>

using namespace dimenfix;
using namespace dimenfix::bench;

namespace {

const char* small_grid = R"(
# quick grid
iterations = 20
learning_rate = 0.1
dims = 2
scale = 0,1
seeds = 1..3
inits = random
methods = vanilla, strict
dataset = iris | iris.csv | feature=sepal width | label=class
)";

} // namespace

TEST_CASE("parse_grid reads every key") {
    const BenchGrid g = parse_grid(small_grid, DIMENFIX_DATA_DIR);
    CHECK(g.iterations == 20);
    CHECK(g.dims == 2);
    CHECK(g.seeds == std::vector<std::uint64_t>{1, 2, 3});
    REQUIRE(g.methods.size() == 2);
    CHECK(method_name(g.methods[1]) == "strict");
    REQUIRE(g.datasets.size() == 1);
    CHECK(g.datasets[0].fixed_feature == "sepal width");
    CHECK(g.datasets[0].path == std::filesystem::path(DIMENFIX_DATA_DIR) / "iris.csv");
}

TEST_CASE("method names round trip") {
    for (const char* text : {"vanilla", "strict", "range:0.1", "gauss:0.2:0.9", "pca-only"}) {
        CHECK(method_name(parse_method(text)) == text);
    }
    CHECK(method_name(parse_method("gauss:0.2")) == "gauss:0.2:0.95");
    CHECK_THROWS_AS(parse_method("range"), ParseError);
    CHECK_THROWS_AS(parse_method("tsne"), ParseError);
    CHECK_THROWS_AS(parse_method("range:-1"), InvalidArgument);
}

TEST_CASE("parse_grid errors") {
    CHECK_THROWS_AS(parse_grid("bogus = 1\n"), ParseError);
    CHECK_THROWS_AS(parse_grid("no equals sign\n"), ParseError);
    CHECK_THROWS_AS(parse_grid("methods = vanilla\nseeds = 1\n"), InvalidArgument);
    CHECK_THROWS_AS(load_grid("/nonexistent.grid"), Error);
    CHECK_THROWS_AS(parse_grid("dataset = x | y | weird\nmethods = vanilla\nseeds = 1\n"), ParseError);
}

TEST_CASE("run_grid cardinality and determinism") {
    const BenchGrid g = parse_grid(small_grid, DIMENFIX_DATA_DIR);
    const BenchReport a = run_grid(g);
    REQUIRE(a.rows.size() == 6);
    for (const auto& r : a.rows) {
        CHECK(r.ok);
        CHECK(r.stress > 0.0);
        CHECK(r.knn_accuracy > 0.5);
    }
    REQUIRE(a.cells.size() == 2);
    CHECK(a.cells[0].runs == 3);

    const BenchReport b = run_grid(g, 2);
    for (std::size_t k = 0; k < a.rows.size(); ++k) {
        CHECK(a.rows[k].stress == b.rows[k].stress);
        CHECK(a.rows[k].seed == b.rows[k].seed);
    }

    const std::string csv = rows_csv(a);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 7);
    const std::string table = text_table(a, g);
    CHECK(table.find("Kruskal stress") != std::string::npos);
    CHECK(table.find("strict random") != std::string::npos);
}

TEST_CASE("a missing fixed feature fails only its own cells") {
    BenchGrid g = parse_grid(small_grid, DIMENFIX_DATA_DIR);
    g.datasets[0].fixed_feature = "no such feature";
    g.seeds = {1};
    const BenchReport r = run_grid(g);
    REQUIRE(r.rows.size() == 2);
    CHECK(r.rows[0].ok);
    CHECK_FALSE(r.rows[1].ok);
    CHECK(r.rows[1].error.find("no such feature") != std::string::npos);
    CHECK(r.cells[1].failures == 1);
    CHECK(std::isnan(r.cells[1].stress.median));
    CHECK(text_table(r, g).find("fail") != std::string::npos);
}

TEST_CASE("unreadable dataset becomes failure rows") {
    BenchGrid g = parse_grid(small_grid, DIMENFIX_DATA_DIR);
    g.datasets[0].path = "/nonexistent.csv";
    g.seeds = {1};
    const BenchReport r = run_grid(g);
    REQUIRE(r.rows.size() == 2);
    CHECK_FALSE(r.rows[0].ok);
    CHECK_FALSE(r.rows[1].ok);
}

TEST_CASE("pca-only and subsampling") {
    BenchGrid g = parse_grid(small_grid, DIMENFIX_DATA_DIR);
    g.methods = {PcaOnly{}};
    g.seeds = {1, 2};
    g.datasets[0].subsample = 50;
    const BenchReport r = run_grid(g);
    REQUIRE(r.rows.size() == 2);
    CHECK(r.rows[0].ok);
    CHECK(r.rows[0].stress == r.rows[1].stress);
}

TEST_CASE("summarize") {
    const Summary s = summarize({4.0, 1.0, 3.0, 2.0, std::nan("")});
    CHECK(s.median == 2.5);
    CHECK(s.iqr == doctest::Approx(1.5));
    const Summary odd = summarize({5.0, 1.0, 3.0});
    CHECK(odd.median == 3.0);
    CHECK(odd.iqr == 2.0);
    CHECK(std::isnan(summarize({}).median));
}

TEST_CASE("shipped grids parse") {
    CHECK_NOTHROW(load_grid(DIMENFIX_GRID_DIR "/full.grid"));
    CHECK_NOTHROW(load_grid(DIMENFIX_GRID_DIR "/quick.grid"));
    const BenchGrid g = load_grid(DIMENFIX_GRID_DIR "/full.grid");
    CHECK(g.datasets.size() == 4);
    CHECK(g.iterations == 500);
}

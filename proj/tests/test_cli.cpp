#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "strategem/cli.hpp"
#include "strategem/render.hpp"

using namespace strategem;

namespace {

std::filesystem::path temp_file(const std::string& stem) {
    return std::filesystem::temp_directory_path() / ("strategem_test_" + stem);
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream file(path, std::ios::binary);
    REQUIRE(file);
    std::ostringstream out;
    out << file.rdbuf();
    return out.str();
}

struct TempFile {
    explicit TempFile(const std::string& stem) : path(temp_file(stem)) {}
    ~TempFile() { std::filesystem::remove(path); }
    std::string str() const { return path.string(); }
    std::filesystem::path path;
};

}  // namespace

TEST_CASE("csv rendering matches the frozen examples", "[cli]") {
    CHECK(render_csv(sweep(0)) == "k,n,benny_wins\n0,0,1\n");
    CHECK(render_csv(sweep(1)) == "k,n,benny_wins\n0,0,1\n0,1,0\n1,0,0\n1,1,1\n");
}

TEST_CASE("csv parsing inverts csv rendering", "[cli]") {
    const SweepGrid grid = sweep(13);
    const SweepGrid back = parse_grid_csv(render_csv(grid));
    CHECK(back == grid);

    CHECK_THROWS_AS(parse_grid_csv("nonsense\n"), InvalidConfigError);
    CHECK_THROWS_AS(parse_grid_csv("k,n,benny_wins\n0,0,2\n"), InvalidConfigError);
    CHECK_THROWS_AS(parse_grid_csv("k,n,benny_wins\n0,0,1\n1,1,1\n"), InvalidConfigError);
}

TEST_CASE("pgm rendering matches the frozen examples", "[cli]") {
    CHECK(render_pgm(sweep(0)) == "P2\n1 1\n1\n0\n");
    CHECK(render_pgm(sweep(1)) == "P2\n2 2\n1\n1 0\n0 1\n");
}

TEST_CASE("dot rendering lists every node with its move order", "[cli]") {
    const HeapsGame rules;
    const auto lone =
        extract_strategy(Player::R, Criterion::Winning, Player::B, HeapsConfig{0, 0}, rules);
    REQUIRE(lone.has_value());
    const std::string dot = render_dot(*lone, rules);
    CHECK(dot == "digraph strategy {\n  node [shape=box];\n"
                 "  n0 [label=\"B:0 0\\nRWin\"];\n}\n");

    const auto bench =
        extract_strategy(Player::R, Criterion::Winning, Player::R, HeapsConfig{2, 5}, rules);
    REQUIRE(bench.has_value());
    const std::string tree_dot = render_dot(*bench, rules);
    CHECK(tree_dot.find("n0 [label=\"R:2 5\"]") != std::string::npos);
    CHECK(tree_dot.find("n0 -> n0_0;") != std::string::npos);
    CHECK(tree_dot.find("[label=\"B:2 3\"]") != std::string::npos);

    std::size_t labels = 0;
    for (std::size_t at = tree_dot.find("label="); at != std::string::npos;
         at = tree_dot.find("label=", at + 1))
        ++labels;
    CHECK(labels == tree_size(bench->root));  // exactly one declaration per node
}

TEST_CASE("solve emits the fixed json keys", "[cli]") {
    TempFile out("solve.json");
    const int code = run_cli({"solve", "--game", "heaps", "--position", "2 5", "--mover", "R",
                              "--format", "json", "--output", out.str()});
    CHECK(code == 0);
    const auto j = nlohmann::json::parse(slurp(out.path));
    CHECK(j["game"] == "heaps");
    CHECK(j["position"] == "2 5");
    CHECK(j["mover"] == "R");
    CHECK(j["rebecca_wins"] == true);
    CHECK(j["benny_nonlosing"] == false);
    CHECK(j["value"] == "RWin");
    CHECK(j.size() == 6);
}

TEST_CASE("solve normalizes the ingested position", "[cli]") {
    TempFile out("solve_norm.json");
    REQUIRE(run_cli({"solve", "--game", "heaps", "--position", "5 2", "--format", "json",
                     "--output", out.str()}) == 0);
    CHECK(nlohmann::json::parse(slurp(out.path))["position"] == "2 5");
}

TEST_CASE("solve handles the board game", "[cli]") {
    TempFile out("solve_board.json");
    REQUIRE(run_cli({"solve", "--game", "board", "--size", "3", "--format", "json", "--output",
                     out.str()}) == 0);
    const auto j = nlohmann::json::parse(slurp(out.path));
    CHECK(j["game"] == "board");
    CHECK(j["position"] == "3");
    CHECK(j["mover"] == "B");
    CHECK(j["value"] == "RWin");
}

TEST_CASE("usage errors exit with code 2", "[cli]") {
    CHECK(run_cli({"solve", "--game", "heaps", "--position", "2"}) == 2);
    CHECK(run_cli({"solve", "--game", "heaps"}) == 2);
    CHECK(run_cli({"solve", "--game", "nim", "--position", "1 2"}) == 2);
    CHECK(run_cli({"solve", "--game", "heaps", "--position", "1 2", "--no-such-flag"}) == 2);
    CHECK(run_cli({"solve", "--game", "board", "--size", "3", "--position", "1 2"}) == 2);
    CHECK(run_cli({"solve", "--game", "board", "--size", "0"}) == 2);
    CHECK(run_cli({"solve", "--game", "board", "--size", "5"}) == 2);
    CHECK(run_cli({"solve", "--game", "heaps", "--position", "1 2", "--mover", "X"}) == 2);
    CHECK(run_cli({"solve", "--game", "heaps", "--position", "1 2", "--format", "pgm"}) == 2);
    CHECK(run_cli({}) == 2);
    CHECK(run_cli({"count-strategies", "--game", "heaps", "--position", "1 2", "--cap", "0"}) ==
          2);
    CHECK(run_cli({"verify", "--max", "4", "--board-max", "5"}) == 2);
    CHECK(run_cli({"verify", "--max", "0"}) == 2);
}

TEST_CASE("large boards need an explicit acknowledgement", "[cli]") {
    TempFile out("large.json");
    CHECK(run_cli({"solve", "--game", "board", "--size", "5"}) == 2);
    CHECK(run_cli({"solve", "--game", "board", "--size", "5", "--allow-large", "--format", "json",
                   "--output", out.str()}) == 0);
    CHECK(nlohmann::json::parse(slurp(out.path))["value"] == "RWin");
}

TEST_CASE("sweep writes byte-identical artifacts across runs", "[cli]") {
    TempFile first("sweep1.csv");
    TempFile second("sweep2.csv");
    REQUIRE(run_cli({"sweep", "--max", "9", "--output", first.str()}) == 0);
    REQUIRE(run_cli({"sweep", "--max", "9", "--output", second.str()}) == 0);
    const std::string text = slurp(first.path);
    CHECK(text == slurp(second.path));
    CHECK(parse_grid_csv(text) == sweep(9));

    TempFile image("sweep.pgm");
    REQUIRE(run_cli({"sweep", "--max", "9", "--format", "pgm", "--output", image.str()}) == 0);
    CHECK(slurp(image.path) == render_pgm(sweep(9)));
}

TEST_CASE("sequences --check reports matching closed forms", "[cli]") {
    TempFile out("sequences.csv");
    REQUIRE(run_cli({"sequences", "--max", "23", "--check", "--output", out.str()}) == 0);
    std::istringstream lines(slurp(out.path));
    std::string line;
    REQUIRE(std::getline(lines, line));
    CHECK(line == "n,a,b,phi_a,phi_b,match");
    std::size_t rows = 0;
    while (std::getline(lines, line)) {
        CHECK(line.ends_with(",1"));
        ++rows;
    }
    CHECK(rows == 15);
}

TEST_CASE("strategy exports dot and reports missing strategies", "[cli]") {
    TempFile out("strategy.dot");
    REQUIRE(run_cli({"strategy", "--game", "heaps", "--position", "2 5", "--mover", "R",
                     "--target", "R", "--criterion", "winning", "--output", out.str()}) == 0);
    const std::string dot = slurp(out.path);
    CHECK(dot.starts_with("digraph strategy {"));
    CHECK(dot.find("R:2 5") != std::string::npos);

    TempFile none("strategy_none.txt");
    REQUIRE(run_cli({"strategy", "--game", "heaps", "--position", "1 1", "--mover", "R",
                     "--output", none.str()}) == 0);
    CHECK(slurp(none.path) == "no strategy\n");
}

TEST_CASE("count-strategies prints the saturated count", "[cli]") {
    TempFile out("count.txt");
    REQUIRE(run_cli({"count-strategies", "--game", "heaps", "--position", "2 5", "--mover", "R",
                     "--cap", "10", "--output", out.str()}) == 0);
    CHECK(slurp(out.path) == "1\n");

    TempFile json_out("count.json");
    REQUIRE(run_cli({"count-strategies", "--game", "board", "--size", "3", "--target", "R",
                     "--cap", "10", "--format", "json", "--output", json_out.str()}) == 0);
    const auto j = nlohmann::json::parse(slurp(json_out.path));
    CHECK(j["count"] == 10);
    CHECK(j["cap"] == 10);
    CHECK(j["criterion"] == "winning");
}

TEST_CASE("verify exits cleanly when every check passes", "[cli]") {
    TempFile out("verify.txt");
    REQUIRE(run_cli({"verify", "--max", "8", "--board-max", "2", "--output", out.str()}) == 0);
    const std::string text = slurp(out.path);
    CHECK(text.find("PASS golden-ratio-law") != std::string::npos);
    CHECK(text.find("all checks passed") != std::string::npos);
    CHECK(text.find("FAIL") == std::string::npos);

    TempFile json_out("verify.json");
    REQUIRE(run_cli({"verify", "--max", "8", "--board-max", "2", "--format", "json", "--output",
                     json_out.str()}) == 0);
    const auto j = nlohmann::json::parse(slurp(json_out.path));
    CHECK(j["all_passed"] == true);
    CHECK(j["checks"].size() == 6);
}

TEST_CASE("the depth limit environment override is honoured", "[cli]") {
    REQUIRE(setenv("STRATEGEM_DEPTH_LIMIT", "2", 1) == 0);
    CHECK(run_cli({"solve", "--game", "heaps", "--position", "2 5"}) == 1);
    REQUIRE(setenv("STRATEGEM_DEPTH_LIMIT", "abc", 1) == 0);
    CHECK(run_cli({"solve", "--game", "heaps", "--position", "2 5"}) == 2);
    REQUIRE(setenv("STRATEGEM_DEPTH_LIMIT", "100000", 1) == 0);
    CHECK(run_cli({"solve", "--game", "heaps", "--position", "2 5"}) == 0);
    REQUIRE(unsetenv("STRATEGEM_DEPTH_LIMIT") == 0);
}

TEST_CASE("help is help, not an error", "[cli]") {
    CHECK(run_cli({"--help"}) == 0);
}

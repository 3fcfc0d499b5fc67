#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ltc/cli.hpp"
#include "ltc/json_io.hpp"

using namespace ltc;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> result;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) result.push_back(line);
    return result;
}

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
    const auto path = std::filesystem::temp_directory_path() / ("ltc_test_" + name);
    std::ofstream(path) << content;
    return path;
}

}  // namespace

TEST_CASE("bound examples") {
    auto r = run({"bound", "--d", "1", "--sigma", "1", "--method", "momentum-optimal"});
    REQUIRE(r.code == 0);
    Json j = Json::parse(r.out);
    CHECK(std::abs(j["l_ratio"].get<double>() - 1.618435) <= 1e-6);

    r = run({"bound", "--d", "1", "--sigma", "1", "--method", "from-c", "--c-value", "0.373556"});
    REQUIRE(r.code == 0);
    CHECK(std::abs(Json::parse(r.out)["l_ratio"].get<double>() - 1.455786) <= 1e-5);

    r = run({"bound", "--d", "3", "--sigma", "0.5", "--method", "best-of", "--c-value", "0.046736"});
    REQUIRE(r.code == 0);
    j = Json::parse(r.out);
    CHECK(std::abs(j["k_ratio"].get<double>() - 0.826297) <= 1e-5);
    CHECK(j["winner"] == "fractional_second");

    r = run({"bound", "--d", "1000", "--method", "fractional-first"});
    CHECK(r.code == 0);
}

TEST_CASE("bound output formats agree") {
    const auto json = run({"bound", "--d", "1", "--method", "from-c", "--c-value", "0.373556"});
    const auto csv = run({"--format", "csv", "bound", "--d", "1", "--method", "from-c", "--c-value", "0.373556"});
    const auto text = run({"bound", "--d", "1", "--method", "from-c", "--c-value", "0.373556", "--format", "text"});
    REQUIRE(csv.code == 0);
    REQUIRE(text.code == 0);
    const Json j = Json::parse(json.out);
    const auto rows = lines(csv.out);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0] == "d,sigma,method,k_ratio,l_ratio,c_value");
    std::vector<std::string> cells;
    std::istringstream row(rows[1]);
    for (std::string cell; std::getline(row, cell, ',');) cells.push_back(cell);
    REQUIRE(cells.size() == 6);
    CHECK(std::stod(cells[3]) == j["k_ratio"].get<double>());
    CHECK(std::stod(cells[4]) == j["l_ratio"].get<double>());
    CHECK(std::stod(cells[5]) == j["c_value"].get<double>());
    CHECK(text.out.find("1.455790") != std::string::npos);
}

TEST_CASE("usage errors exit with 2") {
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"bound", "--method", "from-c"}).code == 2);
    CHECK(run({"bound", "--method", "guess"}).code == 2);
    CHECK(run({"bound", "--sigma", "0.5", "--method", "rumin-original"}).code == 2);
    CHECK(run({"bound", "--d", "0"}).code == 2);
    CHECK(run({"bound", "--format", "xml"}).code == 2);
    CHECK(run({"optimize", "/nonexistent/config.json"}).code == 2);
    CHECK(run({"table"}).code == 2);
    const auto r = run({"bound", "--method", "from-c"});
    CHECK_FALSE(r.err.empty());
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("optimize streams JSON lines") {
    const auto empty = temp_file("empty.json", "[]");
    auto r = run({"optimize", empty.string()});
    CHECK(r.code == 0);
    CHECK(r.out.empty());

    const auto cfg = temp_file("runs.json", R"([
        {"name": "lemma", "target": "lemma", "beta": 1.5, "seed": {"a": 2.0, "p": 0.7}},
        {"name": "short", "d": 1, "sigma": 1, "phi_kind": "bump_simple", "seed": {"a": 1.5, "p": 1.0}, "max_iters": 5},
        {"name": "bad", "d": 1, "phi_kind": "uniform", "seed": {"a": 1.1, "p": 0.05}}
    ])");
    r = run({"optimize", cfg.string()});
    CHECK(r.code == 0);
    const auto out = lines(r.out);
    REQUIRE(out.size() == 4);
    const Json lemma = Json::parse(out[0]);
    CHECK(lemma["name"] == "lemma");
    CHECK(lemma["error"].is_null());
    CHECK(std::abs(lemma["best_value"].get<double>() - 1.44757170809403) <= 1e-5);
    const Json shortrun = Json::parse(out[1]);
    CHECK(shortrun["best_value"].get<double>() <= 0.381378 + 1e-5);
    CHECK(shortrun["trace"].is_array());
    const Json bad = Json::parse(out[2]);
    CHECK(bad["error"].is_string());
    const Json summary = Json::parse(out[3]);
    REQUIRE(summary["summary"].size() == 1);
    CHECK(summary["summary"][0]["best_value"] == shortrun["best_value"]);

    // deterministic
    CHECK(run({"optimize", cfg.string()}).out == r.out);

    const auto malformed = temp_file("malformed.json", R"([{"d": 1, "unknown_key": 3}])");
    CHECK(run({"optimize", malformed.string()}).code == 2);
    const auto broken = temp_file("broken.json", "[{");
    CHECK(run({"optimize", broken.string()}).code == 2);
}

TEST_CASE("paper table passes") {
    const auto r = run({"table", "--paper", "--format", "json"});
    CHECK(r.code == 0);
    const Json j = Json::parse(r.out);
    CHECK(j["all_pass"] == true);
    bool saw_c1 = false;
    for (const auto& row : j["rows"]) {
        CAPTURE(row.dump());
        CHECK(row["pass"] == true);
        saw_c1 = saw_c1 || row["quantity"] == "C_1 upper";
    }
    CHECK(saw_c1);
    const auto text = run({"table", "--paper"});
    CHECK(text.code == 0);
    CHECK(text.out.find("L_{1,1}/L^cl momentum-optimal") != std::string::npos);
    for (const auto& row : reference_table()) {
        CAPTURE(row.quantity);
        CHECK(row.passes());
    }
}

TEST_CASE("verify command") {
    auto r = run({"verify"});
    CHECK(r.code == 0);
    Json j = Json::parse(r.out);
    CHECK(j["all_hold"] == true);
    CHECK(j["cases"].size() == builtin_suite().size());

    const auto weyl = temp_file("weyl.json", R"({"l_ratio": 1.0, "cases": [
        {"name": "pt2", "potential": {"kind": "poschl_teller", "nu": 2}}]})");
    r = run({"verify", weyl.string()});
    CHECK(r.code == 0);
    j = Json::parse(r.out);
    CHECK(j["cases"][0]["check"]["holds"] == false);

    r = run({"verify", "--l-ratio", "1.0"});
    CHECK(r.code == 0);

    const auto empty = temp_file("empty_suite.json", "[]");
    r = run({"verify", empty.string()});
    CHECK(r.code == 0);
    CHECK(Json::parse(r.out)["cases"].empty());

    const auto bad = temp_file("bad_suite.json", R"([{"potential": {"kind": "harmonic"}}])");
    CHECK(run({"verify", bad.string()}).code == 2);

    // An under-resolved spike breaks the inequality at the theorem's ratio,
    // which is reported as a regression.
    const auto tight = temp_file("tight.json", R"({"l_ratio": 1.456, "cases": [
        {"name": "spike", "potential": {"kind": "square_well", "depth": 10000, "width": 0.01},
         "grid": {"half_width": 1, "n_points": 3}}]})");
    CHECK(run({"verify", tight.string()}).code == 1);
}

TEST_CASE("--out writes to a file") {
    const auto path = std::filesystem::temp_directory_path() / "ltc_test_out.json";
    std::filesystem::remove(path);
    const auto r = run({"--out", path.string(), "bound", "--d", "2"});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(path);
    const Json j = Json::parse(in);
    CHECK(j["d"] == 2);
}

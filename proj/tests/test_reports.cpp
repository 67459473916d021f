#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "coclab/reports.hpp"

using namespace coclab;

TEST_CASE("strict config parsing") {
    const ExperimentConfig cfg = parse_config(R"({
        "grid": {"x_min": -8.0, "x_max": 8.0, "n": 256},
        "zeros": [[-1.0, 0.0]],
        "variant": "plus_corrected",
        "times": [0.5, 1.0],
        "tolerances": {"cocycle": 1e-6},
        "commands": ["verify-markov"]
    })");
    CHECK(cfg.grid.n == 256);
    CHECK(cfg.zeros.size() == 1);
    CHECK(cfg.commands == std::vector<std::string>{"verify-markov"});
    CHECK(cfg.tol("cocycle") == 1e-6);
    CHECK(cfg.tol("markov") == 1e-12);  // default preserved

    // misspelled keys are rejected by name
    CHECK_THROWS_WITH_AS(parse_config(R"({"zerros": []})"),
                         doctest::Contains("unknown key 'zerros'"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config(R"({"tolerances": {"cocycl": 1.0}})"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config(R"({"commands": ["frobnicate"]})"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config(R"({"zeros": [[-1.0]]})"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config(R"({not json)"), std::invalid_argument);
}

TEST_CASE("single commands run and judge against tolerances") {
    ExperimentConfig cfg = parse_config(R"({
        "grid": {"x_min": -8.0, "x_max": 8.0, "n": 256},
        "zeros": [[-1.0, 0.0]],
        "times": [0.5]
    })");
    const Report markov = run_command(cfg, "verify-markov");
    CHECK(markov.pass);
    CHECK(markov.results["max_m1_residual"]["value"].get<double>() <= 1e-12);
    CHECK(markov.results["max_m1_residual"].contains("tol"));

    const Report b2b3 = run_command(cfg, "b2b3");
    CHECK(b2b3.pass);
    CHECK(b2b3.results["b2"]["abs_error"]["value"].get<double>() <= 1e-6);

    CHECK_THROWS_AS(run_command(cfg, "nonsense"), std::invalid_argument);
}

TEST_CASE("reports are deterministic given the configuration") {
    ExperimentConfig cfg = parse_config(R"({
        "grid": {"x_min": -8.0, "x_max": 8.0, "n": 256},
        "zeros": [[-1.0, 0.0]],
        "times": [0.5],
        "mc": {"dt": 0.0078125, "horizon": 1.0, "n_paths": 2000, "seed": 11}
    })");
    for (const char* cmd : {"verify-cocycle", "b2b3", "wiener-mc"}) {
        const Report a = run_command(cfg, cmd);
        const Report b = run_command(cfg, cmd);
        CHECK(a.payload().dump() == b.payload().dump());
    }
}

TEST_CASE("emission writes json envelopes and csv tables") {
    namespace fs = std::filesystem;
    ExperimentConfig cfg = parse_config(R"({
        "grid": {"x_min": -8.0, "x_max": 8.0, "n": 256},
        "zeros": [[-1.0, 0.0]],
        "riesz_K": 8,
        "commands": ["hs-series"]
    })");
    const std::vector<Report> reports = run_config_commands(cfg);
    const std::string dir = (fs::temp_directory_path() / "coclab_report_test").string();
    fs::remove_all(dir);
    const std::vector<std::string> files = emit_reports(reports, ReportFormat::csv, dir);
    REQUIRE(files.size() == 2);
    CHECK(fs::exists(dir + "/hs-series.json"));
    CHECK(fs::exists(dir + "/hs-series_r2.csv"));

    // the envelope carries a timestamp; the payload itself does not
    std::ifstream in(dir + "/hs-series.json");
    ordered_json j;
    in >> j;
    CHECK(j.contains("timestamp"));
    CHECK(!j["payload"].dump().empty());

    // partial sums in the csv are nondecreasing
    std::ifstream csv(dir + "/hs-series_r2.csv");
    std::string line;
    std::getline(csv, line);
    CHECK(line == "k,term,partial_sum");
    double prev = -1.0;
    while (std::getline(csv, line)) {
        const auto c2 = line.rfind(',');
        const double ps = std::stod(line.substr(c2 + 1));
        CHECK(ps >= prev);
        prev = ps;
    }
    fs::remove_all(dir);
}

TEST_CASE("the identity configuration passes every command") {
    ExperimentConfig cfg = parse_config(R"({
        "grid": {"x_min": -8.0, "x_max": 8.0, "n": 256},
        "zeros": [],
        "times": [0.5],
        "riesz_K": 4,
        "mc": {"dt": 0.0078125, "horizon": 1.0, "n_paths": 1000, "seed": 3,
               "a_spec": {"type": "zero"}}
    })");
    for (const Report& rep : run_config_commands(cfg)) {
        INFO(rep.command);
        CHECK(rep.pass);
    }
}

TEST_CASE("digest is stable and input-sensitive") {
    CHECK(digest_hex("abc") == digest_hex("abc"));
    CHECK(digest_hex("abc") != digest_hex("abd"));
    CHECK(digest_hex("abc").size() == 16);
}

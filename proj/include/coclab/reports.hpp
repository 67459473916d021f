#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "coclab/cocycle.hpp"
#include "coclab/wiener.hpp"

namespace coclab {

using ordered_json = nlohmann::ordered_json;

struct McConfig {
    double dt = 0x1.0p-10;
    double horizon = 2.0;
    long n_paths = 100000;
    std::uint64_t seed = 20206u;
    double a_value = 1.0;  // constant drift
    WienerVariant variant = WienerVariant::girsanov_unitary;
    double t = 1.0;
};

struct ExperimentConfig {
    GridSpec grid{-8.0, 8.0, 1024};
    std::vector<cplx> zeros{cplx(-1.0, 0.0)};
    CocycleVariant variant = CocycleVariant::plus_corrected;
    std::vector<double> times{0.25, 0.5, 1.0};
    int riesz_K = 32;
    McConfig mc;
    std::map<std::string, double> tolerances;
    std::vector<std::string> commands{"verify-cocycle", "verify-markov", "wold", "spectrum",
                                      "hs-series", "b2b3", "feldman", "wiener-mc"};

    double tol(const std::string& name) const;
};

// strict parser: unknown keys are rejected by name
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);

struct Report {
    std::string command;
    std::string inputs_digest;
    ordered_json results;
    bool pass = false;
    ordered_json provenance;

    ordered_json payload() const;  // deterministic, no timestamp
};

// run one named command against the configuration
Report run_command(const ExperimentConfig& cfg, const std::string& command);

// run all configured commands, in order or concurrently
std::vector<Report> run_config_commands(const ExperimentConfig& cfg, bool parallel = false);
std::vector<Report> run_config(const std::string& path, bool parallel = false);

enum class ReportFormat { json, csv };

// one JSON per report (timestamped envelope, deterministic payload) plus
// CSV tables for series and spectra
std::vector<std::string> emit_reports(const std::vector<Report>& reports, ReportFormat format,
                                      const std::string& out_dir);

std::string digest_hex(const std::string& text);  // FNV-1a 64

}  // namespace coclab

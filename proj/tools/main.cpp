#include <CLI11.hpp>
#include <cstdio>

#include "coclab/reports.hpp"
#include "coclab/version.hpp"

int main(int argc, char** argv) {
    CLI::App app{"numerical workbench for Markovian cocycle perturbations of the shift flow"};
    app.set_version_flag("--version",
                         std::string(coclab::kToolName) + " " + coclab::kToolVersion);
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = "reports";
    std::string format = "json";
    bool parallel = false;

    CLI::App* run = app.add_subcommand("run", "run the commands listed in a config file");
    run->add_option("config", config_path, "JSON configuration")->required();
    run->add_option("--out", out_dir, "output directory for reports");
    run->add_option("--format", format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    run->add_flag("--parallel", parallel, "run commands concurrently");

    CLI::App* adj = app.add_subcommand("adjudicate",
                                       "run the formula-variant adjudication suite");
    adj->add_option("config", config_path, "JSON configuration")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            const coclab::ExperimentConfig cfg = coclab::load_config(config_path);
            const std::vector<coclab::Report> reports =
                coclab::run_config_commands(cfg, parallel);
            const coclab::ReportFormat fmt =
                format == "csv" ? coclab::ReportFormat::csv : coclab::ReportFormat::json;
            coclab::emit_reports(reports, fmt, out_dir);
            bool all = true;
            for (const coclab::Report& r : reports) {
                std::printf("[%s] %s\n", r.pass ? "PASS" : "FAIL", r.command.c_str());
                all = all && r.pass;
            }
            return all ? 0 : 1;
        }
        if (adj->parsed()) {
            const coclab::ExperimentConfig cfg = coclab::load_config(config_path);
            const coclab::AdjudicationReport rep =
                coclab::adjudicate_variants(cfg.grid, cfg.tol("cocycle"));
            std::printf("%-16s %-14s %12s %12s %12s\n", "variant", "zeros", "cocycle",
                        "unitarity", "markov");
            for (const coclab::AdjudicationRow& row : rep.rows)
                std::printf("%-16s %-14s %12.3e %12.3e %12.3e\n",
                            coclab::to_string(row.variant).c_str(), row.zero_set.c_str(),
                            row.cocycle_residual, row.unitarity_defect, row.markov_residual);
            std::printf("selected variant: %s%s\n", coclab::to_string(rep.selected).c_str(),
                        rep.unique_winner ? "" : " (warning: winner not unique)");
            return rep.unique_winner ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}

// bbox: run seeded sweeps, evaluate lower bounds and run the acceptance suite.
// Exit codes: 0 success, 1 configuration error, 2 failed acceptance criterion.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bbox/acceptance.hpp"
#include "bbox/algorithms.hpp"
#include "bbox/bounds.hpp"
#include "bbox/harness.hpp"
#include "bbox/records_io.hpp"

namespace {

int execute_sweep(const bbox::SweepConfig& config)
{
    const auto records = bbox::run_sweep(config);
    const std::string text = bbox::emit_records(records, config.format);
    if (config.output_path.empty() || config.output_path == "-") {
        std::cout << text;
        return 0;
    }
    bbox::write_text(config.output_path, text);
    std::cout << bbox::emit_summary(bbox::summarize(records), config.format);
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Ranking-based black-box optimization testbed"};
    app.require_subcommand(1);

    bbox::SweepConfig run_cfg;
    std::string run_format = "csv";
    auto* run_cmd = app.add_subcommand("run", "Run trials of one algorithm and write the run records");
    run_cmd->add_option("--algo", run_cfg.algo_id, "Algorithm id")->required();
    run_cmd->add_option("--n", run_cfg.n_list, "String length(s), ascending")->required()->delimiter(',');
    run_cmd->add_option("--mu", run_cfg.mu, "Population size (0 = algorithm default)");
    run_cmd->add_option("--lambda", run_cfg.lambda, "Offspring count (0 = algorithm default)");
    run_cmd->add_option("--trials", run_cfg.trials, "Trials per n")->required();
    run_cmd->add_option("--seed", run_cfg.root_seed, "Root seed")->required();
    run_cmd->add_option("--budget-factor", run_cfg.budget_factor, "Query budget as a multiple of the order");
    run_cmd->add_option("--out", run_cfg.output_path, "Output file; '-' or empty writes records to stdout");
    run_cmd->add_option("--format", run_format, "csv or json");

    std::string config_path;
    auto* sweep_cmd = app.add_subcommand("sweep", "Run a sweep described by a key=value config file");
    sweep_cmd->add_option("--config", config_path, "Config file")->required();

    std::vector<std::size_t> mus{1}, lambdas{1};
    std::size_t bound_n = 0;
    double p = 0.5;
    auto* bounds_cmd = app.add_subcommand("bounds", "Print lower bounds: model,n,lv_lb,mc_lb,bits_per_query");
    bounds_cmd->add_option("--mu", mus, "Population size(s)")->delimiter(',');
    bounds_cmd->add_option("--lambda", lambdas, "Offspring count(s)")->delimiter(',');
    bounds_cmd->add_option("--n", bound_n, "String length")->required();
    bounds_cmd->add_option("--p", p, "Required success probability for the Monte Carlo bound");

    bool quick = false;
    auto* verify_cmd = app.add_subcommand("verify", "Run the acceptance suite");
    verify_cmd->add_flag("--quick", quick, "Fewer trials, no runtime limits");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*run_cmd) {
            run_cfg.format = bbox::parse_format(run_format);
            return execute_sweep(run_cfg);
        }
        if (*sweep_cmd)
            return execute_sweep(bbox::parse_sweep_config(bbox::read_text(config_path)));
        if (*bounds_cmd) {
            for (std::size_t mu : mus)
                for (std::size_t lambda : lambdas)
                    std::cout << bbox::format_bound_line(bbox::bound_report(bound_n, mu, lambda, p)) << '\n';
            return 0;
        }
        if (*verify_cmd) {
            bool all = true;
            for (int id = 1; id <= bbox::acceptance_criteria; ++id) {
                const auto r = bbox::run_criterion(id, quick);
                std::cout << bbox::format_result(r) << std::endl;
                all = all && r.passed;
            }
            return all ? 0 : 2;
        }
    } catch (const bbox::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}

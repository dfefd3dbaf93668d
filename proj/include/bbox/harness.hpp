#pragma once

/// Seeded trial sweeps, summary statistics and log-log scaling fits.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bbox/model.hpp"

namespace bbox {

enum class OutputFormat { csv, json };

OutputFormat parse_format(std::string_view text);
std::string_view to_string(OutputFormat format);

struct SweepConfig {
    std::string algo_id;
    std::vector<std::size_t> n_list;
    std::size_t mu = 0;      // 0 selects the algorithm's natural value
    std::size_t lambda = 0;  // 0 selects the algorithm's natural value
    std::size_t trials = 1;
    std::uint64_t root_seed = 1;
    double budget_factor = 40.0;
    std::string output_path;
    OutputFormat format = OutputFormat::csv;

    /// Throws ConfigError unless trials >= 1 and n_list is non-empty and strictly ascending.
    void validate() const;
};

/// Flat key=value text with keys algo, n (comma separated), mu, lambda, trials, seed,
/// budget-factor, out and format. Blank lines and lines starting with '#' are skipped.
SweepConfig parse_sweep_config(std::string_view text);

/// Trial i of every n uses seed split_seed(root_seed, i) for both its target and its
/// randomness. Output is ordered by (n, trial). Trials run in parallel.
std::vector<RunRecord> run_sweep(const SweepConfig& config);

/// Single-threaded reference for run_sweep with identical output.
std::vector<RunRecord> run_sweep_serial(const SweepConfig& config);

struct Quantiles {
    double mean = 0;
    double median = 0;
    double p10 = 0;
    double p90 = 0;
};

/// Empirical quantile with linear interpolation between order statistics.
double quantile(std::vector<double> values, double q);
Quantiles describe(const std::vector<double>& values);

struct SizeSummary {
    std::string algo_id;
    std::size_t n = 0;
    std::size_t mu = 0;
    std::size_t lambda = 0;
    std::size_t trials = 0;
    Quantiles queries;
    Quantiles generations;
    double success_rate = 0;
    std::map<FailureCause, std::size_t> failures;  // causes of the unsuccessful trials
};

struct AlgoSummary {
    std::string algo_id;
    std::vector<SizeSummary> sizes;  // ascending n
    std::optional<double> query_slope;
    std::optional<double> generation_slope;
};

struct Summary {
    std::vector<AlgoSummary> algos;  // in order of first appearance
};

Summary summarize(const std::vector<RunRecord>& records);

/// Least-squares slope of log2 y against log2 x. Needs two distinct x and positive values.
double fit_scaling(const std::vector<std::pair<double, double>>& points);

}  // namespace bbox

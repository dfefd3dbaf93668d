#include "bbox/harness.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <memory>
#include <numeric>
#include <sstream>

#include "bbox/algorithms.hpp"
#include "bbox/oracle.hpp"

namespace bbox {

OutputFormat parse_format(std::string_view text)
{
    if (text == "csv")
        return OutputFormat::csv;
    if (text == "json")
        return OutputFormat::json;
    throw ConfigError("unknown output format: " + std::string(text));
}

std::string_view to_string(OutputFormat format)
{
    return format == OutputFormat::json ? "json" : "csv";
}

void SweepConfig::validate() const
{
    if (trials == 0)
        throw ConfigError("trials must be at least 1");
    if (n_list.empty())
        throw ConfigError("n list is empty");
    for (std::size_t i = 1; i < n_list.size(); ++i)
        if (n_list[i] <= n_list[i - 1])
            throw ConfigError("n list must be strictly ascending");
    if (!(budget_factor > 0.0))
        throw ConfigError("budget factor must be positive");
}

namespace {

std::string trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

template <typename T>
T parse_number(const std::string& key, const std::string& value)
{
    std::istringstream in(value);
    T out{};
    if (!(in >> out) || !in.eof())
        throw ConfigError("bad value for " + key + ": " + value);
    return out;
}

std::size_t parse_count(const std::string& key, const std::string& value)
{
    if (value.empty() || value.front() == '-')
        throw ConfigError("bad value for " + key + ": " + value);
    return parse_number<std::size_t>(key, value);
}

struct Job {
    std::size_t size_index = 0;
    std::size_t trial = 0;
};

struct Prepared {
    std::vector<std::unique_ptr<Algorithm>> algorithms;  // one per n
    std::vector<ModelConfig> models;
    std::vector<Job> jobs;
};

Prepared prepare(const SweepConfig& config)
{
    config.validate();
    Prepared p;
    for (std::size_t n : config.n_list) {
        auto algorithm = make_algorithm(config.algo_id, AlgorithmParams{n, config.mu, config.lambda});
        p.models.push_back(model_config(*algorithm, default_budget(*algorithm, config.budget_factor)));
        p.algorithms.push_back(std::move(algorithm));
    }
    for (std::size_t s = 0; s < config.n_list.size(); ++s)
        for (std::size_t t = 0; t < config.trials; ++t)
            p.jobs.push_back(Job{s, t});
    return p;
}

RunRecord run_job(const SweepConfig& config, const Prepared& p, const Job& job)
{
    const std::uint64_t seed = split_seed(config.root_seed, job.trial);
    HiddenInstance instance = random_instance(config.n_list[job.size_index], seed);
    RunRecord rec = run(*p.algorithms[job.size_index], p.models[job.size_index], instance, seed);
    rec.trial = job.trial;
    return rec;
}

}  // namespace

SweepConfig parse_sweep_config(std::string_view text)
{
    SweepConfig c;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        const std::string content = trim(line);
        if (content.empty() || content.front() == '#')
            continue;
        const auto eq = content.find('=');
        if (eq == std::string::npos)
            throw ConfigError("expected key=value: " + content);
        const std::string key = trim(std::string_view(content).substr(0, eq));
        const std::string value = trim(std::string_view(content).substr(eq + 1));
        if (key == "algo") {
            c.algo_id = value;
        } else if (key == "n") {
            c.n_list.clear();
            std::istringstream items(value);
            std::string item;
            while (std::getline(items, item, ','))
                c.n_list.push_back(parse_count(key, trim(item)));
        } else if (key == "mu") {
            c.mu = parse_count(key, value);
        } else if (key == "lambda") {
            c.lambda = parse_count(key, value);
        } else if (key == "trials") {
            c.trials = parse_count(key, value);
        } else if (key == "seed") {
            c.root_seed = parse_number<std::uint64_t>(key, value);
        } else if (key == "budget-factor") {
            c.budget_factor = parse_number<double>(key, value);
        } else if (key == "out") {
            c.output_path = value;
        } else if (key == "format") {
            c.format = parse_format(value);
        } else {
            throw ConfigError("unknown config key: " + key);
        }
    }
    if (c.algo_id.empty())
        throw ConfigError("config needs an algo key");
    c.validate();
    return c;
}

std::vector<RunRecord> run_sweep(const SweepConfig& config)
{
    const Prepared p = prepare(config);
    std::vector<RunRecord> records(p.jobs.size());
    std::exception_ptr error;
    const auto count = static_cast<std::int64_t>(p.jobs.size());
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < count; ++i) {
        try {
            records[static_cast<std::size_t>(i)] = run_job(config, p, p.jobs[static_cast<std::size_t>(i)]);
        } catch (...) {
#pragma omp critical(bbox_sweep_error)
            if (!error)
                error = std::current_exception();
        }
    }
    if (error)
        std::rethrow_exception(error);
    return records;
}

std::vector<RunRecord> run_sweep_serial(const SweepConfig& config)
{
    const Prepared p = prepare(config);
    std::vector<RunRecord> records;
    records.reserve(p.jobs.size());
    for (const Job& job : p.jobs)
        records.push_back(run_job(config, p, job));
    return records;
}

double quantile(std::vector<double> values, double q)
{
    if (values.empty())
        throw std::invalid_argument("quantile of an empty sample");
    if (!(q >= 0.0 && q <= 1.0))
        throw std::invalid_argument("quantile level must lie in [0, 1]");
    std::sort(values.begin(), values.end());
    const double pos = q * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return values[lo] + frac * (values[hi] - values[lo]);
}

Quantiles describe(const std::vector<double>& values)
{
    Quantiles q;
    q.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
    q.median = quantile(values, 0.5);
    q.p10 = quantile(values, 0.1);
    q.p90 = quantile(values, 0.9);
    return q;
}

double fit_scaling(const std::vector<std::pair<double, double>>& points)
{
    if (points.size() < 2)
        throw std::invalid_argument("scaling fit needs at least two points");
    std::vector<double> xs, ys;
    for (const auto& [x, y] : points) {
        if (!(x > 0.0 && y > 0.0))
            throw std::invalid_argument("scaling fit needs positive values");
        xs.push_back(std::log2(x));
        ys.push_back(std::log2(y));
    }
    const double k = static_cast<double>(xs.size());
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / k;
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / k;
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    if (sxx == 0.0)
        throw std::invalid_argument("scaling fit needs two distinct sizes");
    return sxy / sxx;
}

Summary summarize(const std::vector<RunRecord>& records)
{
    Summary summary;
    std::vector<std::string> order;
    std::map<std::string, std::map<std::size_t, std::vector<const RunRecord*>>> groups;
    for (const auto& r : records) {
        if (!groups.contains(r.algo_id))
            order.push_back(r.algo_id);
        groups[r.algo_id][r.n].push_back(&r);
    }
    for (const auto& algo : order) {
        AlgoSummary a;
        a.algo_id = algo;
        std::vector<std::pair<double, double>> q_points, g_points;
        for (const auto& [n, group] : groups[algo]) {
            SizeSummary s;
            s.algo_id = algo;
            s.n = n;
            s.mu = group.front()->mu;
            s.lambda = group.front()->lambda;
            s.trials = group.size();
            std::vector<double> q, g;
            std::size_t wins = 0;
            for (const RunRecord* r : group) {
                q.push_back(static_cast<double>(r->queries));
                g.push_back(static_cast<double>(r->generations));
                if (r->success)
                    ++wins;
                else
                    ++s.failures[r->failure_cause];
            }
            s.queries = describe(q);
            s.generations = describe(g);
            s.success_rate = static_cast<double>(wins) / static_cast<double>(group.size());
            if (s.queries.median > 0)
                q_points.emplace_back(static_cast<double>(n), s.queries.median);
            if (s.generations.median > 0)
                g_points.emplace_back(static_cast<double>(n), s.generations.median);
            a.sizes.push_back(std::move(s));
        }
        if (q_points.size() >= 2)
            a.query_slope = fit_scaling(q_points);
        if (g_points.size() >= 2)
            a.generation_slope = fit_scaling(g_points);
        summary.algos.push_back(std::move(a));
    }
    return summary;
}

}  // namespace bbox

#include "bbox/acceptance.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>

#include <boost/multiprecision/cpp_dec_float.hpp>

#include "bbox/algorithms.hpp"
#include "bbox/bounds.hpp"
#include "bbox/counter.hpp"
#include "bbox/harness.hpp"
#include "bbox/oracle.hpp"
#include "bbox/primitives.hpp"
#include "bbox/reconstruction.hpp"

namespace bbox {

namespace {

struct Verdict {
    bool passed = false;
    std::string detail;
};

std::string fmt(const char* pattern, double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, pattern, v);
    return buf;
}

std::vector<std::size_t> powers_of_two(std::size_t lo, std::size_t hi)
{
    std::vector<std::size_t> out;
    for (std::size_t n = lo; n <= hi; n *= 2)
        out.push_back(n);
    return out;
}

Summary sweep_summary(const std::string& algo, std::vector<std::size_t> n_list, std::size_t lambda, std::size_t mu,
                      std::size_t trials, std::uint64_t root)
{
    SweepConfig c;
    c.algo_id = algo;
    c.n_list = std::move(n_list);
    c.lambda = lambda;
    c.mu = mu;
    c.trials = trials;
    c.root_seed = root;
    return summarize(run_sweep(c));
}

Verdict two_plus_one_exact(bool)
{
    std::size_t runs = 0, max_excess = 0;
    bool ok = true;
    for (std::size_t n : powers_of_two(8, 1024)) {
        TwoPlusOne algo(n);
        const ModelConfig config = model_config(algo, default_budget(algo));
        for (std::size_t t = 0; t < 100; ++t) {
            const std::uint64_t seed = split_seed(101, n * 1000 + t);
            HiddenInstance inst = random_instance(n, seed);
            const RunRecord r = run(algo, config, inst, seed);
            ++runs;
            if (!r.success || r.queries > n + 1)
                ok = false;
            if (r.queries > n)
                max_excess = std::max<std::size_t>(max_excess, r.queries - n);
        }
    }
    return {ok, std::to_string(runs) + " runs, worst queries - n = " + std::to_string(max_excess)};
}

Verdict comma_exact(bool)
{
    const std::vector<std::size_t> sizes = {7, 64, 301, 1024};
    std::size_t runs = 0;
    std::string bad;
    for (std::size_t lambda : {2, 4, 8, 16}) {
        for (std::size_t n : sizes) {
            OneCommaLambda algo(n, lambda);
            const ModelConfig config = model_config(algo, default_budget(algo));
            const std::uint64_t seed = split_seed(202, n * 100 + lambda);
            HiddenInstance inst = random_instance(n, seed);
            RunOptions opts;
            opts.stop_at_first_hit = false;
            const RunRecord r = run(algo, config, inst, seed, opts);
            ++runs;
            const std::uint64_t ell = static_cast<std::uint64_t>(std::bit_width(lambda) - 1);
            bool ok = r.success;
            if (lambda == 2)
                // Initialization counts as the first generation of the (1,2) schedule.
                ok = ok && r.generations + 1 == n + 1 && inst.queries() <= 2 * n + 1;
            else
                ok = ok && r.generations == (n + ell - 1) / ell;
            if (!ok)
                bad += " (1," + std::to_string(lambda) + ")@" + std::to_string(n);
        }
    }
    if (!bad.empty())
        return {false, "schedule mismatch:" + bad};
    return {true, std::to_string(runs) + " schedules exact"};
}

Verdict one_plus_one_linear(bool quick)
{
    const std::size_t trials = quick ? 20 : 200;
    const Summary s = sweep_summary("one-plus-one-mc", powers_of_two(1024, 8192), 0, 0, trials, 303);
    const AlgoSummary& a = s.algos.front();
    bool ok = a.query_slope && *a.query_slope >= 0.9 && *a.query_slope <= 1.15;
    std::string detail = "slope " + fmt("%.3f", a.query_slope.value_or(NAN)) + ", success";
    for (const auto& z : a.sizes) {
        ok = ok && z.success_rate >= 0.9;
        detail += " " + fmt("%.3f", z.success_rate);
    }
    detail += ", median/n";
    for (const auto& z : a.sizes)
        detail += " " + fmt("%.2f", z.queries.median / static_cast<double>(z.n));
    return {ok, detail};
}

Verdict one_plus_lambda_generations(bool quick)
{
    const std::size_t trials = quick ? 20 : 100;
    std::vector<double> medians;
    bool ok = true;
    std::string detail = "median generations";
    for (std::size_t lambda : {4, 16, 64}) {
        const Summary s = sweep_summary("one-plus-lambda", {4096}, lambda, 0, trials, 404);
        const SizeSummary& z = s.algos.front().sizes.front();
        ok = ok && z.success_rate >= 0.9;
        medians.push_back(z.generations.median);
        detail += " " + fmt("%.0f", z.generations.median) + " (success " + fmt("%.2f", z.success_rate) + ")";
    }
    ok = ok && medians[0] > medians[1] && medians[1] > medians[2];
    const double ratio = medians[0] / medians[2];
    ok = ok && ratio >= 2.2 && ratio <= 3.8;
    return {ok, detail + ", gen(4)/gen(64) = " + fmt("%.3f", ratio)};
}

bool reconstruction_sound(std::size_t max_k, std::string& detail)
{
    std::size_t checked = 0;
    for (std::size_t k = 1; k <= max_k; ++k) {
        const std::size_t t = std::max<std::size_t>(required_samples(k, 16), 2);
        for (std::uint64_t z = 0; z < (std::uint64_t{1} << k); ++z) {
            BitString target(k);
            deposit_bits(target, Range{0, k}, z);
            Rng rng(split_seed(505, (k << 32) | z));
            RankingObservation obs;
            obs.k = k;
            for (std::size_t i = 0; i < t; ++i)
                obs.samples.push_back(random_bits(k, rng));
            obs.ranks = induced_ranking(obs.samples, target);
            const auto cands = consistent_targets(obs);
            if (std::find(cands.begin(), cands.end(), target) == cands.end()) {
                detail = "target missing at k=" + std::to_string(k);
                return false;
            }
            for (const auto& c : cands)
                if (induced_ranking(obs.samples, c) != obs.ranks) {
                    detail = "inconsistent candidate at k=" + std::to_string(k);
                    return false;
                }
            ++checked;
        }
    }
    detail = std::to_string(checked) + " targets sound";
    return true;
}

Verdict mu_plus_one_mechanism(bool quick)
{
    const std::size_t n = 2048, mu = 16, trials = quick ? 10 : 100;
    MuPlusOne algo(n, mu, MuPlusOneParams{16});
    const ModelConfig config = model_config(algo, default_budget(algo));
    std::atomic<std::size_t> wins{0}, windows{0}, mismatches{0};
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t t = 0; t < static_cast<std::int64_t>(trials); ++t) {
        const std::uint64_t seed = split_seed(505, static_cast<std::uint64_t>(t));
        HiddenInstance inst = random_instance(n, seed);
        RunOptions opts;
        opts.observer = [&](const GenerationTrace& g) {
            const RankedPopulation view = g.before.view();
            const auto w = algo.sample_window(view);
            if (!w)
                return;
            std::vector<BitString> samples;
            for (const auto& m : view.members) {
                BitString s(w->length);
                deposit_bits(s, Range{0, w->length}, extract_bits(m, *w));
                samples.push_back(std::move(s));
            }
            BitString zb(w->length);
            deposit_bits(zb, Range{0, w->length}, extract_bits(g.instance.target(), *w));
            ++windows;
            if (induced_ranking(samples, zb) != view.ranks)
                ++mismatches;
        };
        if (run(algo, config, inst, seed, opts).success)
            ++wins;
    }
    std::string sound;
    const bool sound_ok = reconstruction_sound(10, sound);
    const double rate = static_cast<double>(wins) / static_cast<double>(trials);
    const bool ok = rate >= 0.8 && windows > 0 && mismatches == 0 && sound_ok;
    return {ok, "success " + fmt("%.2f", rate) + ", window identity " + std::to_string(windows - mismatches) + "/" +
                    std::to_string(windows.load()) + ", " + sound};
}

int fitness_of(const BitString& x, const BitString& target)
{
    return static_cast<int>(x.size() - x.hamming(target));
}

Verdict counter_neutral(bool)
{
    std::size_t increments = 0;
    for (std::size_t k = 2; k <= 8; k += 2) {
        const std::uint64_t cap = binomial(k, k / 2);
        const CounterLayout layout{Range{0, k}, Range{k, k}, cap};
        const std::size_t len = 2 * k + 8;
        Rng rng(split_seed(606, k));
        for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << (2 * k)); ++bits) {
            BitString target = random_bits(len, rng);
            deposit_bits(target, Range{0, 2 * k}, bits);
            BitString x = random_bits(len, rng);
            for (std::size_t i = 0; i < k; ++i)
                x.set(k + i, target.get(i));
            counter_write(x, layout, 1);
            for (std::uint64_t v = 1; v < cap; ++v) {
                const int before = fitness_of(x, target);
                apply_code_mask(x, layout, counter_increment_mask(layout, v));
                if (fitness_of(x, target) != before || counter_read(x, layout) != v + 1)
                    return {false, "k=" + std::to_string(k) + " value " + std::to_string(v) + " not neutral"};
                ++increments;
            }
        }
    }
    const CounterLayout big = make_counter(0, 2000);
    BitString x(2 * big.k());
    counter_write(x, big, 1);
    for (std::uint64_t j = 1; j <= 2000; ++j) {
        if (counter_read(x, big) != j)
            return {false, "round trip broke at " + std::to_string(j)};
        BitString y(2 * big.k());
        counter_write(y, big, j);
        if (counter_read(y, big) != j)
            return {false, "write/read broke at " + std::to_string(j)};
        if (j < 2000)
            apply_code_mask(x, big, counter_increment_mask(big, j));
    }
    return {true, std::to_string(increments) + " increments neutral, round trip exact to 2000"};
}

struct TradingRun {
    bool depleted = false;
    std::uint64_t accepted = 0;
};

TradingRun trading_run(std::uint64_t seed)
{
    const std::size_t main_len = 4096, pool_len = 200;
    const Range main{0, main_len};
    const Range pool{main_len, pool_len};
    const CounterLayout cm = make_counter(pool.end(), main_len + 1);
    const CounterLayout cp = make_counter(cm.reference.end(), pool_len + 1);
    const std::size_t n = cp.reference.end();
    const double alpha = 1.0 / 3.0;
    const double p = trading_coin_bias(alpha);

    Rng rng(seed);
    const BitString target = random_bits(n, rng);
    BitString x = target;
    std::vector<std::size_t> positions(main_len);
    for (std::size_t i = 0; i < main_len; ++i)
        positions[i] = i;
    for (std::size_t i = 0; i < main_len / 3; ++i) {
        std::swap(positions[i], positions[i + uniform_index(rng, main_len - i)]);
        x.flip(positions[i]);
    }
    for (std::size_t i = 0; i < pool_len; ++i)
        x.flip(pool[i]);
    // The references hold the optimal code bits, which makes every counter move neutral.
    copy_range(x, cm.code, cm.reference);
    copy_range(x, cp.code, cp.reference);
    counter_write(x, cm, 1);
    counter_write(x, cp, 1);

    TradingRun out;
    int fx = fitness_of(x, target);
    for (std::uint64_t steps = 0; steps < 100 * main_len; ++steps) {
        if (counter_read(x, cm) == main_len + 1)
            break;
        TradeStep s = trading_step(x, main, pool, cm, cp, rng, p);
        if (s.fault == FailureCause::trading_pool_empty) {
            out.depleted = true;
            break;
        }
        const int fy = fitness_of(s.offspring, target);
        if (fy >= fx) {
            x = std::move(s.offspring);
            fx = fy;
            ++out.accepted;
        }
    }
    return out;
}

Verdict trading_drift_check(bool quick)
{
    const std::size_t runs = quick ? 20 : 100;
    std::vector<TradingRun> results(runs);
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(runs); ++i)
        results[static_cast<std::size_t>(i)] = trading_run(split_seed(707, static_cast<std::uint64_t>(i)));
    std::size_t clean = 0;
    std::uint64_t worst = 0;
    for (const auto& r : results) {
        if (!r.depleted)
            ++clean;
        worst = std::max(worst, r.accepted);
    }
    const std::size_t needed = (runs * 99 + 99) / 100;
    const bool ok = clean >= needed && worst <= 8 * 4096;
    return {ok, std::to_string(clean) + "/" + std::to_string(runs) + " without depletion, max accepted steps " +
                    std::to_string(worst) + " (limit 32768)"};
}

std::uint64_t count_weak_orders(std::size_t m)
{
    // Rank assignments whose image is exactly {0, ..., r-1} for some r.
    std::uint64_t count = 0;
    std::vector<std::size_t> r(m, 0);
    while (true) {
        std::vector<bool> used(m, false);
        std::size_t top = 0;
        for (std::size_t v : r) {
            used[v] = true;
            top = std::max(top, v);
        }
        if (std::all_of(used.begin(), used.begin() + static_cast<std::ptrdiff_t>(top + 1), [](bool b) { return b; }))
            ++count;
        std::size_t i = 0;
        while (i < m && ++r[i] == m)
            r[i++] = 0;
        if (i == m)
            break;
    }
    return count;
}

Verdict bounds_check(bool)
{
    using boost::multiprecision::cpp_dec_float_50;
    std::string detail;
    const OneOneBound lb = lb_1plus1(100, 0.5);
    bool ok = lb.las_vegas == 99.0 && lb.monte_carlo == 99.0;
    detail += "lb_1plus1(100,0.5) = (" + fmt("%.0f", lb.las_vegas) + ", " + fmt("%.0f", lb.monte_carlo) + ")";

    const std::uint64_t expected[] = {1, 3, 13, 75, 541, 4683};
    for (std::size_t m = 1; m <= 6; ++m)
        ok = ok && ordered_bell(m) == expected[m - 1] && count_weak_orders(m) == expected[m - 1];
    detail += ", ordered Bell 1..6 match enumeration";

    const cpp_dec_float_50 ln2 = boost::multiprecision::log(cpp_dec_float_50(2));
    const cpp_dec_float_50 b = boost::multiprecision::log(cpp_dec_float_50(6)) / ln2 +
                               2 * (0 - boost::multiprecision::log(ln2) / ln2) - 1;
    const double err = std::abs(bits_mupluslambda(2, 2) - b.convert_to<double>());
    ok = ok && err <= 1e-6;
    detail += ", |b(2,2) - reference| = " + fmt("%.2e", err);
    return {ok, detail};
}

Verdict baseline_separation(bool quick)
{
    const std::size_t trials = quick ? 20 : 100;
    const Summary rls = sweep_summary("rls", powers_of_two(256, 8192), 0, 0, trials, 909);
    const Summary mc = sweep_summary("one-plus-one-mc", powers_of_two(1024, 8192), 0, 0, quick ? 20 : 200, 303);
    const AlgoSummary& r = rls.algos.front();
    const AlgoSummary& c = mc.algos.front();

    bool ok = true;
    std::string detail = "RLS median/(n ln n)";
    std::vector<std::pair<double, double>> rls_points;
    for (const auto& z : r.sizes) {
        if (z.n > 4096)
            continue;
        const double n = static_cast<double>(z.n);
        const double ratio = z.queries.median / (n * std::log(n));
        ok = ok && ratio >= 0.7 && ratio <= 1.2;
        detail += " " + fmt("%.3f", ratio);
        rls_points.emplace_back(n, z.queries.median);
    }
    const double rls_slope = fit_scaling(rls_points);
    const double mc_slope = c.query_slope.value_or(NAN);
    ok = ok && rls_slope >= 1.05 && mc_slope <= 1.15;
    const double rls_top = r.sizes.back().queries.median;
    const double mc_top = c.sizes.back().queries.median;
    ok = ok && mc_top < rls_top;
    detail += ", slopes RLS " + fmt("%.3f", rls_slope) + " vs construction " + fmt("%.3f", mc_slope) +
              ", medians at 8192: " + fmt("%.0f", mc_top) + " < " + fmt("%.0f", rls_top);
    return {ok, detail};
}

struct Criterion {
    const char* name;
    double limit_seconds;  // 0 = no runtime limit
    std::function<Verdict(bool)> check;
};

const std::vector<Criterion>& criteria()
{
    static const std::vector<Criterion> list = {
        {"(2+1) exactness", 5, two_plus_one_exact},
        {"comma exactness", 5, comma_exact},
        {"(1+1) Monte Carlo linearity", 180, one_plus_one_linear},
        {"(1+lambda) generation scaling", 120, one_plus_lambda_generations},
        {"(mu+1) mechanism", 0, mu_plus_one_mechanism},
        {"counter neutrality", 0, counter_neutral},
        {"trading-pool drift", 0, trading_drift_check},
        {"lower-bound evaluator", 0, bounds_check},
        {"baseline separation", 0, baseline_separation},
    };
    return list;
}

}  // namespace

CriterionResult run_criterion(int id, bool quick)
{
    if (id < 1 || id > acceptance_criteria)
        throw std::out_of_range("no acceptance criterion " + std::to_string(id));
    const Criterion& c = criteria()[static_cast<std::size_t>(id - 1)];
    CriterionResult result;
    result.id = id;
    result.name = c.name;
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
        v = c.check(quick);
    } catch (const std::exception& e) {
        v = {false, std::string("exception: ") + e.what()};
    }
    result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    result.passed = v.passed;
    result.detail = v.detail;
    if (!quick && c.limit_seconds > 0 && result.seconds >= c.limit_seconds) {
        result.passed = false;
        result.detail += ", over the " + fmt("%.0f", c.limit_seconds) + " s limit";
    }
    return result;
}

std::vector<CriterionResult> run_acceptance(bool quick)
{
    std::vector<CriterionResult> out;
    for (int id = 1; id <= acceptance_criteria; ++id)
        out.push_back(run_criterion(id, quick));
    return out;
}

std::string format_result(const CriterionResult& r)
{
    std::ostringstream s;
    s << (r.passed ? "PASS" : "FAIL") << "  " << r.id << "  " << r.name << "  (" << fmt("%.1f", r.seconds)
      << " s)  " << r.detail;
    return s.str();
}

}  // namespace bbox

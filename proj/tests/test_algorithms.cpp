#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "bbox/algorithms.hpp"
#include "bbox/harness.hpp"
#include "bbox/layout.hpp"
#include "bbox/reconstruction.hpp"
#include "support.hpp"

using namespace bbox;
using test_support::bits;
using test_support::onemax;

namespace {

RunRecord run_on(const Algorithm& algo, const BitString& z, std::uint64_t seed, const RunOptions& opts = {})
{
    HiddenInstance inst(z);
    return run(algo, model_config(algo, default_budget(algo)), inst, seed, opts);
}

RunRecord schedule(const Algorithm& algo, const BitString& z, std::uint64_t& queries)
{
    HiddenInstance inst(z);
    RunOptions opts;
    opts.stop_at_first_hit = false;
    const RunRecord r = run(algo, model_config(algo, default_budget(algo)), inst, 0, opts);
    queries = inst.queries();
    return r;
}

BitString from_value(std::size_t n, std::uint64_t v)
{
    BitString z(n);
    deposit_bits(z, Range{0, n}, v);
    return z;
}

}  // namespace

TEST_CASE("(2+1) reaches 11111 within 6 queries")
{
    const RunRecord r = run_on(TwoPlusOne(5), bits("11111"), 1);
    CHECK(r.success);
    CHECK(r.queries <= 6);
}

TEST_CASE("(2+1) with n = 1 finds the target during initialization")
{
    for (const char* z : {"0", "1"}) {
        const RunRecord r = run_on(TwoPlusOne(1), bits(z), 1);
        CHECK(r.success);
        CHECK(r.queries <= 2);
        CHECK(r.generations == 0);
    }
}

TEST_CASE("(2+1) needs at most n+1 queries for every target with n <= 12")
{
    for (std::size_t n = 1; n <= 12; ++n) {
        TwoPlusOne algo(n);
        for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
            const RunRecord r = run_on(algo, from_value(n, v), 0);
            REQUIRE(r.success);
            REQUIRE(r.queries <= n + 1);
        }
    }
}

TEST_CASE("(2+1) members agree with the target on the decided prefix")
{
    const std::size_t n = 200;
    TwoPlusOne algo(n);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        HiddenInstance inst = random_instance(n, seed);
        bool ok = true;
        RunOptions opts;
        opts.observer = [&](const GenerationTrace& g) {
            for (const auto& m : g.after.members)
                for (std::size_t i = 0; i < g.generation && i < n; ++i)
                    ok = ok && m.get(i) == g.instance.target().get(i);
        };
        run(algo, model_config(algo, 1000), inst, seed, opts);
        CHECK(ok);
    }
}

TEST_CASE("(2+1) reports a population outside its invariant")
{
    TwoPlusOne algo(4);
    Rng rng(1);
    const RankedPopulation view{{bits("0110"), bits("1001")}, {0, 1}};
    const auto prop = algo.decide(view, rng);
    CHECK(prop.fault == FailureCause::phase_misread);
}

TEST_CASE("(1,2) schedule: n+1 generations counting initialization, at most 2n+1 queries")
{
    for (std::size_t n = 1; n <= 10; ++n) {
        OneCommaLambda algo(n, 2);
        CHECK(algo.id() == "one-comma-two");
        for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
            std::uint64_t queries = 0;
            const RunRecord r = schedule(algo, from_value(n, v), queries);
            REQUIRE(r.success);
            REQUIRE(r.generations + 1 == n + 1);
            REQUIRE(queries <= 2 * n + 1);
        }
    }
    std::uint64_t queries = 0;
    schedule(OneCommaLambda(1, 2), bits("0"), queries);
    CHECK(queries <= 3);
}

TEST_CASE("(1,lambda) schedule length is ceil(n / floor(log2 lambda))")
{
    std::uint64_t queries = 0;
    const RunRecord r = schedule(OneCommaLambda(300, 8), random_instance(300, 4).target(), queries);
    CHECK(r.success);
    CHECK(r.generations == 100);
    CHECK(OneCommaLambda(300, 8).schedule_length() == 100);

    for (std::size_t n = 1; n <= 12; ++n) {
        OneCommaLambda algo(n, 16);
        for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
            const RunRecord s = schedule(algo, from_value(n, v), queries);
            REQUIRE(s.success);
            REQUIRE(s.generations == (n + 3) / 4);
        }
    }
    CHECK(OneCommaLambda(10, 5).block_length() == 2);
    CHECK_THROWS_AS(OneCommaLambda(10, 1), ConfigError);
}

TEST_CASE("RLS from one wrong bit needs about n generations")
{
    const std::size_t n = 32;
    Rls algo(n);
    Rng rng(8);
    double total = 0;
    const int trials = 4000;
    for (int t = 0; t < trials; ++t) {
        const BitString z = random_bits(n, rng);
        BitString x = z;
        x.flip(uniform_index(rng, n));
        int generations = 0;
        while (x != z) {
            const auto prop = algo.decide(RankedPopulation{{x}, {0}}, rng);
            ++generations;
            const BitString& y = prop.offspring[0];
            REQUIRE(prop.tie_break.front() == 1);
            if (onemax(y, z) >= onemax(x, z))
                x = y;
        }
        total += generations;
    }
    const double mean = total / trials;
    CHECK(mean >= 0.9 * n);
    CHECK(mean <= 1.1 * n);
}

TEST_CASE("(1,1) on n = 10 behaves like random sampling")
{
    OneCommaOne algo(10);
    std::vector<double> q;
    for (std::uint64_t t = 0; t < 500; ++t) {
        const std::uint64_t seed = split_seed(3, t);
        HiddenInstance inst = random_instance(10, seed);
        const RunRecord r = run(algo, model_config(algo, default_budget(algo)), inst, seed);
        REQUIRE(r.success);
        q.push_back(static_cast<double>(r.queries));
    }
    const double m = quantile(q, 0.5);
    CHECK(m >= 0.3 * 1024);
    CHECK(m <= 3.0 * 1024);
}

TEST_CASE("(1+1) layout partitions the string")
{
    for (std::size_t n : {256, 1000, 4096, 8192}) {
        const StringLayout l = layout_for(n);
        CHECK_NOTHROW(check_partition(l.regions(), n));
        CHECK(l.pool1.length == static_cast<std::size_t>(std::ceil(4.0 * std::log2(static_cast<double>(n)))));
        CHECK(l.pool2.length == l.pool1.length);
        CHECK(l.counter_a.capacity >= l.payoff.length + 1);
        CHECK(l.counter_b.capacity >= l.pool1.length + 1);
        CHECK(parse_layout(serialize_layout(l.regions())).size() == l.regions().size());
    }
    CHECK_THROWS_AS(layout_for(16), ConfigError);
}

TEST_CASE("layout text round-trips and partitions are checked")
{
    const std::vector<Region> regions = {{"a", Range{0, 3}}, {"b", Range{3, 5}}};
    const std::string text = serialize_layout(regions);
    CHECK(text == "a 1 3\nb 4 8\n");
    const auto back = parse_layout(text);
    REQUIRE(back.size() == 2);
    CHECK(back[1].name == "b");
    CHECK(back[1].range.start == 3);
    CHECK(back[1].range.length == 5);
    CHECK_NOTHROW(check_partition(regions, 8));
    CHECK_THROWS_AS(check_partition(regions, 9), ConfigError);
    CHECK_THROWS_AS(check_partition({{"a", Range{0, 4}}, {"b", Range{3, 5}}}, 8), ConfigError);
}

TEST_CASE("(1+1) construction: fresh strings start in counter setup")
{
    OnePlusOneMC algo(1024);
    Rng rng(1);
    const BitString x = algo.initial(RankedPopulation{}, rng);
    CHECK(algo.phase_of(x) == Phase::counter_setup);
    CHECK(algo.coin_bias() == doctest::Approx(0.1));
}

TEST_CASE("(1+1) construction: the processed payoff prefix is optimal while trading")
{
    OnePlusOneMC algo(1024);
    const StringLayout& l = algo.layout();
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        bool ok = true, traded = false;
        RunOptions opts;
        opts.observer = [&](const GenerationTrace& g) {
            const BitString& x = g.after.members[0];
            if (algo.phase_of(x) != Phase::main_trading)
                return;
            traded = true;
            const auto v = try_counter_read(x, l.counter_a);
            if (!v)
                return;
            for (std::size_t i = 0; i + 1 < *v; ++i)
                ok = ok && x.get(l.payoff[i]) == g.instance.target().get(l.payoff[i]);
        };
        const RunRecord r = run_on(algo, random_instance(1024, seed).target(), seed, opts);
        CHECK(r.success);
        CHECK(traded);
        CHECK(ok);
    }
}

TEST_CASE("(1+1) construction: median queries double with n")
{
    SweepConfig c;
    c.algo_id = "one-plus-one-mc";
    c.n_list = {2048, 4096};
    c.trials = 30;
    c.root_seed = 12;
    const Summary s = summarize(run_sweep(c));
    const auto& sizes = s.algos.front().sizes;
    const double ratio = sizes[1].queries.median / sizes[0].queries.median;
    CHECK(ratio >= 1.7);
    CHECK(ratio <= 2.4);
    CHECK(sizes[0].success_rate >= 0.9);
    CHECK(sizes[1].success_rate >= 0.9);
}

TEST_CASE("(1+lambda): a block generation tries every pattern with the counter advanced")
{
    OnePlusLambda algo(512, 4);
    const BlockLayout& l = algo.layout();
    CHECK(l.block_size == 2);
    CHECK_NOTHROW(check_partition(l.regions(), 512));
    HiddenInstance inst = random_instance(512, 3);
    std::size_t checked = 0;
    RunOptions opts;
    opts.observer = [&](const GenerationTrace& g) {
        const BitString& x = g.before.members[0];
        if (algo.phase_of(x) != Phase::main_trading)
            return;
        const auto v = algo.block_counter(x);
        if (!v || *v > l.block_count)
            return;
        const Range b = l.block(static_cast<std::size_t>(*v - 1));
        // A short final block leaves the remaining offspring as copies of the parent.
        const std::size_t distinct = std::size_t{1} << b.length;
        std::vector<std::uint64_t> patterns, expected;
        for (std::size_t i = 0; i < g.proposal.offspring.size(); ++i) {
            const BitString& y = g.proposal.offspring[i];
            if (i >= distinct) {
                REQUIRE(y == x);
                continue;
            }
            patterns.push_back(extract_bits(y, b));
            REQUIRE(algo.block_counter(y) == *v + 1);
            expected.push_back(i);
        }
        std::sort(patterns.begin(), patterns.end());
        REQUIRE(patterns == expected);
        REQUIRE(extract_bits(g.after.members[0], b) == extract_bits(g.instance.target(), b));
        ++checked;
    };
    const RunRecord r = run(algo, model_config(algo, default_budget(algo)), inst, 3, opts);
    CHECK(r.success);
    CHECK(checked == l.block_count);
}

TEST_CASE("(1+lambda): block phase length is the block count")
{
    OnePlusLambda algo(4096, 16);
    const BlockLayout& l = algo.layout();
    CHECK(l.block_size == 4);
    CHECK(l.block_count == (l.blocks.length + 3) / 4);
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        std::uint64_t block_generations = 0;
        RunOptions opts;
        opts.observer = [&](const GenerationTrace& g) {
            const BitString& x = g.before.members[0];
            const auto v = algo.block_counter(x);
            if (algo.phase_of(x) == Phase::main_trading && v && *v <= l.block_count)
                ++block_generations;
        };
        const RunRecord r = run_on(algo, random_instance(4096, seed).target(), seed, opts);
        CHECK(r.success);
        CHECK(block_generations == l.block_count);
    }
}

TEST_CASE("(mu+1): default block length")
{
    CHECK(default_block_length(16) == 16);
    CHECK(default_block_length(8) == 4);
    CHECK(default_block_length(3) == 0);
    CHECK(required_samples(default_block_length(16), 16) == 16);
}

TEST_CASE("(mu+1): samples in a window are ranked by their block alone")
{
    MuPlusOne algo(2048, 16, MuPlusOneParams{16});
    REQUIRE(algo.uses_reconstruction());
    CHECK(algo.layout().k == 16);
    CHECK_NOTHROW(check_partition(algo.layout().regions(), 2048));
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        std::size_t windows = 0, equal = 0;
        RunOptions opts;
        opts.observer = [&](const GenerationTrace& g) {
            const auto view = g.before.view();
            const auto w = algo.sample_window(view);
            if (!w)
                return;
            REQUIRE(w->end() <= 2048);
            std::vector<BitString> blocks;
            for (const auto& m : view.members) {
                BitString s(w->length);
                deposit_bits(s, Range{0, w->length}, extract_bits(m, *w));
                blocks.push_back(s);
            }
            BitString zb(w->length);
            deposit_bits(zb, Range{0, w->length}, extract_bits(g.instance.target(), *w));
            ++windows;
            equal += induced_ranking(blocks, zb) == view.ranks;
        };
        const RunRecord r = run_on(algo, random_instance(2048, seed).target(), seed, opts);
        CHECK(r.success);
        CHECK(windows > 0);
        CHECK(equal == windows);
    }
}

TEST_CASE("(mu+1) with mu = 3 stays close to (2+1)")
{
    for (std::size_t n : {16, 64, 200, 512}) {
        MuPlusOne algo(n, 3);
        CHECK_FALSE(algo.uses_reconstruction());
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            const RunRecord r = run_on(algo, random_instance(n, seed).target(), seed);
            REQUIRE(r.success);
            REQUIRE(r.queries <= 2 * n);
        }
    }
}

TEST_CASE("(mu+1) succeeds across population sizes")
{
    for (auto [n, mu] : {std::pair<std::size_t, std::size_t>{512, 8}, {1024, 12}, {300, 16}}) {
        MuPlusOne algo(n, mu);
        std::size_t wins = 0;
        for (std::uint64_t seed = 0; seed < 20; ++seed)
            wins += run_on(algo, random_instance(n, seed + 100).target(), seed).success;
        CAPTURE(n);
        CAPTURE(mu);
        CHECK(wins >= 16);
    }
}

TEST_CASE("registry builds every algorithm and rejects bad parameters")
{
    for (const auto& id : algorithm_ids()) {
        auto a = make_algorithm(id, AlgorithmParams{id == "one-comma-one" ? std::size_t{12} : std::size_t{256}, 0, 0});
        CHECK(a->id() == id);
        CHECK(default_budget(*a) >= 1);
    }
    CHECK_THROWS_AS(make_algorithm("nope", {64, 0, 0}), ConfigError);
    CHECK_THROWS_AS(make_algorithm("rls", {0, 0, 0}), ConfigError);
    CHECK_THROWS_AS(make_algorithm("two-plus-one", {64, 3, 0}), ConfigError);
    CHECK_THROWS_AS(make_algorithm("one-comma-one", {64, 0, 0}), ConfigError);
    CHECK(default_budget(*make_algorithm("two-plus-one", {100, 0, 0})) == 4000);
    CHECK(default_budget(*make_algorithm("one-plus-lambda", {100, 0, 8})) == static_cast<std::uint64_t>(
                                                                                 std::ceil(40.0 * 8 * 100 / 3)));
}

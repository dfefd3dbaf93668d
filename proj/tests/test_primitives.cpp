#include <doctest.h>

#include <cmath>
#include <numeric>

#include "bbox/algorithms.hpp"
#include "bbox/primitives.hpp"
#include "support.hpp"

using namespace bbox;
using test_support::bits;
using test_support::onemax;

namespace {

// Target with the given fraction of payoff positions set against x.
BitString payoff_target(const BitString& x, Range payoff, double beta, Rng& rng)
{
    BitString z = x;
    for (std::size_t i = 0; i < payoff.length; ++i)
        if (bernoulli(rng, beta))
            z.flip(payoff[i]);
    return z;
}

struct TradeFixture {
    Range main{0, 4};
    Range pool{4, 4};
    CounterLayout cm = make_counter(8, 5);
    CounterLayout cp = make_counter(cm.reference.end(), 5);
    std::size_t n = cp.reference.end();
    BitString z;
    BitString x;

    TradeFixture(std::uint64_t main_value, std::uint64_t pool_value, bool main_bit_optimal)
    {
        Rng rng(3);
        z = random_bits(n, rng);
        x = z;
        copy_range(x, cm.code, cm.reference);
        copy_range(x, cp.code, cp.reference);
        for (std::size_t i = pool_value - 1; i < pool.length; ++i)
            x.flip(pool[i]);
        if (!main_bit_optimal)
            x.flip(main[main_value - 1]);
        counter_write(x, cm, main_value);
        counter_write(x, cp, pool_value);
    }
};

}  // namespace

TEST_CASE("rls_step flips exactly one position of the region")
{
    Rng rng(1);
    const BitString x(20);
    CHECK(rls_step(x, Range{7, 1}, rng) == bits("00000001000000000000"));
    std::vector<int> hits(10, 0);
    for (int i = 0; i < 10000; ++i) {
        const BitString y = rls_step(x, Range{5, 10}, rng);
        REQUIRE(y.count() == 1);
        for (std::size_t p = 0; p < 10; ++p)
            hits[p] += y.get(5 + p);
    }
    for (int h : hits) {
        CHECK(h >= 850);
        CHECK(h <= 1150);
    }
    CHECK_THROWS_AS(rls_step(x, Range{0, 0}, rng), std::invalid_argument);
}

TEST_CASE("full-string RLS solves n = 128 within 20 n ln n")
{
    Rls algo(128);
    const auto limit = static_cast<std::uint64_t>(20.0 * 128 * std::log(128.0));
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        HiddenInstance inst = random_instance(128, seed);
        const RunRecord r = run(algo, model_config(algo, limit), inst, seed);
        REQUIRE(r.success);
    }
}

TEST_CASE("copy_step signals completion once src and dst agree")
{
    Rng rng(2);
    const BitString x = bits("1010" "1010" "0000");
    CHECK_FALSE(copy_step(x, Range{0, 4}, Range{4, 4}, Range{8, 4}, rng).has_value());
    const BitString y = bits("1010" "1000" "0000");
    const auto s = copy_step(y, Range{0, 4}, Range{4, 4}, Range{8, 4}, rng);
    REQUIRE(s.has_value());
    CHECK(s->get(6));
    CHECK(s->hamming(y) == 2);
    CHECK(extract_bits(*s, Range{8, 4}) != 0);
    CHECK_THROWS_AS(copy_step(y, Range{0, 4}, Range{4, 3}, Range{8, 4}, rng), std::invalid_argument);
}

TEST_CASE("copying over non-optimal bits is always accepted")
{
    Rng rng(4);
    for (int rep = 0; rep < 200; ++rep) {
        const std::size_t k = 12;
        const Range src{0, k}, dst{k, k}, payoff{2 * k, 64};
        BitString x = random_bits(2 * k + 64, rng);
        BitString z = x;
        for (std::size_t i = 0; i < k; ++i) {
            z.set(dst[i], x.get(src[i]));  // the copy makes dst optimal
        }
        while (auto s = copy_step(x, src, dst, payoff, rng)) {
            REQUIRE(onemax(*s, z) >= onemax(x, z));
            x = std::move(*s);
        }
    }
}

TEST_CASE("copy progress and cost per copied bit")
{
    Rng rng(6);
    double proposals = 0, copied = 0;
    for (int rep = 0; rep < 10000 / 16; ++rep) {
        const std::size_t k = 16;
        const Range src{0, k}, dst{k, k}, payoff{2 * k, 2000};
        BitString x = random_bits(2 * k + payoff.length, rng);
        BitString z = x;  // dst starts optimal, so every changed bit needs a payoff bit
        for (std::size_t i = 0; i < payoff.length; ++i)
            if (bernoulli(rng, 0.5))
                z.flip(payoff[i]);
        for (std::size_t i = 0; i < k; ++i)
            copied += x.get(src[i]) != x.get(dst[i]);
        std::size_t progress = 0;
        while (auto s = copy_step(x, src, dst, payoff, rng)) {
            ++proposals;
            if (onemax(*s, z) >= onemax(x, z)) {
                x = std::move(*s);
                std::size_t first = 0;
                while (first < k && x.get(src[first]) == x.get(dst[first]))
                    ++first;
                REQUIRE(first >= progress);
                progress = first;
            }
        }
    }
    const double per_bit = proposals / copied;
    CHECK(per_bit >= 1.0);
    CHECK(per_bit <= 5.0);
}

TEST_CASE("overwrite_step writes a constant pattern")
{
    Rng rng(8);
    const BitString pattern = bits("11111111");
    const Range dst{0, 8}, payoff{8, 32};
    BitString x(40);
    BitString z = random_bits(40, rng);
    for (std::size_t i = 0; i < 8; ++i)
        z.set(i, true);
    std::size_t accepted_dst_flips = 0;
    while (auto s = overwrite_step(x, dst, pattern, payoff, rng)) {
        if (onemax(*s, z) >= onemax(x, z)) {
            accepted_dst_flips += extract_bits(*s, dst) != extract_bits(x, dst);
            x = std::move(*s);
        }
    }
    CHECK(accepted_dst_flips == 8);
    CHECK(extract_bits(x, dst) == 0xff);
    CHECK_FALSE(overwrite_step(x, dst, pattern, payoff, rng).has_value());
    CHECK_THROWS_AS(overwrite_step(x, dst, bits("11"), payoff, rng), std::invalid_argument);
}

TEST_CASE("inverting a copied block leaves no optimal bit in it")
{
    Rng rng(9);
    const Range dst{0, 24}, payoff{24, 400};
    for (int rep = 0; rep < 50; ++rep) {
        BitString x = random_bits(dst.length + payoff.length, rng);
        const BitString z = payoff_target(x, payoff, 0.5, rng);  // dst starts optimal
        BitString pattern(dst.length);
        for (std::size_t i = 0; i < dst.length; ++i)
            pattern.set(i, !z.get(dst[i]));
        while (auto s = overwrite_step(x, dst, pattern, payoff, rng))
            if (onemax(*s, z) >= onemax(x, z))
                x = std::move(*s);
        for (std::size_t i = 0; i < dst.length; ++i)
            REQUIRE(x.get(dst[i]) != z.get(dst[i]));
    }
}

TEST_CASE("termination flag count and round length")
{
    CHECK(termination_flag_count(0.5) == 24);
    CHECK(termination_flag_count(0.01) == 40);
    CHECK(termination_flag_count(1e-6) == 120);
    CHECK_THROWS_AS(termination_flag_count(0.0), std::invalid_argument);
    CHECK(default_round_length(16) == 192);
    CHECK(default_round_length(1) == 2);
}

TEST_CASE("reliable optimization refuses to run past its last flag")
{
    Rng rng(1);
    BitString x(40);
    for (std::size_t i = 16; i < 20; ++i)
        x.set(i, true);
    CHECK_THROWS_AS(reliable_optimize_step(x, Range{0, 16}, Range{16, 4}, Range{20, 20}, rng),
                    std::invalid_argument);
}

namespace {

struct ReliableOutcome {
    bool optimal = false;
    std::uint64_t steps = 0;
};

ReliableOutcome reliable_trial(std::size_t k, std::size_t flags, double beta, Rng& rng)
{
    const Range targets{0, k}, flag_range{k, flags}, payoff{k + flags, 60 * k};
    BitString x = random_bits(payoff.end(), rng);
    for (std::size_t i = 0; i < flags; ++i)
        x.set(flag_range[i], false);
    BitString z = random_bits(payoff.end(), rng);
    for (std::size_t i = 0; i < payoff.length; ++i)
        z.set(payoff[i], bernoulli(rng, beta) ? !x.get(payoff[i]) : x.get(payoff[i]));
    ReliableOutcome out;
    while (!all_ones(x, flag_range)) {
        BitString y = reliable_optimize_step(x, targets, flag_range, payoff, rng);
        ++out.steps;
        if (onemax(y, z) >= onemax(x, z))
            x = std::move(y);
    }
    out.optimal = true;
    for (std::size_t i = 0; i < k; ++i)
        out.optimal = out.optimal && x.get(i) == z.get(i);
    return out;
}

}  // namespace

TEST_CASE("reliable optimization finishes its targets")
{
    Rng rng(12);
    int good = 0;
    for (int t = 0; t < 500; ++t)
        good += reliable_trial(16, 24, 1.0 / 3.0, rng).optimal;
    CHECK(good >= 475);
}

TEST_CASE("reliable optimization cost stays within 8 l k log k / beta")
{
    Rng rng(13);
    for (std::size_t k : {8, 16, 32}) {
        double steps = 0;
        for (int t = 0; t < 40; ++t)
            steps += static_cast<double>(reliable_trial(k, 24, 1.0 / 3.0, rng).steps);
        const double scale = 24.0 * static_cast<double>(k) * std::log2(static_cast<double>(k)) * 3.0;
        CAPTURE(k);
        CHECK(steps / 40.0 / scale <= 8.0);
    }
}

TEST_CASE("trading coin bias and drift")
{
    CHECK(trading_coin_bias(1.0 / 3.0) == doctest::Approx(1.0 / 14.0).epsilon(1e-12));
    CHECK(trading_drift(trading_coin_bias(1.0 / 3.0), 1.0 / 3.0) < 0.0);
    CHECK(trading_drift(trading_coin_bias(0.5), 0.5) < 0.0);
    CHECK(trading_drift(0.5, 0.5) > 0.0);
}

TEST_CASE("trading heads over a non-optimal main bit is neutral")
{
    TradeFixture f(1, 2, false);
    Rng rng(1);
    const TradeStep s = trading_step(f.x, f.main, f.pool, f.cm, f.cp, rng, 0.0);
    CHECK(s.move == TradeMove::heads);
    CHECK_FALSE(s.fault.has_value());
    CHECK(onemax(s.offspring, f.z) == onemax(f.x, f.z));
    CHECK(counter_read(s.offspring, f.cm) == 2);
    CHECK(counter_read(s.offspring, f.cp) == 1);
    CHECK(s.offspring.get(f.main[0]) == f.z.get(f.main[0]));
}

TEST_CASE("trading heads over an optimal main bit is rejected")
{
    TradeFixture f(1, 2, true);
    Rng rng(1);
    const TradeStep s = trading_step(f.x, f.main, f.pool, f.cm, f.cp, rng, 0.0);
    CHECK(onemax(s.offspring, f.z) < onemax(f.x, f.z));
}

TEST_CASE("trading tails never loses fitness")
{
    for (bool optimal : {false, true}) {
        TradeFixture f(2, 2, optimal);
        Rng rng(1);
        const TradeStep s = trading_step(f.x, f.main, f.pool, f.cm, f.cp, rng, 1.0);
        CHECK(s.move == TradeMove::tails);
        CHECK(onemax(s.offspring, f.z) >= onemax(f.x, f.z));
        CHECK(counter_read(s.offspring, f.cp) == 3);
        CHECK(counter_read(s.offspring, f.cm) == 2);
    }
}

TEST_CASE("trading seeds the pool first and reports an empty pool")
{
    {
        TradeFixture f(1, 1, false);
        Rng rng(1);
        const TradeStep s = trading_step(f.x, f.main, f.pool, f.cm, f.cp, rng, 0.5);
        CHECK(s.move == TradeMove::seed_pool);
        CHECK(onemax(s.offspring, f.z) == onemax(f.x, f.z) + 1);
        CHECK(counter_read(s.offspring, f.cp) == 2);
    }
    {
        TradeFixture f(1, 5, false);
        Rng rng(1);
        const TradeStep s = trading_step(f.x, f.main, f.pool, f.cm, f.cp, rng, 1.0);
        CHECK(s.fault == FailureCause::trading_pool_empty);
    }
}

TEST_CASE("unspent pool bits stay non-optimal throughout a trading run")
{
    Rng rng(31);
    for (int rep = 0; rep < 20; ++rep) {
        const Range main{0, 512}, pool{512, 64};
        const CounterLayout cm = make_counter(pool.end(), main.length + 1);
        const CounterLayout cp = make_counter(cm.reference.end(), pool.length + 1);
        const BitString z = random_bits(cp.reference.end(), rng);
        BitString x = z;
        for (std::size_t i = 0; i < main.length; ++i)
            if (bernoulli(rng, 1.0 / 3.0))
                x.flip(main[i]);
        for (std::size_t i = 0; i < pool.length; ++i)
            x.flip(pool[i]);
        copy_range(x, cm.code, cm.reference);
        copy_range(x, cp.code, cp.reference);
        counter_write(x, cm, 1);
        counter_write(x, cp, 1);
        const double p = trading_coin_bias(1.0 / 3.0);
        while (counter_read(x, cm) <= main.length) {
            TradeStep s = trading_step(x, main, pool, cm, cp, rng, p);
            REQUIRE_FALSE(s.fault.has_value());
            if (onemax(s.offspring, z) >= onemax(x, z))
                x = std::move(s.offspring);
            const std::uint64_t used = counter_read(x, cp) - 1;
            for (std::size_t i = used; i < pool.length; ++i)
                REQUIRE(x.get(pool[i]) != z.get(pool[i]));
            for (std::size_t i = 0; i + 1 < counter_read(x, cm); ++i)
                REQUIRE(x.get(main[i]) == z.get(main[i]));
        }
    }
}

TEST_CASE("steps are pure functions of string, layout and draw")
{
    const BitString x = bits("0110100101101001");
    Rng a(77), b(77);
    CHECK(rls_step(x, Range{2, 9}, a) == rls_step(x, Range{2, 9}, b));
    CHECK(copy_step(x, Range{0, 4}, Range{4, 4}, Range{8, 8}, a) ==
          copy_step(x, Range{0, 4}, Range{4, 4}, Range{8, 8}, b));
    CHECK(reliable_optimize_step(x, Range{0, 4}, Range{4, 4}, Range{8, 8}, a) ==
          reliable_optimize_step(x, Range{0, 4}, Range{4, 4}, Range{8, 8}, b));
}

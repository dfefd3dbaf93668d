#include <doctest.h>

#include <algorithm>

#include "bbox/algorithms.hpp"
#include "bbox/reconstruction.hpp"
#include "support.hpp"

using namespace bbox;
using test_support::bits;

namespace {

RankingObservation observe(const std::vector<BitString>& samples, const BitString& z)
{
    return RankingObservation{z.size(), samples, induced_ranking(samples, z)};
}

// Brute force written against induced_ranking rather than the packed scan.
std::vector<BitString> brute_force(const RankingObservation& obs)
{
    std::vector<BitString> out;
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << obs.k); ++v) {
        BitString c(obs.k);
        deposit_bits(c, Range{0, obs.k}, v);
        if (induced_ranking(obs.samples, c) == obs.ranks)
            out.push_back(c);
    }
    return out;
}

}  // namespace

TEST_CASE("no samples leave every target possible")
{
    const RankingObservation obs{5, {}, {}};
    CHECK(consistent_targets(obs).size() == 32);
}

TEST_CASE("two samples ranked apart fix the bit they differ in")
{
    const RankingObservation obs{2, {bits("00"), bits("01")}, {1, 0}};
    CHECK(consistent_targets(obs) == std::vector<BitString>{bits("01"), bits("11")});
}

TEST_CASE("an equal-rank pair at distance 2 halves the candidates")
{
    const std::size_t k = 8;
    BitString a(k), b(k);
    b.flip(2);
    b.flip(5);
    const RankingObservation obs{k, {a, b}, {0, 0}};
    const auto c = consistent_targets(obs);
    CHECK(c.size() == 128);
    for (const auto& z : c)
        CHECK(z.get(2) != z.get(5));
}

TEST_CASE("a single sample cannot identify a block")
{
    CHECK_FALSE(reconstruct_block(RankingObservation{1, {bits("0")}, {0}}).has_value());
}

TEST_CASE("malformed observations are rejected")
{
    CHECK_THROWS_AS(consistent_targets(RankingObservation{21, {}, {}}), UnsupportedParameter);
    CHECK_THROWS_AS(consistent_targets(RankingObservation{2, {bits("00")}, {}}), std::invalid_argument);
    CHECK_THROWS_AS(consistent_targets(RankingObservation{2, {bits("00"), bits("11")}, {0, 2}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(consistent_targets(RankingObservation{2, {bits("000")}, {0}}), std::invalid_argument);
}

TEST_CASE("required sample counts")
{
    CHECK(required_samples(16, 100) == 16);
    CHECK(required_samples(16, 10) == 10);
    CHECK(required_samples(4, 100) == 8);
    CHECK(required_samples(2, 100) == 8);
    CHECK(required_samples(4, 5) == 5);
    CHECK(required_samples(0, 5) == 0);
}

TEST_CASE("the target is always consistent and every candidate reproduces the ranking")
{
    for (std::size_t k = 1; k <= 10; ++k) {
        for (std::uint64_t v = 0; v < (std::uint64_t{1} << k); ++v) {
            BitString z(k);
            deposit_bits(z, Range{0, k}, v);
            Rng rng(split_seed(k, v));
            std::vector<BitString> samples;
            for (std::size_t i = 0; i < std::max<std::size_t>(2, required_samples(k, 16)); ++i)
                samples.push_back(random_bits(k, rng));
            const auto obs = observe(samples, z);
            const auto c = consistent_targets(obs);
            REQUIRE(std::find(c.begin(), c.end(), z) != c.end());
            for (const auto& y : c)
                REQUIRE(induced_ranking(samples, y) == obs.ranks);
        }
    }
}

TEST_CASE("scan matches the brute-force oracle and the serial reference")
{
    Rng rng(41);
    for (int rep = 0; rep < 60; ++rep) {
        const std::size_t k = 1 + uniform_index(rng, 13);
        const BitString z = random_bits(k, rng);
        std::vector<BitString> samples;
        for (std::size_t i = 0, t = uniform_index(rng, 9); i < t; ++i)
            samples.push_back(random_bits(k, rng));
        const auto obs = observe(samples, z);
        const auto c = consistent_targets(obs);
        CHECK(c == brute_force(obs));
        CHECK(c == consistent_targets_serial(obs));
    }
}

TEST_CASE("adding a sample never enlarges the consistent set")
{
    Rng rng(42);
    for (int rep = 0; rep < 100; ++rep) {
        const std::size_t k = 6 + uniform_index(rng, 6);
        const BitString z = random_bits(k, rng);
        std::vector<BitString> samples;
        std::size_t previous = std::size_t{1} << k;
        for (int t = 0; t < 12; ++t) {
            samples.push_back(random_bits(k, rng));
            const auto c = consistent_targets(observe(samples, z));
            REQUIRE(c.size() <= previous);
            previous = c.size();
        }
    }
}

TEST_CASE("uniqueness rate grows with the number of samples")
{
    const std::size_t k = 10;
    Rng rng(43);
    std::vector<int> unique(17, 0);
    for (int rep = 0; rep < 200; ++rep) {
        const BitString z = random_bits(k, rng);
        std::vector<BitString> samples;
        for (std::size_t t = 1; t <= 16; ++t) {
            samples.push_back(random_bits(k, rng));
            unique[t] += reconstruct_block(observe(samples, z)).has_value();
        }
    }
    for (std::size_t t = 2; t <= 16; ++t)
        CHECK(unique[t] >= unique[t - 1]);
    CHECK(unique[16] > unique[4]);
}

TEST_CASE("sixteen samples identify a 16-bit block in at least 90% of trials")
{
    Rng rng(44);
    int unique = 0;
    for (int rep = 0; rep < 1000; ++rep) {
        const BitString z = random_bits(16, rng);
        std::vector<BitString> samples;
        for (int i = 0; i < 16; ++i)
            samples.push_back(random_bits(16, rng));
        const auto r = reconstruct_block(observe(samples, z));
        if (r) {
            REQUIRE(*r == z);
            ++unique;
        }
    }
    CHECK(unique >= 900);
}

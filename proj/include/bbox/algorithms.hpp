#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "bbox/counter.hpp"
#include "bbox/layout.hpp"
#include "bbox/model.hpp"

namespace bbox {

enum class Phase { counter_setup, pool_prepare, main_trading, tail_rls, done_candidate };

std::string_view to_string(Phase phase);

/// (2+1): keeps a pair that differs in exactly one position p, with zeros beyond p, and
/// tests position p+1 from the better member. At most n+1 queries.
class TwoPlusOne final : public Algorithm {
public:
    explicit TwoPlusOne(std::size_t n);

    std::string_view id() const override { return "two-plus-one"; }
    std::size_t n() const override { return n_; }
    ModelShape shape() const override { return {2, 1, SelectionMode::plus}; }
    BitString initial(const RankedPopulation& so_far, Rng& rng) const override;
    GenerationProposal decide(const RankedPopulation& view, Rng& rng) const override;

private:
    std::size_t n_;
};

struct OnePlusOneParams {
    LayoutParams layout;
    /// RLS steps per timer flag are round_factor * k * log2 k.
    double round_factor = 1.0 / 6.0;
    /// Non-optimal fraction of the payoff block assumed when picking the coin bias.
    double alpha = 0.5;
};

/// Monte Carlo (1+1) construction: two neutral counters, a reliably built trading pool,
/// one pass over the payoff block, then RLS over the regions the flush leaves unrestored.
class OnePlusOneMC final : public Algorithm {
public:
    explicit OnePlusOneMC(std::size_t n, OnePlusOneParams params = {});

    std::string_view id() const override { return "one-plus-one-mc"; }
    std::size_t n() const override { return layout_.n; }
    ModelShape shape() const override { return {1, 1, SelectionMode::plus}; }
    BitString initial(const RankedPopulation& so_far, Rng& rng) const override;
    GenerationProposal decide(const RankedPopulation& view, Rng& rng) const override;

    const StringLayout& layout() const { return layout_; }
    double coin_bias() const { return coin_; }
    Phase phase_of(const BitString& x) const;
    BitString step(const BitString& x, Rng& rng, std::optional<FailureCause>& fault) const;

private:
    std::size_t round_length(std::size_t k) const;
    BitString counter_setup_step(const BitString& x, const CounterLayout& ctr, std::size_t copied,
                                 std::size_t ready, Range timer, Rng& rng) const;

    StringLayout layout_;
    OnePlusOneParams params_;
    double coin_;
};

struct OnePlusLambdaParams {
    /// Upper limit on the marker count; the count is also capped at k/2 so that entering
    /// the tail never lowers the fitness.
    std::size_t tail_markers = 8;
    std::size_t timer_flags = 24;
    double round_factor = 1.0 / 6.0;
    /// Cap on the probability that a setup generation is a timer generation.
    double timer_generation_cap = 0.25;
};

/// Layout of the (1+lambda) construction:
/// markers | copied | ready | timer | C | C' | blocks
struct BlockLayout {
    std::size_t n = 0;
    Range markers;
    std::size_t copied = 0;
    std::size_t ready = 0;
    Range timer;
    CounterLayout counter;
    Range blocks;
    std::size_t block_size = 1;
    std::size_t block_count = 0;

    Range block(std::size_t index) const;  // 0-based
    /// Everything except the blocks.
    Range tail_region() const { return Range{0, blocks.start}; }
    std::vector<Region> regions() const;
};

/// (1+lambda) construction: a neutral counter selects the next block of floor(log2 lambda)
/// bits, and each generation tries every pattern of that block.
class OnePlusLambda final : public Algorithm {
public:
    OnePlusLambda(std::size_t n, std::size_t lambda, OnePlusLambdaParams params = {});

    std::string_view id() const override { return "one-plus-lambda"; }
    std::size_t n() const override { return layout_.n; }
    ModelShape shape() const override { return {1, lambda_, SelectionMode::plus}; }
    BitString initial(const RankedPopulation& so_far, Rng& rng) const override;
    GenerationProposal decide(const RankedPopulation& view, Rng& rng) const override;

    const BlockLayout& layout() const { return layout_; }
    Phase phase_of(const BitString& x) const;
    /// Counter value v in 1..block_count means block v-1 is next.
    std::optional<std::uint64_t> block_counter(const BitString& x) const;

private:
    std::vector<BitString> setup_offspring(const BitString& x, Rng& rng) const;
    std::vector<BitString> tail_offspring(const BitString& x, Rng& rng) const;

    std::size_t lambda_;
    OnePlusLambdaParams params_;
    BlockLayout layout_;
};

struct MuPlusOneParams {
    /// Block length; 0 selects the default rule.
    std::size_t block_k = 0;
};

/// Layout of the (mu+1) construction: f3 | C | f1 f2 | C' | payoff blocks of length k.
struct MuLayout {
    std::size_t n = 0;
    std::size_t f3 = 0;
    std::size_t f1 = 0;
    std::size_t f2 = 0;
    CounterLayout counter;
    Range payoff;
    std::size_t k = 0;
    std::size_t block_count = 0;  // last block may be shorter

    Range block(std::size_t index) const;  // 0-based
    /// Counter value while block i is being sampled.
    std::uint64_t sample_value(std::size_t block_index) const { return 1 + block_index; }
    std::uint64_t capacity() const { return block_count; }
    /// f1 f2 C', recovered after the last payoff block while f3 is set.
    Range finale_window() const { return Range{f1, 2 + counter.k()}; }

    std::vector<Region> regions() const;
};

/// Default block length for a population of mu: the largest even k <= min(20, 2 ceil(mu log2 mu / 2))
/// with ceil(4k / log2 k) <= mu, or 0 when no such k exists.
std::size_t default_block_length(std::size_t mu);

/// (mu+1) construction: builds a neutral counter with the (2+1) strategy, then recovers the
/// payoff block by block from the ranking of mu samples that differ only inside the block.
class MuPlusOne final : public Algorithm {
public:
    MuPlusOne(std::size_t n, std::size_t mu, MuPlusOneParams params = {});

    std::string_view id() const override { return "mu-plus-one"; }
    std::size_t n() const override { return n_; }
    ModelShape shape() const override { return {mu_, 1, SelectionMode::plus}; }
    BitString initial(const RankedPopulation& so_far, Rng& rng) const override;
    GenerationProposal decide(const RankedPopulation& view, Rng& rng) const override;

    /// False when mu or n is too small for block reconstruction; the algorithm then runs
    /// the (2+1) strategy with the extra members as passive copies.
    bool uses_reconstruction() const { return layout_.has_value(); }
    const MuLayout& layout() const { return *layout_; }

    /// The range the members differ in when the population is a complete sample window:
    /// every member is in the same block (or in the finale) and they agree outside it.
    std::optional<Range> sample_window(const RankedPopulation& view) const;

private:
    struct Key {
        int stage = 0;
        std::uint64_t value = 0;
        auto operator<=>(const Key&) const = default;
    };
    Key progress(const BitString& x) const;
    std::vector<std::size_t> keep_order(const RankedPopulation& view) const;
    GenerationProposal single(BitString offspring, const RankedPopulation& view) const;
    GenerationProposal decide_pairwise(const RankedPopulation& view) const;
    GenerationProposal decide_blocks(const RankedPopulation& view, Rng& rng) const;
    GenerationProposal decide_window(const RankedPopulation& view, Rng& rng) const;
    GenerationProposal decide_finale(const RankedPopulation& view, Rng& rng) const;
    struct Resolved {
        BitString bits;  // the recovered window contents
        std::optional<FailureCause> fault;
    };
    /// Reconstruction over a complete window, or the probe or sample to propose instead.
    std::variant<Resolved, GenerationProposal> reconstruct(const RankedPopulation& view, Range window,
                                                           const BitString& base, Rng& rng) const;

    std::size_t n_;
    std::size_t mu_;
    std::optional<MuLayout> layout_;
};

/// (1,lambda) with lambda >= 2: a 1-marker walks right in steps of l = floor(log2 lambda),
/// and each generation tries all 2^l patterns of the l positions it passes. For lambda = 2
/// this is the (1,2) algorithm.
class OneCommaLambda final : public Algorithm {
public:
    OneCommaLambda(std::size_t n, std::size_t lambda);

    std::string_view id() const override { return lambda_ == 2 ? "one-comma-two" : "one-comma-lambda"; }
    std::size_t n() const override { return n_; }
    ModelShape shape() const override { return {1, lambda_, SelectionMode::comma}; }
    BitString initial(const RankedPopulation& so_far, Rng& rng) const override;
    GenerationProposal decide(const RankedPopulation& view, Rng& rng) const override;

    std::size_t block_length() const { return ell_; }
    /// Generations the schedule needs: ceil(n / l).
    std::uint64_t schedule_length() const;

private:
    std::size_t n_;
    std::size_t lambda_;
    std::size_t ell_;
};

/// Randomized local search: flip one uniform bit, keep the offspring unless it is worse.
class Rls final : public Algorithm {
public:
    explicit Rls(std::size_t n) : n_(n) {}

    std::string_view id() const override { return "rls"; }
    std::size_t n() const override { return n_; }
    ModelShape shape() const override { return {1, 1, SelectionMode::plus}; }
    BitString initial(const RankedPopulation& so_far, Rng& rng) const override;
    GenerationProposal decide(const RankedPopulation& view, Rng& rng) const override;

private:
    std::size_t n_;
};

/// (1,1): a fresh uniform string every generation.
class OneCommaOne final : public Algorithm {
public:
    explicit OneCommaOne(std::size_t n) : n_(n) {}

    std::string_view id() const override { return "one-comma-one"; }
    std::size_t n() const override { return n_; }
    ModelShape shape() const override { return {1, 1, SelectionMode::comma}; }
    BitString initial(const RankedPopulation& so_far, Rng& rng) const override;
    GenerationProposal decide(const RankedPopulation& view, Rng& rng) const override;

private:
    std::size_t n_;
};

BitString random_bits(std::size_t n, Rng& rng);

struct AlgorithmParams {
    std::size_t n = 0;
    std::size_t mu = 0;      // 0 selects the algorithm's natural value
    std::size_t lambda = 0;  // 0 selects the algorithm's natural value
};

const std::vector<std::string>& algorithm_ids();

/// Throws ConfigError for unknown ids or unsupported parameters.
std::unique_ptr<Algorithm> make_algorithm(std::string_view id, const AlgorithmParams& params);

/// Query budget: factor times the algorithm's order of growth (n for query-linear
/// constructions, lambda n / floor(log2 lambda) for the block-parallel ones, n ln n for RLS,
/// 2^n for (1,1)).
std::uint64_t default_budget(const Algorithm& algorithm, double factor = 40.0);

ModelConfig model_config(const Algorithm& algorithm, std::uint64_t budget);

}  // namespace bbox

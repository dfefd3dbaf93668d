#pragma once

/// Elitist (1+1) building blocks. Each step maps the current string and a randomness
/// draw to one offspring; all progress is re-derived from the string itself.
/// A step that has nothing left to do returns std::nullopt, and the caller moves on.

#include <cstddef>
#include <optional>

#include "bbox/bitstring.hpp"
#include "bbox/counter.hpp"
#include "bbox/model.hpp"
#include "bbox/rng.hpp"

namespace bbox {

using Step = std::optional<BitString>;

/// Flips one uniformly chosen position of region.
BitString rls_step(const BitString& x, Range region, Rng& rng);

/// Flips pos together with one uniformly chosen payoff bit.
BitString flip_with_payoff(const BitString& x, std::size_t pos, Range payoff, Rng& rng);

/// Makes dst agree with src at the first position where they differ, paying with one
/// random payoff bit.
Step copy_step(const BitString& x, Range src, Range dst, Range payoff, Rng& rng);

/// As copy_step with a constant pattern (|pattern| = |dst|) in place of src.
Step overwrite_step(const BitString& x, Range dst, const BitString& pattern, Range payoff, Rng& rng);

/// Expected number of RLS steps per flag step: ceil(3 k log2 k), at least 2.
std::size_t default_round_length(std::size_t k);

/// Number of termination flags for failure probability p: max(24, ceil(6 log2(1/p))).
std::size_t termination_flag_count(double p);

/// With probability 1 - 1/round_length an RLS step on targets; otherwise flips the first
/// zero flag together with a payoff bit. The caller must not invoke it once all flags are
/// set (std::invalid_argument). round_length = 0 selects default_round_length(|targets|).
BitString reliable_optimize_step(const BitString& x, Range targets, Range flags, Range payoff, Rng& rng,
                                 std::size_t round_length = 0);

/// Coin bias for the trading walk given the non-optimal fraction alpha of the main block.
double trading_coin_bias(double alpha);
/// Expected change of used pool bits per main bit; negative means the pool is safe.
double trading_drift(double p, double alpha);

enum class TradeMove { heads, tails, seed_pool };

struct TradeStep {
    BitString offspring;
    TradeMove move = TradeMove::heads;
    std::optional<FailureCause> fault;
};

/// One step of the trading-bits optimizer. ctr_main counts processed main bits (value
/// i + 1 means bits 0..i-1 of main are done); ctr_pool counts pool bits turned optimal.
/// Pool bits at index >= i' are the unspent (non-optimal) trading bits.
/// Heads: flip main[i], advance ctr_main, un-spend pool[i'-1], retreat ctr_pool.
/// Tails: flip main[i], spend pool[i'], advance ctr_pool. With i' = 0 only pool[0] is spent.
TradeStep trading_step(const BitString& x, Range main, Range pool, const CounterLayout& ctr_main,
                       const CounterLayout& ctr_pool, Rng& rng, double p);

}  // namespace bbox

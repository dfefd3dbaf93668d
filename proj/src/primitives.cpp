#include "bbox/primitives.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bbox {

BitString rls_step(const BitString& x, Range region, Rng& rng)
{
    if (region.empty())
        throw std::invalid_argument("rls_step: empty region");
    BitString y = x;
    y.flip(region[uniform_index(rng, region.length)]);
    return y;
}

BitString flip_with_payoff(const BitString& x, std::size_t pos, Range payoff, Rng& rng)
{
    BitString y = x;
    y.flip(pos);
    y.flip(payoff[uniform_index(rng, payoff.length)]);
    return y;
}

Step copy_step(const BitString& x, Range src, Range dst, Range payoff, Rng& rng)
{
    if (src.length != dst.length)
        throw std::invalid_argument("copy_step: src and dst differ in length");
    for (std::size_t i = 0; i < dst.length; ++i)
        if (x.get(src[i]) != x.get(dst[i]))
            return flip_with_payoff(x, dst[i], payoff, rng);
    return std::nullopt;
}

Step overwrite_step(const BitString& x, Range dst, const BitString& pattern, Range payoff, Rng& rng)
{
    if (pattern.size() != dst.length)
        throw std::invalid_argument("overwrite_step: pattern length differs from dst");
    for (std::size_t i = 0; i < dst.length; ++i)
        if (x.get(dst[i]) != pattern.get(i))
            return flip_with_payoff(x, dst[i], payoff, rng);
    return std::nullopt;
}

std::size_t default_round_length(std::size_t k)
{
    const double r = 3.0 * static_cast<double>(k) * std::log2(static_cast<double>(std::max<std::size_t>(k, 1)));
    return std::max<std::size_t>(2, static_cast<std::size_t>(std::ceil(r)));
}

std::size_t termination_flag_count(double p)
{
    if (!(p > 0.0 && p < 1.0))
        throw std::invalid_argument("failure probability must lie in (0, 1)");
    return std::max<std::size_t>(24, static_cast<std::size_t>(std::ceil(6.0 * std::log2(1.0 / p))));
}

BitString reliable_optimize_step(const BitString& x, Range targets, Range flags, Range payoff, Rng& rng,
                                 std::size_t round_length)
{
    const std::size_t f = first_zero(x, flags);
    if (f == flags.length)
        throw std::invalid_argument("reliable_optimize_step: all termination flags already set");
    if (round_length == 0)
        round_length = default_round_length(targets.length);
    if (bernoulli(rng, 1.0 / static_cast<double>(round_length)))
        return flip_with_payoff(x, flags[f], payoff, rng);
    return rls_step(x, targets, rng);
}

double trading_coin_bias(double alpha)
{
    return alpha / (2.0 * (2.0 + alpha));
}

double trading_drift(double p, double alpha)
{
    return 2.0 * p / (1.0 - p) - alpha;
}

TradeStep trading_step(const BitString& x, Range main, Range pool, const CounterLayout& ctr_main,
                       const CounterLayout& ctr_pool, Rng& rng, double p)
{
    const std::uint64_t vm = counter_read(x, ctr_main);
    const std::uint64_t vp = counter_read(x, ctr_pool);
    const std::size_t i = static_cast<std::size_t>(vm - 1);
    const std::size_t used = static_cast<std::size_t>(vp - 1);
    if (i >= main.length)
        throw std::invalid_argument("trading_step: main block already processed");

    TradeStep step{x, TradeMove::heads, std::nullopt};
    if (used == 0) {
        step.move = TradeMove::seed_pool;
        step.offspring.flip(pool[0]);
        apply_code_mask(step.offspring, ctr_pool, counter_increment_mask(ctr_pool, vp));
        return step;
    }
    if (bernoulli(rng, p)) {
        step.move = TradeMove::tails;
        if (used >= pool.length) {
            step.fault = FailureCause::trading_pool_empty;
            return step;
        }
        step.offspring.flip(main[i]);
        step.offspring.flip(pool[used]);
        apply_code_mask(step.offspring, ctr_pool, counter_increment_mask(ctr_pool, vp));
        return step;
    }
    step.offspring.flip(main[i]);
    apply_code_mask(step.offspring, ctr_main, counter_increment_mask(ctr_main, vm));
    step.offspring.flip(pool[used - 1]);
    apply_code_mask(step.offspring, ctr_pool, counter_transition_mask(ctr_pool, vp, vp - 1));
    return step;
}

}  // namespace bbox

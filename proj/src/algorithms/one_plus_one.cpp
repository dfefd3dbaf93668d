#include <algorithm>
#include <cmath>

#include "bbox/algorithms.hpp"
#include "bbox/primitives.hpp"

namespace bbox {

std::string_view to_string(Phase phase)
{
    switch (phase) {
    case Phase::counter_setup: return "counter_setup";
    case Phase::pool_prepare: return "pool_prepare";
    case Phase::main_trading: return "main_trading";
    case Phase::tail_rls: return "tail_rls";
    case Phase::done_candidate: return "done_candidate";
    }
    return "counter_setup";
}

OnePlusOneMC::OnePlusOneMC(std::size_t n, OnePlusOneParams params)
    : layout_(layout_for(n, params.layout)), params_(params), coin_(trading_coin_bias(params.alpha))
{
    if (!(params.alpha > 0.0 && params.alpha < 1.0))
        throw ConfigError("alpha must lie in (0, 1)");
    if (trading_drift(coin_, params.alpha) >= 0.0)
        throw ConfigError("coin bias gives non-negative pool drift");
}

std::size_t OnePlusOneMC::round_length(std::size_t k) const
{
    const double r = params_.round_factor * static_cast<double>(k) * std::log2(static_cast<double>(k));
    return std::max<std::size_t>(2, static_cast<std::size_t>(std::ceil(r)));
}

BitString OnePlusOneMC::initial(const RankedPopulation&, Rng& rng) const
{
    BitString x = random_bits(layout_.n, rng);
    for (std::size_t i = 0; i < layout_.timer_pool.end(); ++i)
        x.set(i, false);
    return x;
}

Phase OnePlusOneMC::phase_of(const BitString& x) const
{
    const StringLayout& l = layout_;
    std::size_t set = 0;
    for (std::size_t i = 0; i < l.markers.length; ++i)
        set += x.get(l.markers[i]);
    if (set == l.markers.length)
        return Phase::tail_rls;
    if (set > 0)
        return Phase::done_candidate;
    if (!x.get(l.a_ready) || !x.get(l.b_ready))
        return Phase::counter_setup;
    if (!all_ones(x, l.timer_pool) || !x.get(l.pool_ready))
        return Phase::pool_prepare;
    return Phase::main_trading;
}

BitString OnePlusOneMC::counter_setup_step(const BitString& x, const CounterLayout& ctr, std::size_t copied,
                                           std::size_t ready, Range timer, Rng& rng) const
{
    const Range payoff = layout_.payoff;
    if (!all_ones(x, timer))
        return reliable_optimize_step(x, ctr.code, timer, payoff, rng, round_length(ctr.k()));
    if (!x.get(copied)) {
        if (auto s = copy_step(x, ctr.code, ctr.reference, payoff, rng))
            return *s;
        return flip_with_payoff(x, copied, payoff, rng);
    }
    BitString pattern(ctr.k());
    for (std::size_t i = 0; i < ctr.k(); ++i)
        pattern.set(i, i < ctr.k() / 2 ? x.get(ctr.reference[i]) : !x.get(ctr.reference[i]));
    if (auto s = overwrite_step(x, ctr.code, pattern, payoff, rng))
        return *s;
    return flip_with_payoff(x, ready, payoff, rng);
}

BitString OnePlusOneMC::step(const BitString& x, Rng& rng, std::optional<FailureCause>& fault) const
{
    const StringLayout& l = layout_;
    switch (phase_of(x)) {
    case Phase::counter_setup:
        if (!x.get(l.a_ready))
            return counter_setup_step(x, l.counter_a, l.a_copied, l.a_ready, l.timer_a, rng);
        return counter_setup_step(x, l.counter_b, l.b_copied, l.b_ready, l.timer_b, rng);

    case Phase::pool_prepare: {
        if (!all_ones(x, l.timer_pool))
            return reliable_optimize_step(x, l.pool1, l.timer_pool, l.payoff, rng, round_length(l.pool1.length));
        if (!x.get(l.pool_copied)) {
            if (auto s = copy_step(x, l.pool1, l.pool2, l.payoff, rng))
                return *s;
            return flip_with_payoff(x, l.pool_copied, l.payoff, rng);
        }
        BitString pattern(l.pool1.length);
        for (std::size_t i = 0; i < l.pool1.length; ++i)
            pattern.set(i, !x.get(l.pool2[i]));
        if (auto s = overwrite_step(x, l.pool1, pattern, l.payoff, rng))
            return *s;
        return flip_with_payoff(x, l.pool_ready, l.payoff, rng);
    }

    case Phase::main_trading: {
        const auto va = try_counter_read(x, l.counter_a);
        const auto vb = try_counter_read(x, l.counter_b);
        if (!va || !vb) {
            fault = FailureCause::phase_misread;
            return x;
        }
        if (*va - 1 >= l.payoff.length) {
            // Flush: restore pool1 and both counters from their reference copies, which
            // makes them optimal, and enter the tail by setting every marker.
            BitString y = x;
            copy_range(y, l.pool2, l.pool1);
            copy_range(y, l.counter_a.reference, l.counter_a.code);
            copy_range(y, l.counter_b.reference, l.counter_b.code);
            for (std::size_t i = 0; i < l.markers.length; ++i)
                y.set(l.markers[i], true);
            return y;
        }
        TradeStep t = trading_step(x, l.payoff, l.pool1, l.counter_a, l.counter_b, rng, coin_);
        if (t.fault)
            fault = t.fault;
        return std::move(t.offspring);
    }

    case Phase::tail_rls:
    case Phase::done_candidate:
        return rls_step(x, l.tail_region(), rng);
    }
    return x;
}

GenerationProposal OnePlusOneMC::decide(const RankedPopulation& view, Rng& rng) const
{
    GenerationProposal prop;
    prop.offspring = {step(view.members[0], rng, prop.fault)};
    prop.tie_break = prefer_offspring(1, 1, SelectionMode::plus);
    return prop;
}

}  // namespace bbox

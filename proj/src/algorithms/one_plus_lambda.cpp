#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "bbox/algorithms.hpp"
#include "bbox/primitives.hpp"

namespace bbox {

namespace {

/// count positions of r, distinct while count <= |r|, then repeated at random.
std::vector<std::size_t> spread_positions(Range r, std::size_t count, Rng& rng)
{
    std::vector<std::size_t> idx(r.length);
    std::iota(idx.begin(), idx.end(), r.start);
    std::vector<std::size_t> out;
    out.reserve(count);
    const std::size_t distinct = std::min(count, r.length);
    for (std::size_t i = 0; i < distinct; ++i) {
        std::swap(idx[i], idx[i + uniform_index(rng, r.length - i)]);
        out.push_back(idx[i]);
    }
    while (out.size() < count)
        out.push_back(r[uniform_index(rng, r.length)]);
    return out;
}

}  // namespace

Range BlockLayout::block(std::size_t index) const
{
    const std::size_t start = blocks.start + index * block_size;
    return Range{start, std::min(block_size, blocks.end() - start)};
}

std::vector<Region> BlockLayout::regions() const
{
    return {
        {"markers", markers},
        {"phase_flags", Range{copied, 2}},
        {"timer", timer},
        {"counter.code", counter.code},
        {"counter.reference", counter.reference},
        {"blocks", blocks},
    };
}

OnePlusLambda::OnePlusLambda(std::size_t n, std::size_t lambda, OnePlusLambdaParams params)
    : lambda_(lambda), params_(params)
{
    if (lambda < 2)
        throw ConfigError("(1+lambda) needs lambda >= 2");
    if (params.timer_flags == 0)
        throw ConfigError("timer flag count must be positive");
    BlockLayout& l = layout_;
    l.n = n;
    l.block_size = static_cast<std::size_t>(std::bit_width(lambda) - 1);
    if (l.block_size > 30)
        throw ConfigError("lambda too large");

    // The counter needs one value per block plus one for "all blocks done". Fewer markers
    // leave more room for blocks, so the marker count is settled together with k.
    std::size_t markers = std::max<std::size_t>(params.tail_markers, 1);
    std::size_t k = 2;
    std::uint64_t capacity = 0;
    while (true) {
        const std::size_t header = markers + 2 + params.timer_flags;
        k = 2;
        while (true) {
            if (header + 2 * k + l.block_size > n)
                throw ConfigError("n too small for the (1+lambda) layout");
            const std::size_t rest = n - header - 2 * k;
            capacity = (rest + l.block_size - 1) / l.block_size + 1;
            if (counter_width(capacity) <= k)
                break;
            k += 2;
        }
        if (markers <= k / 2)
            break;
        markers = k / 2;
    }
    if (k > 2)
        capacity = std::max<std::uint64_t>(capacity, binomial(k - 2, (k - 2) / 2) + 1);
    l.markers = Range{0, markers};
    l.copied = markers;
    l.ready = markers + 1;
    l.timer = Range{markers + 2, params.timer_flags};
    const std::size_t header = l.timer.end();
    l.counter = CounterLayout{Range{header, k}, Range{header + k, k}, capacity};
    l.blocks = Range{header + 2 * k, n - header - 2 * k};
    l.block_count = (l.blocks.length + l.block_size - 1) / l.block_size;
    check_partition(l.regions(), n);
}

BitString OnePlusLambda::initial(const RankedPopulation&, Rng& rng) const
{
    BitString x = random_bits(layout_.n, rng);
    for (std::size_t i = 0; i < layout_.counter.code.start; ++i)
        x.set(i, false);
    return x;
}

std::optional<std::uint64_t> OnePlusLambda::block_counter(const BitString& x) const
{
    return try_counter_read(x, layout_.counter);
}

Phase OnePlusLambda::phase_of(const BitString& x) const
{
    const BlockLayout& l = layout_;
    std::size_t set = 0;
    for (std::size_t i = 0; i < l.markers.length; ++i)
        set += x.get(l.markers[i]);
    if (set == l.markers.length)
        return Phase::tail_rls;
    if (set > 0)
        return Phase::done_candidate;
    if (!x.get(l.ready))
        return Phase::counter_setup;
    return Phase::main_trading;
}

std::vector<BitString> OnePlusLambda::setup_offspring(const BitString& x, Rng& rng) const
{
    const BlockLayout& l = layout_;
    const CounterLayout& c = l.counter;
    std::vector<BitString> out;
    out.reserve(lambda_);

    if (!all_ones(x, l.timer)) {
        const double k = static_cast<double>(c.k());
        const double round = std::max(2.0, std::ceil(params_.round_factor * k * std::log2(k)));
        const double q = std::min(params_.timer_generation_cap, static_cast<double>(lambda_) / round);
        if (bernoulli(rng, q)) {
            const std::size_t flag = l.timer[first_zero(x, l.timer)];
            for (std::size_t j = 0; j < lambda_; ++j)
                out.push_back(flip_with_payoff(x, flag, l.blocks, rng));
        } else {
            for (auto pos : spread_positions(c.code, lambda_, rng)) {
                out.push_back(x);
                out.back().flip(pos);
            }
        }
        return out;
    }

    BitString pattern(c.k());
    for (std::size_t i = 0; i < c.k(); ++i)
        pattern.set(i, i < c.k() / 2 ? x.get(c.reference[i]) : !x.get(c.reference[i]));
    for (std::size_t j = 0; j < lambda_; ++j) {
        Step s = !x.get(l.copied) ? copy_step(x, c.code, c.reference, l.blocks, rng)
                                  : overwrite_step(x, c.code, pattern, l.blocks, rng);
        if (s)
            out.push_back(std::move(*s));
        else
            out.push_back(flip_with_payoff(x, !x.get(l.copied) ? l.copied : l.ready, l.blocks, rng));
    }
    return out;
}

std::vector<BitString> OnePlusLambda::tail_offspring(const BitString& x, Rng& rng) const
{
    const Range r = layout_.tail_region();
    std::vector<BitString> out;
    out.reserve(lambda_);
    for (auto pos : spread_positions(r, std::min(lambda_, r.length), rng)) {
        out.push_back(x);
        out.back().flip(pos);
    }
    while (out.size() < lambda_)
        out.push_back(x);
    return out;
}

GenerationProposal OnePlusLambda::decide(const RankedPopulation& view, Rng& rng) const
{
    const BlockLayout& l = layout_;
    const BitString& x = view.members[0];
    GenerationProposal prop;
    prop.tie_break = prefer_offspring(1, lambda_, SelectionMode::plus);

    switch (phase_of(x)) {
    case Phase::counter_setup:
    case Phase::pool_prepare:
        prop.offspring = setup_offspring(x, rng);
        return prop;
    case Phase::tail_rls:
    case Phase::done_candidate:
        prop.offspring = tail_offspring(x, rng);
        return prop;
    case Phase::main_trading:
        break;
    }

    const auto v = block_counter(x);
    if (!v || *v > l.block_count + 1) {
        prop.fault = FailureCause::phase_misread;
        prop.offspring.assign(lambda_, x);
        return prop;
    }
    if (*v == l.block_count + 1) {
        // All blocks done: restore C from C', which gains k/2, and set every marker.
        BitString y = x;
        copy_range(y, l.counter.reference, l.counter.code);
        for (std::size_t i = 0; i < l.markers.length; ++i)
            y.set(l.markers[i], true);
        prop.offspring = tail_offspring(y, rng);
        prop.offspring.front() = std::move(y);
        return prop;
    }

    const Range block = l.block(static_cast<std::size_t>(*v - 1));
    const std::uint64_t patterns = std::uint64_t{1} << block.length;
    const auto inc = counter_increment_mask(l.counter, *v);
    prop.offspring.reserve(lambda_);
    for (std::uint64_t p = 0; p < patterns; ++p) {
        BitString y = x;
        deposit_bits(y, block, p);
        apply_code_mask(y, l.counter, inc);
        prop.offspring.push_back(std::move(y));
    }
    while (prop.offspring.size() < lambda_)
        prop.offspring.push_back(x);
    return prop;
}

}  // namespace bbox

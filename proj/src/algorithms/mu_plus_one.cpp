#include <algorithm>
#include <cmath>
#include <numeric>

#include "bbox/algorithms.hpp"
#include "bbox/primitives.hpp"
#include "bbox/reconstruction.hpp"

namespace bbox {

namespace {

/// Index of the last 1 inside r, plus one; 0 when r holds no 1.
std::uint64_t last_one_end(const BitString& x, Range r)
{
    for (std::size_t i = r.length; i-- > 0;)
        if (x.get(r[i]))
            return i + 1;
    return 0;
}

std::uint64_t first_difference(const BitString& x, Range a, Range b)
{
    for (std::size_t i = 0; i < a.length; ++i)
        if (x.get(a[i]) != x.get(b[i]))
            return i;
    return a.length;
}

/// The codeword of counter value 1: the first k/2 positions of C agree with C', the rest do not.
BitString first_codeword(const BitString& x, const CounterLayout& c)
{
    BitString pattern(c.k());
    for (std::size_t i = 0; i < c.k(); ++i)
        pattern.set(i, i < c.k() / 2 ? x.get(c.reference[i]) : !x.get(c.reference[i]));
    return pattern;
}

void randomize(BitString& x, Range r, Rng& rng)
{
    const std::uint64_t mask = r.length >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << r.length) - 1;
    deposit_bits(x, r, rng() & mask);
}

bool equal_outside(const BitString& a, const BitString& b, Range r)
{
    BitString c = a;
    for (std::size_t i = 0; i < r.length; ++i)
        c.set(r[i], b.get(r[i]));
    return c == b;
}

std::size_t best_index(const RankedPopulation& view)
{
    return static_cast<std::size_t>(std::min_element(view.ranks.begin(), view.ranks.end()) - view.ranks.begin());
}

}  // namespace

Range MuLayout::block(std::size_t index) const
{
    const std::size_t start = payoff.start + index * k;
    return Range{start, std::min(k, payoff.end() - start)};
}

std::vector<Region> MuLayout::regions() const
{
    return {
        {"f3", Range{f3, 1}},
        {"counter.code", counter.code},
        {"f1f2", Range{f1, 2}},
        {"counter.reference", counter.reference},
        {"payoff", payoff},
    };
}

std::size_t default_block_length(std::size_t mu)
{
    if (mu < 2)
        return 0;
    const double m = static_cast<double>(mu);
    const auto cap = std::min<std::size_t>(
        max_reconstruction_bits, 2 * static_cast<std::size_t>(std::ceil(m * std::log2(m) / 2.0)));
    for (std::size_t k = cap - cap % 2; k >= 2; k -= 2) {
        const double need = std::ceil(4.0 * static_cast<double>(k) / std::log2(static_cast<double>(k)));
        if (need <= m)
            return k;
    }
    return 0;
}

MuPlusOne::MuPlusOne(std::size_t n, std::size_t mu, MuPlusOneParams params) : n_(n), mu_(mu)
{
    if (n == 0)
        throw ConfigError("n must be positive");
    if (mu < 2)
        throw ConfigError("(mu+1) needs mu >= 2");
    const std::size_t k = params.block_k ? params.block_k : default_block_length(mu);
    if (k > max_reconstruction_bits)
        throw UnsupportedParameter("block length above 20 is not reconstructible");
    if (k == 0)
        return;

    MuLayout l;
    l.n = n;
    l.k = k;
    std::size_t kc = 2;
    std::uint64_t blocks = 0;
    while (true) {
        if (3 + 2 * kc + 2 * k > n)
            return;  // too short for two blocks; fall back to the pairwise strategy
        blocks = (n - 3 - 2 * kc + k - 1) / k;
        if (counter_width(blocks) <= kc)
            break;
        kc += 2;
    }
    if (kc + 2 > max_reconstruction_bits)
        throw UnsupportedParameter("counter too wide for the final reconstruction window");
    std::uint64_t capacity = blocks;
    if (kc > 2)
        capacity = std::max<std::uint64_t>(capacity, binomial(kc - 2, (kc - 2) / 2) + 1);
    l.f3 = 0;
    l.f1 = 1 + kc;
    l.f2 = 2 + kc;
    l.counter = CounterLayout{Range{1, kc}, Range{3 + kc, kc}, capacity};
    l.payoff = Range{3 + 2 * kc, n - 3 - 2 * kc};
    l.block_count = static_cast<std::size_t>(blocks);
    check_partition(l.regions(), n);
    layout_ = l;
}

BitString MuPlusOne::initial(const RankedPopulation& so_far, Rng& rng) const
{
    const std::size_t i = so_far.size();
    if (!layout_) {
        BitString x(n_);
        if (i == 1)
            x.set(0, true);
        return x;
    }
    if (i == 0) {
        BitString x = random_bits(n_, rng);
        for (std::size_t p = 0; p < layout_->counter.reference.start; ++p)
            x.set(p, false);
        return x;
    }
    BitString x = so_far.members[0];
    if (i == 1)
        x.set(layout_->counter.code.start, true);
    return x;
}

MuPlusOne::Key MuPlusOne::progress(const BitString& x) const
{
    if (!layout_)
        return {0, last_one_end(x, Range{0, n_})};
    const MuLayout& l = *layout_;
    const CounterLayout& c = l.counter;
    if (x.get(l.f3))
        return {4, 0};
    if (!x.get(l.f1))
        return {0, last_one_end(x, c.code)};
    if (!x.get(l.f2))
        return {1, first_difference(x, c.code, c.reference)};
    if (auto v = try_counter_read(x, c))
        return {3, *v};
    const BitString pattern = first_codeword(x, c);
    std::uint64_t loaded = 0;
    while (loaded < c.k() && x.get(c.code[loaded]) == pattern.get(loaded))
        ++loaded;
    return {2, loaded};
}

std::vector<std::size_t> MuPlusOne::keep_order(const RankedPopulation& view) const
{
    std::vector<Key> keys;
    keys.reserve(view.size());
    for (const auto& m : view.members)
        keys.push_back(progress(m));
    std::vector<std::size_t> members(view.size());
    std::iota(members.begin(), members.end(), 0);
    std::stable_sort(members.begin(), members.end(), [&](auto a, auto b) { return keys[a] > keys[b]; });

    std::vector<std::size_t> order{view.size()};
    order.insert(order.end(), members.begin(), members.end());
    return order;
}

GenerationProposal MuPlusOne::single(BitString offspring, const RankedPopulation& view) const
{
    GenerationProposal prop;
    prop.offspring.push_back(std::move(offspring));
    prop.tie_break = keep_order(view);
    return prop;
}

GenerationProposal MuPlusOne::decide(const RankedPopulation& view, Rng& rng) const
{
    if (!layout_)
        return decide_pairwise(view);
    return decide_blocks(view, rng);
}

GenerationProposal MuPlusOne::decide_pairwise(const RankedPopulation& view) const
{
    std::uint64_t reach = 0;
    for (const auto& m : view.members)
        reach = std::max(reach, last_one_end(m, Range{0, n_}));
    BitString y = view.members[best_index(view)];
    if (reach < n_)
        y.flip(reach);
    return single(std::move(y), view);
}

GenerationProposal MuPlusOne::decide_blocks(const RankedPopulation& view, Rng& rng) const
{
    const MuLayout& l = *layout_;
    const CounterLayout& c = l.counter;

    std::vector<Key> keys;
    for (const auto& m : view.members)
        keys.push_back(progress(m));
    if (std::max_element(keys.begin(), keys.end())->stage == 4)
        return decide_finale(view, rng);
    // Sampling starts only once a member with a readable counter is among the best;
    // otherwise the best members are stale copies that samples cannot displace.
    for (std::size_t i = 0; i < view.size(); ++i)
        if (view.ranks[i] == 0 && keys[i].stage == 3)
            return decide_window(view, rng);

    std::size_t t = best_index(view);
    for (std::size_t i = 0; i < view.size(); ++i)
        if (view.ranks[i] == 0 && keys[i] > keys[t])
            t = i;
    const BitString& x = view.members[t];
    // Setup steps pay with payoff bits past block 0 so that block 0 stays uniformly random
    // and its first samples can displace the setup copies.
    const Range pay{l.block(1).start, l.payoff.end() - l.block(1).start};

    switch (keys[t].stage) {
    case 0: {
        std::uint64_t reach = 0;
        for (std::size_t i = 0; i < view.size(); ++i)
            if (keys[i].stage == 0)
                reach = std::max(reach, keys[i].value);
        if (reach < c.k()) {
            BitString y = x;
            y.flip(c.code[reach]);
            return single(std::move(y), view);
        }
        return single(flip_with_payoff(x, l.f1, pay, rng), view);
    }
    case 1:
        if (auto s = copy_step(x, c.code, c.reference, pay, rng))
            return single(std::move(*s), view);
        return single(flip_with_payoff(x, l.f2, pay, rng), view);
    default:
        break;
    }
    if (auto s = overwrite_step(x, c.code, first_codeword(x, c), pay, rng))
        return single(std::move(*s), view);
    GenerationProposal prop = single(x, view);
    prop.fault = FailureCause::phase_misread;
    return prop;
}

std::optional<Range> MuPlusOne::sample_window(const RankedPopulation& view) const
{
    if (!layout_)
        return std::nullopt;
    const MuLayout& l = *layout_;
    const Key first = progress(view.members[0]);
    Range window;
    if (first.stage == 4) {
        window = l.finale_window();
    } else if (first.stage == 3 && first.value <= l.block_count) {
        window = l.block(static_cast<std::size_t>(first.value - 1));
    } else {
        return std::nullopt;
    }
    for (const auto& m : view.members)
        if (!equal_outside(m, view.members[0], window))
            return std::nullopt;
    return window;
}

std::variant<MuPlusOne::Resolved, GenerationProposal> MuPlusOne::reconstruct(const RankedPopulation& view,
                                                                            Range window, const BitString& base,
                                                                            Rng& rng) const
{
    RankingObservation obs;
    obs.k = window.length;
    obs.ranks = view.ranks;
    for (const auto& m : view.members) {
        BitString s(window.length);
        deposit_bits(s, Range{0, window.length}, extract_bits(m, window));
        obs.samples.push_back(std::move(s));
    }
    auto candidates = consistent_targets(obs);

    if (candidates.empty()) {
        BitString y = base;
        randomize(y, window, rng);
        GenerationProposal prop = single(std::move(y), view);
        prop.fault = FailureCause::phase_misread;
        return prop;
    }
    if (candidates.size() == 1)
        return Resolved{std::move(candidates.front()), std::nullopt};

    // Ambiguous: probe a position that is either undecided among the candidates or decided
    // against the base. The target is a candidate, so while the base block differs from it
    // at least one such flip improves. A probe that does not improve still ties or beats
    // the worst member unless all members are tied, so it enters the population with new
    // ranking information. When the base block is itself a candidate every probe may be
    // rejected, so the base block is accepted now and then.
    const BitString base_bits = [&] {
        BitString b(window.length);
        deposit_bits(b, Range{0, window.length}, extract_bits(base, window));
        return b;
    }();
    std::vector<std::size_t> probes;
    for (std::size_t p = 0; p < window.length; ++p) {
        const bool bit = candidates.front().get(p);
        const bool decided = std::all_of(candidates.begin(), candidates.end(), [&](const BitString& c) {
            return c.get(p) == bit;
        });
        if (!decided || bit != base_bits.get(p))
            probes.push_back(p);
    }
    const bool base_is_candidate = std::find(candidates.begin(), candidates.end(), base_bits) != candidates.end();
    if (base_is_candidate && bernoulli(rng, 1.0 / (64.0 * static_cast<double>(probes.size()))))
        return Resolved{base_bits, FailureCause::reconstruction_ambiguous};
    BitString y = base;
    y.flip(window[probes[uniform_index(rng, probes.size())]]);
    return single(std::move(y), view);
}

GenerationProposal MuPlusOne::decide_window(const RankedPopulation& view, Rng& rng) const
{
    const MuLayout& l = *layout_;
    const CounterLayout& c = l.counter;

    std::uint64_t v_top = 0;
    std::optional<std::size_t> r;
    for (std::size_t i = 0; i < view.size(); ++i) {
        const Key key = progress(view.members[i]);
        if (key.stage != 3)
            continue;
        if (key.value > v_top || (key.value == v_top && view.ranks[i] < view.ranks[*r])) {
            v_top = key.value;
            r = i;
        }
    }
    const BitString& base = view.members[*r];
    if (v_top > l.block_count) {
        GenerationProposal prop = single(base, view);
        prop.fault = FailureCause::phase_misread;
        return prop;
    }
    const std::size_t i = static_cast<std::size_t>(v_top - 1);
    const Range block = l.block(i);

    const auto window = sample_window(view);
    if (!window || window->start != block.start) {
        BitString y = base;
        randomize(y, block, rng);
        return single(std::move(y), view);
    }
    auto outcome = reconstruct(view, block, base, rng);
    if (auto* prop = std::get_if<GenerationProposal>(&outcome))
        return std::move(*prop);
    const Resolved& found = std::get<Resolved>(outcome);

    BitString y = base;
    deposit_bits(y, block, extract_bits(found.bits, Range{0, block.length}));
    if (i + 1 < l.block_count) {
        apply_code_mask(y, c, counter_increment_mask(c, v_top));
        randomize(y, l.block(i + 1), rng);
    } else {
        copy_range(y, c.reference, c.code);
        y.set(l.f3, true);
        randomize(y, l.finale_window(), rng);
    }
    GenerationProposal prop = single(std::move(y), view);
    prop.fault = found.fault;
    return prop;
}

GenerationProposal MuPlusOne::decide_finale(const RankedPopulation& view, Rng& rng) const
{
    const MuLayout& l = *layout_;
    const Range w = l.finale_window();
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < view.size(); ++i)
        if (view.members[i].get(l.f3) && (!best || view.ranks[i] < view.ranks[*best]))
            best = i;
    const BitString& base = view.members[*best];

    const auto window = sample_window(view);
    if (!window) {
        BitString y = base;
        randomize(y, w, rng);
        return single(std::move(y), view);
    }
    auto outcome = reconstruct(view, w, base, rng);
    if (auto* prop = std::get_if<GenerationProposal>(&outcome))
        return std::move(*prop);
    const Resolved& found = std::get<Resolved>(outcome);

    BitString y = base;
    deposit_bits(y, w, extract_bits(found.bits, Range{0, w.length}));
    if (std::find(view.members.begin(), view.members.end(), y) == view.members.end()) {
        GenerationProposal prop = single(std::move(y), view);
        prop.fault = found.fault;
        return prop;
    }
    // Everything but f3 is known; the last query settles it.
    y.set(l.f3, false);
    GenerationProposal prop = single(std::move(y), view);
    prop.fault = found.fault;
    prop.terminal = true;
    return prop;
}

}  // namespace bbox

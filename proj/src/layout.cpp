#include "bbox/layout.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bbox/model.hpp"

namespace bbox {

std::string serialize_layout(const std::vector<Region>& regions)
{
    std::ostringstream out;
    for (const auto& r : regions) {
        if (r.range.empty())
            continue;
        out << r.name << ' ' << r.range.start + 1 << ' ' << r.range.end() << '\n';
    }
    return out.str();
}

std::vector<Region> parse_layout(const std::string& text)
{
    std::vector<Region> regions;
    std::istringstream in(text);
    std::string name;
    std::size_t first = 0, last = 0;
    while (in >> name >> first >> last) {
        if (first == 0 || last < first)
            throw ConfigError("malformed layout line for region " + name);
        regions.push_back(Region{name, Range{first - 1, last - first + 1}});
    }
    return regions;
}

void check_partition(const std::vector<Region>& regions, std::size_t n)
{
    std::vector<bool> seen(n, false);
    for (const auto& r : regions) {
        if (r.range.end() > n)
            throw ConfigError("region " + r.name + " extends past the string");
        for (std::size_t i = r.range.start; i < r.range.end(); ++i) {
            if (seen[i])
                throw ConfigError("region " + r.name + " overlaps another region");
            seen[i] = true;
        }
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end())
        throw ConfigError("regions do not cover the whole string");
}

std::vector<Region> StringLayout::regions() const
{
    return {
        {"markers", markers},
        {"phase_flags", Range{a_copied, 6}},
        {"timer_a", timer_a},
        {"timer_b", timer_b},
        {"timer_pool", timer_pool},
        {"counter_a.reference", counter_a.reference},
        {"counter_b.reference", counter_b.reference},
        {"pool2", pool2},
        {"counter_a.code", counter_a.code},
        {"counter_b.code", counter_b.code},
        {"pool1", pool1},
        {"payoff", payoff},
    };
}

StringLayout layout_for(std::size_t n, const LayoutParams& params)
{
    StringLayout l;
    l.n = n;
    const std::size_t flags = params.timer_flags;
    const std::size_t head = params.tail_markers + 6;
    if (flags == 0 || params.tail_markers == 0)
        throw ConfigError("timer and marker counts must be positive");
    const double lg = std::log2(static_cast<double>(std::max<std::size_t>(n, 2)));
    const std::size_t pool = params.pool_size ? params.pool_size : static_cast<std::size_t>(std::ceil(4.0 * lg));
    const std::size_t kb = counter_width(pool + 1);
    const std::size_t fixed = head + 3 * flags + 2 * kb + 2 * pool;
    if (n <= fixed + 4)
        throw ConfigError("n too small for the (1+1) layout");

    // Counter A must count every payoff bit, and the payoff block is whatever the counter
    // leaves over. When no width fits exactly, the capacity is raised so that the chosen
    // width is still the minimal one for it.
    std::size_t ka = 2;
    while (true) {
        if (fixed + 2 * ka >= n)
            throw ConfigError("n too small for the (1+1) layout");
        if (counter_width(n - fixed - 2 * ka + 1) <= ka)
            break;
        ka += 2;
    }
    const std::size_t payoff = n - fixed - 2 * ka;
    std::uint64_t capacity_a = payoff + 1;
    if (ka > 2)
        capacity_a = std::max<std::uint64_t>(capacity_a, binomial(ka - 2, (ka - 2) / 2) + 1);

    l.markers = Range{0, params.tail_markers};
    std::size_t pos = params.tail_markers;
    for (std::size_t* flag : {&l.a_copied, &l.a_ready, &l.b_copied, &l.b_ready, &l.pool_copied, &l.pool_ready})
        *flag = pos++;
    l.timer_a = Range{pos, flags};
    pos += flags;
    l.timer_b = Range{pos, flags};
    pos += flags;
    l.timer_pool = Range{pos, flags};
    pos += flags;
    // Reference copies sit before the working copies so that everything the flush
    // restores is adjacent to the payoff block and outside the tail region.
    const std::size_t ref_a = pos;
    const std::size_t ref_b = ref_a + ka;
    l.pool2 = Range{ref_b + kb, pool};
    pos = l.pool2.end();
    l.counter_a = CounterLayout{Range{pos, ka}, Range{ref_a, ka}, capacity_a};
    pos += ka;
    l.counter_b = CounterLayout{Range{pos, kb}, Range{ref_b, kb}, pool + 1};
    pos += kb;
    l.pool1 = Range{pos, pool};
    pos += pool;
    l.payoff = Range{pos, n - pos};
    check_partition(l.regions(), n);
    return l;
}

}  // namespace bbox

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "bbox/bitstring.hpp"
#include "bbox/counter.hpp"

namespace bbox {

struct Region {
    std::string name;
    Range range;
};

/// One region per line, "name start end", positions 1-based and inclusive.
std::string serialize_layout(const std::vector<Region>& regions);
std::vector<Region> parse_layout(const std::string& text);

/// Throws ConfigError unless the regions are pairwise disjoint and cover 0..n-1.
void check_partition(const std::vector<Region>& regions, std::size_t n);

struct LayoutParams {
    std::size_t tail_markers = 8;  // marker bits that signal the final RLS phase
    std::size_t timer_flags = 24;  // termination flags per reliable-optimization phase
    std::size_t pool_size = 0;     // 0 selects ceil(4 log2 n)
};

/// Genome layout of the linear-time (1+1) construction.
///
/// markers | six phase flags | three timer blocks | C'_A C'_B pool2 | C_A C_B pool1 | payoff
///
/// Counter A counts processed payoff bits, counter B counts spent pool bits. pool1 is
/// reliably optimized, copied into pool2, then inverted in place and used as the trading
/// pool; pool2 keeps its optimal values for the final restore. The string is in its final
/// RLS phase while any marker bit is set.
struct StringLayout {
    std::size_t n = 0;
    Range markers;
    std::size_t a_copied = 0;
    std::size_t a_ready = 0;
    std::size_t b_copied = 0;
    std::size_t b_ready = 0;
    std::size_t pool_copied = 0;
    std::size_t pool_ready = 0;
    Range timer_a;
    Range timer_b;
    Range timer_pool;
    CounterLayout counter_a;
    CounterLayout counter_b;
    Range pool1;
    Range pool2;
    Range payoff;

    /// Everything the final flush does not restore: markers, flags, timers and reference copies.
    Range tail_region() const { return Range{0, counter_a.code.start}; }
    std::vector<Region> regions() const;
};

StringLayout layout_for(std::size_t n, const LayoutParams& params = {});

}  // namespace bbox

#include "bbox/counter.hpp"

#include <algorithm>
#include <iterator>
#include <string>

namespace bbox {

namespace {

struct PascalTable {
    std::uint64_t v[65][65] = {};
    PascalTable()
    {
        for (int n = 0; n <= 64; ++n) {
            v[n][0] = 1;
            for (int k = 1; k <= n; ++k)
                v[n][k] = v[n - 1][k - 1] + (k < n ? v[n - 1][k] : 0);
        }
    }
};

const PascalTable pascal;

}  // namespace

std::uint64_t binomial(std::uint64_t n, std::uint64_t k)
{
    if (k > n)
        return 0;
    if (n <= 64)
        return pascal.v[n][k];
    k = std::min(k, n - k);
    unsigned __int128 r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
        if (r > UINT64_MAX)
            throw CounterError("binomial coefficient overflows 64 bits");
    }
    return static_cast<std::uint64_t>(r);
}

std::size_t counter_width(std::uint64_t capacity)
{
    if (capacity == 0)
        throw CounterError("counter capacity must be positive");
    std::size_t k = 2;
    while (binomial(k, k / 2) < capacity)
        k += 2;
    return k;
}

CounterLayout make_counter(std::size_t start, std::uint64_t capacity)
{
    const std::size_t k = counter_width(capacity);
    return CounterLayout{Range{start, k}, Range{start + k, k}, capacity};
}

std::uint64_t colex_rank(const std::vector<std::size_t>& subset)
{
    std::uint64_t r = 0;
    for (std::size_t i = 0; i < subset.size(); ++i)
        r += binomial(subset[i], i + 1);
    return r;
}

std::vector<std::size_t> colex_unrank(std::size_t k, std::size_t m, std::uint64_t rank)
{
    if (rank >= binomial(k, m))
        throw CounterError("colex rank out of range");
    std::vector<std::size_t> subset(m);
    std::size_t top = k;
    for (std::size_t i = m; i-- > 0;) {
        std::size_t c = top - 1;
        while (binomial(c, i + 1) > rank)
            --c;
        subset[i] = c;
        rank -= binomial(c, i + 1);
        top = c;
    }
    return subset;
}

std::vector<std::size_t> counter_codeword(const CounterLayout& layout, std::uint64_t value)
{
    if (value < 1 || value > layout.capacity)
        throw CounterError("counter value " + std::to_string(value) + " outside 1.." + std::to_string(layout.capacity));
    return colex_unrank(layout.k(), layout.k() / 2, value - 1);
}

std::optional<std::uint64_t> try_counter_read(const BitString& x, const CounterLayout& layout)
{
    const std::size_t k = layout.k();
    std::vector<std::size_t> agree;
    agree.reserve(k);
    for (std::size_t i = 0; i < k; ++i)
        if (x.get(layout.code[i]) == x.get(layout.reference[i]))
            agree.push_back(i);
    if (agree.size() != k / 2)
        return std::nullopt;
    const std::uint64_t value = colex_rank(agree) + 1;
    if (value > layout.capacity)
        return std::nullopt;
    return value;
}

std::uint64_t counter_read(const BitString& x, const CounterLayout& layout)
{
    auto v = try_counter_read(x, layout);
    if (!v)
        throw CounterError("corrupted counter: agreement set is not a codeword");
    return *v;
}

std::vector<std::size_t> counter_transition_mask(const CounterLayout& layout, std::uint64_t from, std::uint64_t to)
{
    const auto a = counter_codeword(layout, from);
    const auto b = counter_codeword(layout, to);
    std::vector<std::size_t> diff;
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(diff));
    return diff;
}

std::vector<std::size_t> counter_increment_mask(const CounterLayout& layout, std::uint64_t value)
{
    if (value >= layout.capacity)
        throw CounterError("counter overflow");
    return counter_transition_mask(layout, value, value + 1);
}

void apply_code_mask(BitString& x, const CounterLayout& layout, const std::vector<std::size_t>& mask)
{
    for (auto i : mask)
        x.flip(layout.code[i]);
}

void counter_write(BitString& x, const CounterLayout& layout, std::uint64_t value)
{
    const auto word = counter_codeword(layout, value);
    std::size_t w = 0;
    for (std::size_t i = 0; i < layout.k(); ++i) {
        const bool agree = w < word.size() && word[w] == i;
        if (agree)
            ++w;
        const bool ref = x.get(layout.reference[i]);
        x.set(layout.code[i], agree ? ref : !ref);
    }
}

}  // namespace bbox

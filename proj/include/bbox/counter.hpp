#pragma once

/// Neutral counter: a value is encoded as the set of code positions that agree with a
/// reference copy. Every codeword has exactly k/2 agreements, so once the reference holds
/// the optimal bits, any counter update leaves the OneMax value unchanged.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "bbox/bitstring.hpp"

namespace bbox {

struct CounterError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CounterLayout {
    Range code;       // C
    Range reference;  // C'
    std::uint64_t capacity = 1;

    std::size_t k() const { return code.length; }
};

std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// Smallest even k >= 2 with binom(k, k/2) >= capacity.
std::size_t counter_width(std::uint64_t capacity);

/// Counter with C at [start, start + k) and C' right after it.
CounterLayout make_counter(std::size_t start, std::uint64_t capacity);

/// Colex rank of a sorted subset of {0, 1, ...}.
std::uint64_t colex_rank(const std::vector<std::size_t>& subset);
/// The size-m subset of {0..k-1} with the given colex rank, sorted ascending.
std::vector<std::size_t> colex_unrank(std::size_t k, std::size_t m, std::uint64_t rank);

/// Agreement codeword of a counter value: a sorted k/2-subset of code indices.
std::vector<std::size_t> counter_codeword(const CounterLayout& layout, std::uint64_t value);

std::optional<std::uint64_t> try_counter_read(const BitString& x, const CounterLayout& layout);
/// Throws CounterError when the agreement set is not a valid codeword.
std::uint64_t counter_read(const BitString& x, const CounterLayout& layout);

/// Code indices (0-based, within C) to flip to go from value to value + 1.
std::vector<std::size_t> counter_increment_mask(const CounterLayout& layout, std::uint64_t value);
/// Code indices to flip to go from one value to another.
std::vector<std::size_t> counter_transition_mask(const CounterLayout& layout, std::uint64_t from, std::uint64_t to);

void apply_code_mask(BitString& x, const CounterLayout& layout, const std::vector<std::size_t>& mask);
/// Rewrites C so that the counter reads value, relative to the current C'.
void counter_write(BitString& x, const CounterLayout& layout, std::uint64_t value);

}  // namespace bbox

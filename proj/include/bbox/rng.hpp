#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>

namespace bbox {

/// SplitMix64 generator. Satisfies UniformRandomBitGenerator.
class SplitMix64 {
public:
    using result_type = std::uint64_t;

    explicit SplitMix64(std::uint64_t seed = 0) : state_(seed) {}

    result_type operator()();

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

private:
    std::uint64_t state_;
};

using Rng = SplitMix64;

std::uint64_t mix64(std::uint64_t z);

/// Counter-based derivation: the i-th child seed of a root seed.
std::uint64_t split_seed(std::uint64_t root, std::uint64_t index);

/// Stream tags keep initialization, generation and target draws apart.
enum class StreamTag : std::uint64_t { target = 1, initial = 2, generation = 3 };

Rng make_stream(std::uint64_t seed, StreamTag tag, std::uint64_t counter);

std::size_t uniform_index(Rng& rng, std::size_t n);
bool bernoulli(Rng& rng, double p);

}  // namespace bbox

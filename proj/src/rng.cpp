#include "bbox/rng.hpp"

#include <random>

namespace bbox {

SplitMix64::result_type SplitMix64::operator()()
{
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix64(state_);
}

std::uint64_t mix64(std::uint64_t z)
{
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t split_seed(std::uint64_t root, std::uint64_t index)
{
    return mix64(mix64(root) ^ mix64(index + 0x632be59bd9b4e019ULL));
}

Rng make_stream(std::uint64_t seed, StreamTag tag, std::uint64_t counter)
{
    return Rng(split_seed(split_seed(seed, static_cast<std::uint64_t>(tag)), counter));
}

std::size_t uniform_index(Rng& rng, std::size_t n)
{
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

bool bernoulli(Rng& rng, double p)
{
    return std::bernoulli_distribution(p)(rng);
}

}  // namespace bbox

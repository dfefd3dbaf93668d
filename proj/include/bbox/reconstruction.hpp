#pragma once

/// Target identification from rankings: given t k-bit samples and the dense ranking of
/// their OneMax values under an unknown k-bit target, find every target that induces the
/// same ranking.

#include <cstddef>
#include <optional>
#include <vector>

#include "bbox/bitstring.hpp"
#include "bbox/model.hpp"

namespace bbox {

struct UnsupportedParameter : ConfigError {
    using ConfigError::ConfigError;
};

inline constexpr std::size_t max_reconstruction_bits = 20;

struct RankingObservation {
    std::size_t k = 0;
    std::vector<BitString> samples;  // each of length k
    std::vector<std::size_t> ranks;  // dense, 0 = best
};

/// Dense ranking of the samples' OneMax values under target.
std::vector<std::size_t> induced_ranking(const std::vector<BitString>& samples, const BitString& target);

/// Every target in {0,1}^k consistent with obs, in increasing numeric order (position 0 is
/// the least significant bit). Throws UnsupportedParameter for k > 20 and
/// std::invalid_argument for malformed observations. The candidate scan runs in parallel.
std::vector<BitString> consistent_targets(const RankingObservation& obs);

/// Single-threaded reference scan with identical output.
std::vector<BitString> consistent_targets_serial(const RankingObservation& obs);

/// The unique consistent target, or std::nullopt when the ranking is ambiguous.
std::optional<BitString> reconstruct_block(const RankingObservation& obs);

/// Samples needed for block length k: min(mu, ceil(4k / log2 k)), with log2 taken as 1 for k <= 2.
std::size_t required_samples(std::size_t k, std::size_t mu);

}  // namespace bbox

#include "bbox/reconstruction.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>

namespace bbox {

namespace {

/// Samples packed into integers and ordered by rank, ready for the candidate scan.
struct PackedObservation {
    std::size_t k = 0;
    std::vector<std::uint32_t> samples;  // sorted by rank
    std::vector<std::size_t> ranks;      // matching, non-decreasing
};

PackedObservation pack(const RankingObservation& obs)
{
    if (obs.k > max_reconstruction_bits)
        throw UnsupportedParameter("reconstruction supports k <= 20");
    if (obs.samples.size() != obs.ranks.size())
        throw std::invalid_argument("one rank per sample required");
    std::vector<std::size_t> order(obs.samples.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return obs.ranks[a] < obs.ranks[b]; });

    PackedObservation p;
    p.k = obs.k;
    for (std::size_t i : order) {
        if (obs.samples[i].size() != obs.k)
            throw std::invalid_argument("sample length differs from k");
        p.samples.push_back(static_cast<std::uint32_t>(extract_bits(obs.samples[i], Range{0, obs.k})));
        p.ranks.push_back(obs.ranks[i]);
    }
    for (std::size_t i = 0; i < p.ranks.size(); ++i) {
        const std::size_t expected = i == 0 ? 0 : p.ranks[i - 1];
        if (p.ranks[i] != expected && p.ranks[i] != expected + 1)
            throw std::invalid_argument("ranks are not dense");
    }
    return p;
}

bool consistent(const PackedObservation& p, std::uint32_t candidate)
{
    int previous = 0;
    for (std::size_t i = 0; i < p.samples.size(); ++i) {
        const int f = -std::popcount(candidate ^ p.samples[i]);
        if (i > 0) {
            if (p.ranks[i] == p.ranks[i - 1] ? f != previous : f >= previous)
                return false;
        }
        previous = f;
    }
    return true;
}

BitString unpack(std::uint32_t value, std::size_t k)
{
    BitString x(k);
    deposit_bits(x, Range{0, k}, value);
    return x;
}

}  // namespace

std::vector<std::size_t> induced_ranking(const std::vector<BitString>& samples, const BitString& target)
{
    std::vector<int> fitness;
    fitness.reserve(samples.size());
    for (const auto& s : samples)
        fitness.push_back(static_cast<int>(s.size() - s.hamming(target)));
    if (fitness.empty())
        return {};
    return compute_ranking(fitness);
}

std::vector<BitString> consistent_targets_serial(const RankingObservation& obs)
{
    const PackedObservation p = pack(obs);
    const std::uint32_t total = std::uint32_t{1} << p.k;
    std::vector<BitString> out;
    for (std::uint32_t c = 0; c < total; ++c)
        if (consistent(p, c))
            out.push_back(unpack(c, p.k));
    return out;
}

std::vector<BitString> consistent_targets(const RankingObservation& obs)
{
    const PackedObservation p = pack(obs);
    const std::int64_t total = std::int64_t{1} << p.k;
    std::vector<std::uint8_t> hit(static_cast<std::size_t>(total));
#pragma omp parallel for schedule(static) if (p.k >= 12)
    for (std::int64_t c = 0; c < total; ++c)
        hit[static_cast<std::size_t>(c)] = consistent(p, static_cast<std::uint32_t>(c));

    std::vector<BitString> out;
    for (std::int64_t c = 0; c < total; ++c)
        if (hit[static_cast<std::size_t>(c)])
            out.push_back(unpack(static_cast<std::uint32_t>(c), p.k));
    return out;
}

std::optional<BitString> reconstruct_block(const RankingObservation& obs)
{
    auto candidates = consistent_targets(obs);
    if (candidates.size() != 1)
        return std::nullopt;
    return std::move(candidates.front());
}

std::size_t required_samples(std::size_t k, std::size_t mu)
{
    if (k == 0)
        return 0;
    const double lg = std::max(1.0, std::log2(static_cast<double>(k)));
    const auto t = static_cast<std::size_t>(std::ceil(4.0 * static_cast<double>(k) / lg));
    return std::min(mu, t);
}

}  // namespace bbox

#pragma once

/// Algorithm-facing side of the black-box model: everything an algorithm may see or
/// return. Hidden targets and fitness values live in oracle.hpp and are never reachable
/// from these types.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bbox/bitstring.hpp"
#include "bbox/rng.hpp"

namespace bbox {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class SelectionMode { plus, comma };

struct ModelConfig {
    std::size_t mu = 1;
    std::size_t lambda = 1;
    SelectionMode mode = SelectionMode::plus;
    std::uint64_t budget = 1;

    void validate() const;
};

enum class FailureCause { none, budget_exhausted, reconstruction_ambiguous, trading_pool_empty, phase_misread };

std::string_view to_string(FailureCause cause);
FailureCause parse_failure_cause(std::string_view text);

/// The algorithm's entire view of the world: μ strings and their dense weak-order ranks
/// (0 = best, equal rank iff equal fitness).
struct RankedPopulation {
    std::vector<BitString> members;
    std::vector<std::size_t> ranks;

    std::size_t size() const { return members.size(); }
};

/// λ offspring plus a total preference order over candidate slots, consulted only among
/// equal-fitness candidates. Plus mode: slots 0..μ-1 are parents, μ..μ+λ-1 offspring.
/// Comma mode: slots 0..λ-1 are offspring. tie_break[0] is kept first.
struct GenerationProposal {
    std::vector<BitString> offspring;
    std::vector<std::size_t> tie_break;
    /// Set when the algorithm detects that its own invariants broke; the run continues.
    std::optional<FailureCause> fault;
    /// The algorithm's schedule ends with this generation (deterministic algorithms only).
    bool terminal = false;
};

/// Offspring slots in index order, then parents in index order.
std::vector<std::size_t> prefer_offspring(std::size_t mu, std::size_t lambda, SelectionMode mode);
/// Parents in index order, then offspring.
std::vector<std::size_t> prefer_parents(std::size_t mu, std::size_t lambda, SelectionMode mode);

/// Dense ranks, 0 = largest value.
std::vector<std::size_t> compute_ranking(const std::vector<int>& fitnesses);

struct ModelShape {
    std::size_t mu = 1;
    std::size_t lambda = 1;
    SelectionMode mode = SelectionMode::plus;
};

/// Stateless decision rule. Implementations hold only immutable configuration; every
/// call sees the current population view and a fresh randomness stream, nothing else.
class Algorithm {
public:
    virtual ~Algorithm() = default;

    virtual std::string_view id() const = 0;
    virtual std::size_t n() const = 0;
    virtual ModelShape shape() const = 0;

    /// Emits initial member number so_far.size(), seeing the members emitted before it.
    virtual BitString initial(const RankedPopulation& so_far, Rng& rng) const = 0;
    virtual GenerationProposal decide(const RankedPopulation& view, Rng& rng) const = 0;
};

struct RunRecord {
    std::string algo_id;
    std::size_t n = 0;
    std::size_t mu = 0;
    std::size_t lambda = 0;
    std::uint64_t seed = 0;
    std::size_t trial = 0;
    std::uint64_t queries = 0;
    std::uint64_t generations = 0;
    bool success = false;
    FailureCause failure_cause = FailureCause::none;

    bool operator==(const RunRecord&) const = default;
};

}  // namespace bbox

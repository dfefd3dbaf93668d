#pragma once

/// Hidden side of the model: the target, fitness evaluation, selection and the run loop.
/// Algorithm code must not include this header.

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "bbox/model.hpp"

namespace bbox {

class HiddenInstance {
public:
    explicit HiddenInstance(BitString target) : target_(std::move(target)) {}

    std::size_t n() const { return target_.size(); }
    const BitString& target() const { return target_; }
    std::uint64_t queries() const { return queries_; }
    std::optional<std::uint64_t> first_hit() const { return first_hit_; }

    friend int evaluate_fitness(HiddenInstance& instance, const BitString& x);

private:
    BitString target_;
    std::uint64_t queries_ = 0;
    std::optional<std::uint64_t> first_hit_;
};

/// OneMax value of x under the hidden target; counts one query.
int evaluate_fitness(HiddenInstance& instance, const BitString& x);

/// OneMax value without touching the query counter (assertion layer only).
int peek_fitness(const HiddenInstance& instance, const BitString& x);

HiddenInstance random_instance(std::size_t n, std::uint64_t seed);

/// Population together with the hidden fitness of every member.
struct EvaluatedPopulation {
    std::vector<BitString> members;
    std::vector<int> fitness;

    RankedPopulation view() const;
};

/// Throws std::invalid_argument when the proposal does not fit the configuration.
void check_proposal(const ModelConfig& config, const GenerationProposal& proposal);

/// One generation of truncation selection. Survivors come back best first.
EvaluatedPopulation apply_generation(const ModelConfig& config, HiddenInstance& instance,
                                     const EvaluatedPopulation& pop, const GenerationProposal& proposal);

struct GenerationTrace {
    std::uint64_t generation = 0;  // 1-based index of the generation just applied
    const HiddenInstance& instance;
    const EvaluatedPopulation& before;
    const GenerationProposal& proposal;
    const EvaluatedPopulation& after;
};

struct RunOptions {
    /// When false the run continues past the first hit until a terminal proposal.
    bool stop_at_first_hit = true;
    std::function<void(const GenerationTrace&)> observer;
};

RunRecord run(const Algorithm& algorithm, const ModelConfig& config, HiddenInstance& instance,
              std::uint64_t seed, const RunOptions& options = {});

}  // namespace bbox

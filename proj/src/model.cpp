#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "bbox/model.hpp"
#include "bbox/oracle.hpp"

namespace bbox {

void ModelConfig::validate() const
{
    if (mu == 0 || lambda == 0)
        throw ConfigError("mu and lambda must be positive");
    if (budget == 0)
        throw ConfigError("budget must be positive");
    if (mode == SelectionMode::comma && lambda < mu)
        throw ConfigError("comma selection needs lambda >= mu");
}

std::string_view to_string(FailureCause cause)
{
    switch (cause) {
    case FailureCause::none: return "none";
    case FailureCause::budget_exhausted: return "budget_exhausted";
    case FailureCause::reconstruction_ambiguous: return "reconstruction_ambiguous";
    case FailureCause::trading_pool_empty: return "trading_pool_empty";
    case FailureCause::phase_misread: return "phase_misread";
    }
    return "none";
}

FailureCause parse_failure_cause(std::string_view text)
{
    for (auto c : {FailureCause::none, FailureCause::budget_exhausted, FailureCause::reconstruction_ambiguous,
                   FailureCause::trading_pool_empty, FailureCause::phase_misread})
        if (to_string(c) == text)
            return c;
    throw ConfigError("unknown failure cause: " + std::string(text));
}

std::vector<std::size_t> prefer_offspring(std::size_t mu, std::size_t lambda, SelectionMode mode)
{
    std::vector<std::size_t> order;
    if (mode == SelectionMode::comma) {
        order.resize(lambda);
        std::iota(order.begin(), order.end(), 0);
        return order;
    }
    for (std::size_t j = 0; j < lambda; ++j)
        order.push_back(mu + j);
    for (std::size_t i = 0; i < mu; ++i)
        order.push_back(i);
    return order;
}

std::vector<std::size_t> prefer_parents(std::size_t mu, std::size_t lambda, SelectionMode mode)
{
    std::vector<std::size_t> order(mode == SelectionMode::comma ? lambda : mu + lambda);
    std::iota(order.begin(), order.end(), 0);
    return order;
}

std::vector<std::size_t> compute_ranking(const std::vector<int>& fitnesses)
{
    std::vector<int> distinct(fitnesses);
    std::sort(distinct.begin(), distinct.end(), std::greater<>());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    std::vector<std::size_t> ranks(fitnesses.size());
    for (std::size_t i = 0; i < fitnesses.size(); ++i) {
        auto it = std::lower_bound(distinct.begin(), distinct.end(), fitnesses[i], std::greater<>());
        ranks[i] = static_cast<std::size_t>(it - distinct.begin());
    }
    return ranks;
}

int evaluate_fitness(HiddenInstance& instance, const BitString& x)
{
    if (x.size() != instance.n())
        throw ConfigError("query length does not match instance length");
    const int value = static_cast<int>(instance.n() - x.hamming(instance.target_));
    ++instance.queries_;
    if (!instance.first_hit_ && static_cast<std::size_t>(value) == instance.n())
        instance.first_hit_ = instance.queries_;
    return value;
}

int peek_fitness(const HiddenInstance& instance, const BitString& x)
{
    return static_cast<int>(instance.n() - x.hamming(instance.target()));
}

HiddenInstance random_instance(std::size_t n, std::uint64_t seed)
{
    Rng rng = make_stream(seed, StreamTag::target, 0);
    BitString z(n);
    for (std::size_t i = 0; i < n; ++i)
        z.set(i, rng() >> 63);
    return HiddenInstance(std::move(z));
}

RankedPopulation EvaluatedPopulation::view() const
{
    return RankedPopulation{members, compute_ranking(fitness)};
}

void check_proposal(const ModelConfig& config, const GenerationProposal& proposal)
{
    if (proposal.offspring.size() != config.lambda)
        throw std::invalid_argument("proposal must carry exactly lambda offspring");
    const std::size_t slots = config.mode == SelectionMode::comma ? config.lambda : config.mu + config.lambda;
    if (proposal.tie_break.size() != slots)
        throw std::invalid_argument("tie_break must order every candidate slot");
    std::vector<bool> seen(slots, false);
    for (auto s : proposal.tie_break) {
        if (s >= slots || seen[s])
            throw std::invalid_argument("tie_break is not a permutation of candidate slots");
        seen[s] = true;
    }
}

EvaluatedPopulation apply_generation(const ModelConfig& config, HiddenInstance& instance,
                                     const EvaluatedPopulation& pop, const GenerationProposal& proposal)
{
    check_proposal(config, proposal);
    const bool plus = config.mode == SelectionMode::plus;
    const std::size_t base = plus ? config.mu : 0;

    std::vector<const BitString*> cand(base + config.lambda);
    std::vector<int> fit(base + config.lambda);
    for (std::size_t i = 0; i < base; ++i) {
        cand[i] = &pop.members[i];
        fit[i] = pop.fitness[i];
    }
    for (std::size_t j = 0; j < config.lambda; ++j) {
        cand[base + j] = &proposal.offspring[j];
        fit[base + j] = evaluate_fitness(instance, proposal.offspring[j]);
    }

    std::vector<std::size_t> priority(cand.size());
    for (std::size_t r = 0; r < proposal.tie_break.size(); ++r)
        priority[proposal.tie_break[r]] = r;

    std::vector<std::size_t> order(cand.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (fit[a] != fit[b])
            return fit[a] > fit[b];
        return priority[a] < priority[b];
    });

    EvaluatedPopulation next;
    next.members.reserve(config.mu);
    next.fitness.reserve(config.mu);
    for (std::size_t r = 0; r < config.mu; ++r) {
        next.members.push_back(*cand[order[r]]);
        next.fitness.push_back(fit[order[r]]);
    }
    return next;
}

RunRecord run(const Algorithm& algorithm, const ModelConfig& config, HiddenInstance& instance,
              std::uint64_t seed, const RunOptions& options)
{
    config.validate();
    const ModelShape shape = algorithm.shape();
    if (shape.mu != config.mu || shape.lambda != config.lambda || shape.mode != config.mode)
        throw ConfigError("model configuration does not match the algorithm");
    if (algorithm.n() != instance.n())
        throw ConfigError("algorithm and instance lengths differ");

    RunRecord rec;
    rec.algo_id = std::string(algorithm.id());
    rec.n = instance.n();
    rec.mu = config.mu;
    rec.lambda = config.lambda;
    rec.seed = seed;

    const bool stop_at_hit = options.stop_at_first_hit;
    EvaluatedPopulation pop;
    for (std::size_t i = 0; i < config.mu; ++i) {
        Rng rng = make_stream(seed, StreamTag::initial, i);
        BitString x = algorithm.initial(pop.view(), rng);
        if (x.size() != instance.n())
            throw std::invalid_argument("initial string has wrong length");
        pop.fitness.push_back(evaluate_fitness(instance, x));
        pop.members.push_back(std::move(x));
        if (stop_at_hit && instance.first_hit())
            break;
    }

    std::optional<FailureCause> fault;
    std::uint64_t generation = 0;
    bool finished = stop_at_hit && instance.first_hit().has_value();
    while (!finished && instance.queries() < config.budget) {
        Rng rng = make_stream(seed, StreamTag::generation, generation);
        GenerationProposal proposal = algorithm.decide(pop.view(), rng);
        if (proposal.fault && !fault)
            fault = proposal.fault;
        EvaluatedPopulation next = apply_generation(config, instance, pop, proposal);
        ++generation;
        if (options.observer)
            options.observer(GenerationTrace{generation, instance, pop, proposal, next});
        pop = std::move(next);
        finished = proposal.terminal || (stop_at_hit && instance.first_hit().has_value());
    }

    rec.generations = generation;
    rec.success = instance.first_hit().has_value();
    rec.queries = rec.success ? *instance.first_hit() : instance.queries();
    rec.failure_cause = rec.success ? FailureCause::none : fault.value_or(FailureCause::budget_exhausted);
    return rec;
}

}  // namespace bbox

#include <bit>
#include <cmath>
#include <limits>

#include "bbox/algorithms.hpp"

namespace bbox {

const std::vector<std::string>& algorithm_ids()
{
    static const std::vector<std::string> ids = {
        "two-plus-one", "one-plus-one-mc", "one-plus-lambda", "mu-plus-one",
        "one-comma-two", "one-comma-lambda", "rls", "one-comma-one",
    };
    return ids;
}

std::unique_ptr<Algorithm> make_algorithm(std::string_view id, const AlgorithmParams& p)
{
    if (p.n == 0)
        throw ConfigError("n must be positive");
    auto fixed = [&](std::size_t mu, std::size_t lambda) {
        if ((p.mu && p.mu != mu) || (p.lambda && p.lambda != lambda))
            throw ConfigError(std::string(id) + " has fixed population sizes");
    };
    if (id == "two-plus-one") {
        fixed(2, 1);
        return std::make_unique<TwoPlusOne>(p.n);
    }
    if (id == "one-plus-one-mc") {
        fixed(1, 1);
        return std::make_unique<OnePlusOneMC>(p.n);
    }
    if (id == "one-plus-lambda") {
        fixed(1, p.lambda ? p.lambda : 4);
        return std::make_unique<OnePlusLambda>(p.n, p.lambda ? p.lambda : 4);
    }
    if (id == "mu-plus-one") {
        fixed(p.mu ? p.mu : 16, 1);
        return std::make_unique<MuPlusOne>(p.n, p.mu ? p.mu : 16);
    }
    if (id == "one-comma-two") {
        fixed(1, 2);
        return std::make_unique<OneCommaLambda>(p.n, 2);
    }
    if (id == "one-comma-lambda") {
        fixed(1, p.lambda ? p.lambda : 4);
        return std::make_unique<OneCommaLambda>(p.n, p.lambda ? p.lambda : 4);
    }
    if (id == "rls") {
        fixed(1, 1);
        return std::make_unique<Rls>(p.n);
    }
    if (id == "one-comma-one") {
        fixed(1, 1);
        if (p.n > 40)
            throw ConfigError("one-comma-one needs n <= 40");
        return std::make_unique<OneCommaOne>(p.n);
    }
    throw ConfigError("unknown algorithm: " + std::string(id));
}

std::uint64_t default_budget(const Algorithm& algorithm, double factor)
{
    const std::string_view id = algorithm.id();
    const double n = static_cast<double>(algorithm.n());
    const ModelShape s = algorithm.shape();
    double order = n;
    if (id == "one-plus-lambda" || id == "one-comma-lambda") {
        const double ell = static_cast<double>(std::bit_width(s.lambda) - 1);
        order = static_cast<double>(s.lambda) * n / ell;
    } else if (id == "rls") {
        order = n * std::log(std::max(n, 2.0));
    } else if (id == "one-comma-one") {
        order = std::ldexp(1.0, static_cast<int>(algorithm.n()));
    }
    const double budget = std::ceil(factor * order);
    if (!(budget >= 1.0))
        return 1;
    if (budget >= static_cast<double>(std::numeric_limits<std::uint64_t>::max()))
        return std::numeric_limits<std::uint64_t>::max();
    return static_cast<std::uint64_t>(budget);
}

ModelConfig model_config(const Algorithm& algorithm, std::uint64_t budget)
{
    const ModelShape s = algorithm.shape();
    ModelConfig config{s.mu, s.lambda, s.mode, budget};
    config.validate();
    return config;
}

}  // namespace bbox

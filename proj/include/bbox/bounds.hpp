#pragma once

/// Information-theoretic lower bounds for the memory-restricted ranking-based models.
/// Logarithms are base 2.

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "bbox/model.hpp"

namespace bbox {

struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

struct OneOneBound {
    double las_vegas = 0;
    double monte_carlo = 0;
};

/// (n - 1, n + ceil(log2(1 - p))) for 0 <= p < 1.
OneOneBound lb_1plus1(std::size_t n, double p);

/// n / log2(lambda + 1).
double lb_1pluslambda(std::size_t n, std::size_t lambda);

/// n / log2(2 mu + 1).
double lb_muplus1(std::size_t n, std::size_t mu);

/// Bits per generation for mu, lambda >= 2:
/// log2 binom(mu + lambda, mu) + mu (log2 mu - 1 - log2 ln 2) - 1.
double bits_mupluslambda(std::size_t mu, std::size_t lambda);

/// n / bits_mupluslambda(mu, lambda).
double lb_mupluslambda(std::size_t n, std::size_t mu, std::size_t lambda);

/// Number of weak orderings of m elements. Throws std::overflow_error beyond 64 bits.
std::uint64_t ordered_bell(std::size_t m);

/// Las Vegas to Monte Carlo conversion: T / (p - pE). Throws DomainError when p <= pE.
double remark1_bound(double T, double p, double pE);

struct BoundReport {
    std::size_t mu = 1;
    std::size_t lambda = 1;
    SelectionMode mode = SelectionMode::plus;
    std::size_t n = 0;
    double las_vegas_lb = 0;
    double monte_carlo_lb = 0;
    double bits_per_query = 0;
    /// The formula holds up to an additive O(1) that is not subtracted.
    bool additive_slack = false;
};

/// Bound for the elitist plus model with the given mu, lambda and failure probability p.
BoundReport bound_report(std::size_t n, std::size_t mu, std::size_t lambda, double p);

/// "(mu+lambda)" label.
std::string model_label(std::size_t mu, std::size_t lambda);

/// One CSV line "model,n,lv_lb,mc_lb,bits_per_query".
std::string format_bound_line(const BoundReport& report);

}  // namespace bbox

#include "bbox/bounds.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "bbox/counter.hpp"

namespace bbox {

namespace {

void check_probability(double p)
{
    if (!(p >= 0.0 && p < 1.0))
        throw DomainError("failure probability must lie in [0, 1)");
}

double log2_binomial(std::size_t n, std::size_t k)
{
    if (n <= 62)
        return std::log2(static_cast<double>(binomial(n, k)));
    const double ln = std::lgamma(static_cast<double>(n) + 1) - std::lgamma(static_cast<double>(k) + 1) -
                      std::lgamma(static_cast<double>(n - k) + 1);
    return ln / std::numbers::ln2;
}

}  // namespace

OneOneBound lb_1plus1(std::size_t n, double p)
{
    check_probability(p);
    const double nd = static_cast<double>(n);
    return {nd - 1.0, nd + std::ceil(std::log2(1.0 - p))};
}

double lb_1pluslambda(std::size_t n, std::size_t lambda)
{
    if (lambda == 0)
        throw DomainError("lambda must be positive");
    return static_cast<double>(n) / std::log2(static_cast<double>(lambda) + 1.0);
}

double lb_muplus1(std::size_t n, std::size_t mu)
{
    if (mu == 0)
        throw DomainError("mu must be positive");
    return static_cast<double>(n) / std::log2(2.0 * static_cast<double>(mu) + 1.0);
}

double bits_mupluslambda(std::size_t mu, std::size_t lambda)
{
    if (mu < 2 || lambda < 2)
        throw DomainError("the (mu+lambda) formula needs mu, lambda >= 2");
    const double m = static_cast<double>(mu);
    return log2_binomial(mu + lambda, mu) + m * (std::log2(m) - 1.0 - std::log2(std::numbers::ln2)) - 1.0;
}

double lb_mupluslambda(std::size_t n, std::size_t mu, std::size_t lambda)
{
    return static_cast<double>(n) / bits_mupluslambda(mu, lambda);
}

std::uint64_t ordered_bell(std::size_t m)
{
    std::vector<unsigned __int128> b{1};
    for (std::size_t j = 1; j <= m; ++j) {
        unsigned __int128 sum = 0;
        for (std::size_t i = 1; i <= j; ++i)
            sum += static_cast<unsigned __int128>(binomial(j, i)) * b[j - i];
        if (sum > std::numeric_limits<std::uint64_t>::max())
            throw std::overflow_error("ordered Bell number exceeds 64 bits");
        b.push_back(sum);
    }
    return static_cast<std::uint64_t>(b[m]);
}

double remark1_bound(double T, double p, double pE)
{
    if (!(p > pE))
        throw DomainError("conversion needs p > pE");
    return T / (p - pE);
}

BoundReport bound_report(std::size_t n, std::size_t mu, std::size_t lambda, double p)
{
    check_probability(p);
    if (mu == 0 || lambda == 0)
        throw DomainError("mu and lambda must be positive");
    BoundReport r;
    r.mu = mu;
    r.lambda = lambda;
    r.n = n;
    if (mu == 1 && lambda == 1) {
        const OneOneBound b = lb_1plus1(n, p);
        r.las_vegas_lb = b.las_vegas;
        r.monte_carlo_lb = b.monte_carlo;
        r.bits_per_query = 1.0;
        return r;
    }
    if (mu == 1)
        r.bits_per_query = std::log2(static_cast<double>(lambda) + 1.0);
    else if (lambda == 1)
        r.bits_per_query = std::log2(2.0 * static_cast<double>(mu) + 1.0);
    else
        r.bits_per_query = bits_mupluslambda(mu, lambda);
    r.las_vegas_lb = static_cast<double>(n) / r.bits_per_query;
    r.monte_carlo_lb = (static_cast<double>(n) + std::log2(1.0 - p)) / r.bits_per_query;
    r.additive_slack = true;
    return r;
}

std::string model_label(std::size_t mu, std::size_t lambda)
{
    return "(" + std::to_string(mu) + "+" + std::to_string(lambda) + ")";
}

std::string format_bound_line(const BoundReport& r)
{
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s,%zu,%.6f,%.6f,%.6f", model_label(r.mu, r.lambda).c_str(), r.n,
                  r.las_vegas_lb, r.monte_carlo_lb, r.bits_per_query);
    return buf;
}

}  // namespace bbox

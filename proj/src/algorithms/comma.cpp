#include <bit>

#include "bbox/algorithms.hpp"

namespace bbox {

OneCommaLambda::OneCommaLambda(std::size_t n, std::size_t lambda) : n_(n), lambda_(lambda)
{
    if (n == 0)
        throw ConfigError("n must be positive");
    if (lambda < 2)
        throw ConfigError("(1,lambda) needs lambda >= 2");
    ell_ = static_cast<std::size_t>(std::bit_width(lambda) - 1);
    if (ell_ > 30)
        throw ConfigError("lambda too large");
}

std::uint64_t OneCommaLambda::schedule_length() const
{
    return (n_ + ell_ - 1) / ell_;
}

BitString OneCommaLambda::initial(const RankedPopulation&, Rng&) const
{
    BitString x(n_);
    x.set(0, true);
    return x;
}

GenerationProposal OneCommaLambda::decide(const RankedPopulation& view, Rng&) const
{
    const BitString& x = view.members[0];
    GenerationProposal prop;
    prop.tie_break = prefer_offspring(1, lambda_, SelectionMode::comma);

    // The marker is the last 1; everything before it is already optimal.
    std::size_t marker = n_;
    for (std::size_t i = n_; i-- > 0;)
        if (x.get(i)) {
            marker = i;
            break;
        }
    if (marker == n_) {
        prop.fault = FailureCause::phase_misread;
        prop.offspring.assign(lambda_, x);
        return prop;
    }

    const bool last = marker + ell_ >= n_;
    const Range block{marker, last ? n_ - marker : ell_};
    const std::uint64_t patterns = std::uint64_t{1} << block.length;
    prop.terminal = last;
    prop.offspring.reserve(lambda_);
    for (std::uint64_t p = 0; p < lambda_; ++p) {
        BitString y = x;
        deposit_bits(y, block, p < patterns ? p : 0);
        if (!last)
            y.set(marker + ell_, true);
        prop.offspring.push_back(std::move(y));
    }
    return prop;
}

}  // namespace bbox

#include "bbox/algorithms.hpp"

namespace bbox {

TwoPlusOne::TwoPlusOne(std::size_t n) : n_(n)
{
    if (n == 0)
        throw ConfigError("n must be positive");
}

BitString TwoPlusOne::initial(const RankedPopulation& so_far, Rng&) const
{
    BitString x(n_);
    if (so_far.size() == 1)
        x.set(0, true);
    return x;
}

GenerationProposal TwoPlusOne::decide(const RankedPopulation& view, Rng&) const
{
    const BitString& a = view.members[0];
    const BitString& b = view.members[1];
    const std::size_t better = view.ranks[0] <= view.ranks[1] ? 0 : 1;
    const BitString& top = view.members[better];

    GenerationProposal prop;
    prop.tie_break = {2, better, 1 - better};

    std::size_t diff = n_;
    std::size_t diffs = 0;
    std::size_t last_one = 0;
    bool any_one = false;
    for (std::size_t i = 0; i < n_; ++i) {
        if (a.get(i) != b.get(i)) {
            diff = i;
            ++diffs;
        }
        if (a.get(i) || b.get(i)) {
            last_one = i;
            any_one = true;
        }
    }
    if (diffs != 1 || !any_one || last_one != diff || view.ranks[0] == view.ranks[1]) {
        prop.fault = FailureCause::phase_misread;
        prop.offspring = {top};
        return prop;
    }

    BitString y = top;
    if (diff + 1 < n_)
        y.flip(diff + 1);
    prop.offspring = {std::move(y)};
    return prop;
}

}  // namespace bbox

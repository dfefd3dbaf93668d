#include "bbox/algorithms.hpp"
#include "bbox/primitives.hpp"

namespace bbox {

BitString random_bits(std::size_t n, Rng& rng)
{
    BitString x(n);
    std::uint64_t word = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if ((i & 63) == 0)
            word = rng();
        x.set(i, (word >> (i & 63)) & 1u);
    }
    return x;
}

BitString Rls::initial(const RankedPopulation&, Rng& rng) const
{
    return random_bits(n_, rng);
}

GenerationProposal Rls::decide(const RankedPopulation& view, Rng& rng) const
{
    GenerationProposal prop;
    prop.offspring = {rls_step(view.members[0], Range{0, n_}, rng)};
    prop.tie_break = prefer_offspring(1, 1, SelectionMode::plus);
    return prop;
}

BitString OneCommaOne::initial(const RankedPopulation&, Rng& rng) const
{
    return random_bits(n_, rng);
}

GenerationProposal OneCommaOne::decide(const RankedPopulation&, Rng& rng) const
{
    GenerationProposal prop;
    prop.offspring = {random_bits(n_, rng)};
    prop.tie_break = {0};
    return prop;
}

}  // namespace bbox

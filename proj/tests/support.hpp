#pragma once

#include <string>

#include "bbox/bitstring.hpp"
#include "bbox/oracle.hpp"

namespace test_support {

inline bbox::BitString bits(const std::string& s)
{
    return bbox::BitString::from_string(s);
}

inline int onemax(const bbox::BitString& x, const bbox::BitString& z)
{
    int agree = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
        agree += x.get(i) == z.get(i);
    return agree;
}

}  // namespace test_support

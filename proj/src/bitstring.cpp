#include "bbox/bitstring.hpp"

#include <bit>
#include <stdexcept>

namespace bbox {

BitString::BitString(std::size_t n, bool value) : n_(n), words_((n + 63) / 64, value ? ~std::uint64_t{0} : 0)
{
    if (value && (n & 63))
        words_.back() &= (std::uint64_t{1} << (n & 63)) - 1;
}

BitString BitString::from_string(std::string_view bits)
{
    BitString x(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] == '1')
            x.set(i, true);
        else if (bits[i] != '0')
            throw std::invalid_argument("bit string may only contain '0' and '1'");
    }
    return x;
}

std::size_t BitString::count() const
{
    std::size_t c = 0;
    for (auto w : words_)
        c += static_cast<std::size_t>(std::popcount(w));
    return c;
}

std::size_t BitString::hamming(const BitString& other) const
{
    if (other.n_ != n_)
        throw std::invalid_argument("hamming: length mismatch");
    std::size_t c = 0;
    for (std::size_t i = 0; i < words_.size(); ++i)
        c += static_cast<std::size_t>(std::popcount(words_[i] ^ other.words_[i]));
    return c;
}

void BitString::complement()
{
    for (auto& w : words_)
        w = ~w;
    if (n_ & 63)
        words_.back() &= (std::uint64_t{1} << (n_ & 63)) - 1;
}

std::string BitString::to_string() const
{
    std::string s(n_, '0');
    for (std::size_t i = 0; i < n_; ++i)
        if (get(i))
            s[i] = '1';
    return s;
}

bool ranges_equal(const BitString& x, Range a, Range b)
{
    for (std::size_t i = 0; i < a.length; ++i)
        if (x.get(a[i]) != x.get(b[i]))
            return false;
    return true;
}

bool ranges_complementary(const BitString& x, Range a, Range b)
{
    for (std::size_t i = 0; i < a.length; ++i)
        if (x.get(a[i]) == x.get(b[i]))
            return false;
    return true;
}

bool all_ones(const BitString& x, Range r)
{
    return first_zero(x, r) == r.length;
}

std::size_t first_zero(const BitString& x, Range r)
{
    for (std::size_t i = 0; i < r.length; ++i)
        if (!x.get(r[i]))
            return i;
    return r.length;
}

std::uint64_t extract_bits(const BitString& x, Range r)
{
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < r.length; ++i)
        if (x.get(r[i]))
            v |= std::uint64_t{1} << i;
    return v;
}

void deposit_bits(BitString& x, Range r, std::uint64_t value)
{
    for (std::size_t i = 0; i < r.length; ++i)
        x.set(r[i], (value >> i) & 1u);
}

void copy_range(BitString& x, Range from, Range to)
{
    for (std::size_t i = 0; i < from.length; ++i)
        x.set(to[i], x.get(from[i]));
}

}  // namespace bbox

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace bbox {

/// Fixed-length bit vector. Positions are 0-based; the length never changes.
class BitString {
public:
    BitString() = default;
    explicit BitString(std::size_t n, bool value = false);

    /// Parses a string of '0'/'1' characters, position 0 first.
    static BitString from_string(std::string_view bits);

    std::size_t size() const { return n_; }

    bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i, bool v)
    {
        const std::uint64_t m = std::uint64_t{1} << (i & 63);
        if (v)
            words_[i >> 6] |= m;
        else
            words_[i >> 6] &= ~m;
    }
    void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

    std::size_t count() const;
    std::size_t hamming(const BitString& other) const;
    void complement();

    std::string to_string() const;
    const std::vector<std::uint64_t>& words() const { return words_; }

    bool operator==(const BitString&) const = default;

private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> words_;  // bits beyond n_ are always zero
};

/// Contiguous block of positions [start, start + length).
struct Range {
    std::size_t start = 0;
    std::size_t length = 0;

    std::size_t end() const { return start + length; }
    std::size_t operator[](std::size_t i) const { return start + i; }
    bool contains(std::size_t pos) const { return pos >= start && pos < end(); }
    bool empty() const { return length == 0; }
};

bool ranges_equal(const BitString& x, Range a, Range b);
bool ranges_complementary(const BitString& x, Range a, Range b);
bool all_ones(const BitString& x, Range r);
/// Index of the first zero inside r, or r.length if none.
std::size_t first_zero(const BitString& x, Range r);
/// Reads up to 64 bits of r as an integer, position r.start in bit 0.
std::uint64_t extract_bits(const BitString& x, Range r);
void deposit_bits(BitString& x, Range r, std::uint64_t value);
void copy_range(BitString& x, Range from, Range to);

}  // namespace bbox

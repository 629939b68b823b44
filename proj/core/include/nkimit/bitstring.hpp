#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace nkimit {

// Largest string length supported: the whole solution space is enumerated
// to locate the global optimum.
inline constexpr int kMaxBits = 24;

// A length-N binary string packed into a machine word.
//
// Component x_i is stored at word bit (N-1-i), so x_0 is the most
// significant bit and numeric order of words equals lexicographic order of
// the strings.
class BitString {
public:
    BitString() = default;
    BitString(int n, std::uint32_t word);

    static BitString from_bits(std::span<const int> bits);
    // Parses "0110"-style text.
    static BitString parse(std::string_view text);

    int size() const noexcept { return n_; }
    std::uint32_t word() const noexcept { return word_; }

    int operator[](int i) const noexcept { return static_cast<int>((word_ >> (n_ - 1 - i)) & 1U); }
    void flip(int i) noexcept { word_ ^= 1U << (n_ - 1 - i); }

    int hamming_distance(const BitString& other) const;
    std::string to_string() const;

    friend bool operator==(const BitString&, const BitString&) = default;
    friend auto operator<=>(const BitString& a, const BitString& b) { return a.word_ <=> b.word_; }

private:
    std::uint32_t word_ = 0;
    int n_ = 0;
};

}  // namespace nkimit

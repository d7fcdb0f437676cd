#pragma once

// Bit-packed F_2[t]: one bit per coefficient, 64 coefficients per word.
// Poly routes F_2 arithmetic here once operands are large enough to benefit.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "fqw/bignat.hpp"

namespace fqw::gf2x {

/// Karatsuba switch-over, in 64-bit words. bench/bench_mul picks this value.
inline constexpr std::size_t kKaratsubaWords = 12;

class BitPoly {
public:
    BitPoly() = default;
    explicit BitPoly(std::vector<std::uint64_t> words);

    /// From 0/1 coefficient codes, low to high.
    template <class Code>
    static BitPoly from_coeffs(std::span<const Code> c)
    {
        std::vector<std::uint64_t> w((c.size() + 63) / 64, 0);
        for (std::size_t i = 0; i < c.size(); ++i)
            if (c[i] & 1)
                w[i >> 6] |= std::uint64_t{1} << (i & 63);
        return BitPoly(std::move(w));
    }
    template <class Code>
    std::vector<Code> to_coeffs() const
    {
        std::vector<Code> out(bit_length(), 0);
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i] = static_cast<Code>(test(i));
        return out;
    }

    static BitPoly monomial(std::size_t n);
    static BitPoly one() { return monomial(0); }

    /// Number of significant bits: degree + 1, or 0 for the zero polynomial.
    std::size_t bit_length() const;
    bool is_zero() const { return w_.empty(); }
    bool is_one() const { return w_.size() == 1 && w_[0] == 1; }
    bool test(std::size_t i) const
    {
        return (i >> 6) < w_.size() && ((w_[i >> 6] >> (i & 63)) & 1);
    }
    void flip(std::size_t i);

    std::span<const std::uint64_t> words() const { return w_; }

    BitPoly& operator^=(const BitPoly& o);
    friend BitPoly operator^(BitPoly a, const BitPoly& b) { return a ^= b; }
    friend bool operator==(const BitPoly& a, const BitPoly& b) { return a.w_ == b.w_; }

private:
    void normalize();
    std::vector<std::uint64_t> w_;

    friend BitPoly mul(const BitPoly&, const BitPoly&);
    friend BitPoly sqr(const BitPoly&);
    friend void rem_in_place(BitPoly&, const BitPoly&, BitPoly*);
};

/// Carry-less 64x64 -> 128 product.
void clmul64(std::uint64_t a, std::uint64_t b, std::uint64_t& lo, std::uint64_t& hi);

BitPoly mul(const BitPoly& a, const BitPoly& b);
/// Schoolbook only; reference for tests and the threshold benchmark.
BitPoly mul_basecase(const BitPoly& a, const BitPoly& b);
BitPoly sqr(const BitPoly& a);

/// a <- a mod m; if quot is non-null it receives the quotient. m must be nonzero.
void rem_in_place(BitPoly& a, const BitPoly& m, BitPoly* quot = nullptr);
BitPoly rem(BitPoly a, const BitPoly& m);
BitPoly gcd(BitPoly a, BitPoly b);
BitPoly mulmod(const BitPoly& a, const BitPoly& b, const BitPoly& m);
BitPoly powmod(const BitPoly& a, const BigNat& e, const BitPoly& m);

} // namespace fqw::gf2x

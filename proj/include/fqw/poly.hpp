#pragma once

// Dense univariate polynomials over any Field.
//
// Storage is one Elem per coefficient. Kernels specialise by field: prime
// fields use word-lane residues with delayed reduction and Karatsuba; F_2 hands
// large operands to the bit-packed gf2x kernel; other fields go through the
// field's element operations.

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fqw/bignat.hpp"
#include "fqw/gf.hpp"

namespace fqw {

/// Karatsuba switch-over for dense multiplication, in coefficients.
/// bench/bench_mul measures the crossover.
inline constexpr std::size_t kKaratsubaThreshold = 64;

/// F_2 operands at least this long are multiplied/reduced bit-packed.
inline constexpr std::size_t kGf2PackThreshold = 128;

/// Polynomial degree with a distinct value for the zero polynomial.
class Degree {
public:
    static constexpr Degree neg_inf() { return Degree(); }
    constexpr explicit Degree(std::size_t v) : v_(v), finite_(true) {}

    constexpr bool is_neg_inf() const { return !finite_; }
    /// Throws std::logic_error for NEG_INF.
    std::size_t value() const;

    friend constexpr bool operator==(Degree a, Degree b)
    {
        return a.finite_ == b.finite_ && (!a.finite_ || a.v_ == b.v_);
    }
    friend constexpr std::strong_ordering operator<=>(Degree a, Degree b)
    {
        if (!a.finite_ || !b.finite_)
            return a.finite_ <=> b.finite_;
        return a.v_ <=> b.v_;
    }
    friend constexpr bool operator==(Degree a, std::size_t v) { return a.finite_ && a.v_ == v; }

    std::string to_string() const;

private:
    constexpr Degree() = default;
    std::size_t v_ = 0;
    bool finite_ = false;
};

class Poly {
public:
    /// The zero polynomial.
    explicit Poly(Field f);
    /// Coefficients low to high; trailing zeros are dropped. Codes must lie in f.
    Poly(Field f, std::vector<Elem> coeffs);

    static Poly constant(Field f, Elem c);
    static Poly monomial(Field f, Elem c, std::size_t n);
    static Poly t(Field f) { return monomial(std::move(f), 1, 1); }
    /// Sparse construction; repeated exponents are summed.
    static Poly from_terms(Field f, std::span<const std::pair<std::size_t, Elem>> terms);
    /// Human form "t^6+2*t+1" or list form "[c0,c1,...]".
    static Poly parse(Field f, std::string_view text);

    const Field& field() const { return field_; }
    Degree degree() const { return c_.empty() ? Degree::neg_inf() : Degree(c_.size() - 1); }
    /// Number of stored coefficients (degree + 1, or 0).
    std::size_t size() const { return c_.size(); }
    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
    bool is_constant() const { return c_.size() <= 1; }
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }

    Elem coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
    Elem lead() const { return c_.empty() ? 0 : c_.back(); }
    std::span<const Elem> coeffs() const { return c_; }

    Poly scaled(Elem c) const;
    /// Divides by the leading coefficient; zero stays zero.
    Poly monic() const;

    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Poly& o);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a);
    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_ && a.field_ == b.field_; }

    /// Canonical human form: descending powers, zero terms omitted, "1*" elided.
    std::string to_string() const;
    std::string to_list_string() const;

private:
    void normalize();
    void check_same_field(const Poly& o) const;
    Field field_;
    std::vector<Elem> c_;
};

/// Orders by degree, then coefficients from t^{deg-1} down to t^0 by code.
bool canonical_less(const Poly& a, const Poly& b);

struct DivRem {
    Poly quot;
    Poly rem;
};

/// Throws DivisionByZero.
DivRem divrem(const Poly& f, const Poly& g);
Poly rem(const Poly& f, const Poly& g);
/// Throws NotDivisible when g does not divide f.
Poly exact_div(const Poly& f, const Poly& g);
/// Monic gcd; gcd(0, 0) = 0.
Poly gcd(const Poly& f, const Poly& g);

struct ExtGcd {
    Poly g;  ///< monic gcd
    Poly s;  ///< s*f + t*h = g
    Poly t;
};
ExtGcd ext_gcd(const Poly& f, const Poly& h);
/// Inverse of f modulo m. Throws DivisionByZero when gcd(f, m) != 1.
Poly invmod(const Poly& f, const Poly& m);

/// i-fold formal derivative.
Poly derivative(const Poly& f, unsigned i = 1);
Poly pow(const Poly& f, std::uint64_t e);
Poly mulmod(const Poly& a, const Poly& b, const Poly& m);
/// f^e mod m by square-and-multiply.
Poly powmod(const Poly& f, const BigNat& e, const Poly& m);

/// f^(q^d) by exponent scaling i -> i*q^d, where q is the order of f's field.
Poly q_power_expand(const Poly& f, unsigned d);
/// Same with the fixed field given explicitly: every coefficient must satisfy
/// x^fixed_order = x, else CoefficientsNotInFixedField.
Poly q_power_expand(const Poly& f, unsigned d, std::uint64_t fixed_order);
/// h^q mod m for h, m with coefficients in F_q (q = field order).
Poly frobenius_mod(const Poly& h, const Poly& m);
/// t^(q^n) mod m.
Poly t_pow_q_pow_mod(unsigned n, const Poly& m);

/// Horner evaluation at x, which may live in an extension of f's field.
FieldElement eval(const Poly& f, const FieldElement& x);
Elem eval(const Poly& f, Elem x);

struct SynthDiv {
    Poly quot;
    FieldElement rem;
};
/// f = quot*(t - x) + rem. f is embedded into x's field first.
SynthDiv synth_div(const Poly& f, const FieldElement& x);

/// f(t + c).
Poly shift(const Poly& f, const FieldElement& c);

/// Same coefficient codes, viewed over an extension of f's field.
Poly embed(const Poly& f, const Field& ext);

/// f mod (t^n - t), for n >= 2, by folding t^n -> t.
Poly reduce_mod_binomial(const Poly& f, std::size_t n);
/// f * (t^n - t), without a dense product.
Poly mul_by_binomial(const Poly& f, std::size_t n);

/// Largest k with g^k | f (f != 0, deg g >= 1). Stops at `cap` if given.
unsigned valuation(const Poly& f, const Poly& g, unsigned cap = ~0u);

} // namespace fqw

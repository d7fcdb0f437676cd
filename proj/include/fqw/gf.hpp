#pragma once

// Finite fields F_p and towers F_p ⊆ F_q ⊆ F_{q^d}.
//
// Elements are passed around as integer codes (Elem). The code of an element of
// an extension of degree k over a base of order b is sum_i c_i * b^i where c_i
// is the code of the i-th coefficient over the base; since base codes are
// themselves positional, the code is the base-p positional encoding of the full
// coefficient vector, least significant level first.

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fqw/bignat.hpp"

namespace fqw {

using Elem = std::uint32_t;

class Poly;

class Field;

namespace detail {
struct FieldData;
Field build_extension(const Field& base, const Poly& modulus, bool verify);
}

/// Immutable handle to a finite field. Cheap to copy; safe to share across threads.
class Field {
public:
    std::uint32_t characteristic() const;
    std::uint64_t order() const;
    /// Extension degree over the level directly below (1 for a prime field).
    unsigned degree() const;
    /// Degree over the prime field.
    unsigned absolute_degree() const;
    /// 0 for F_p, 1 for F_q = F_p[x]/(m), 2 for F_{q^d}.
    unsigned level() const;
    bool is_prime_field() const { return level() == 0; }

    std::optional<Field> base() const;
    /// Order of the level directly below (p for level 1, q for level 2, 1 for F_p).
    std::uint64_t base_order() const;
    /// Modulus coefficients as base codes, low to high, monic. Empty for F_p.
    std::span<const Elem> modulus() const;

    /// Class of the indeterminate (the root of the modulus). 1 for a prime field.
    Elem generator() const;

    Elem zero() const { return 0; }
    Elem one() const { return 1; }
    Elem add(Elem a, Elem b) const;
    Elem sub(Elem a, Elem b) const;
    Elem neg(Elem a) const;
    Elem mul(Elem a, Elem b) const;
    Elem inv(Elem a) const;
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
    Elem pow(Elem a, std::uint64_t e) const;
    Elem pow(Elem a, const BigNat& e) const;
    /// Image of an integer in the prime subfield.
    Elem from_int(long long v) const;
    bool contains(Elem code) const { return code < order(); }

    /// Coefficients over the base, length degree().
    std::vector<Elem> decode(Elem code) const;
    Elem encode(std::span<const Elem> coeffs) const;

    /// True if this field is `other` or one of the levels below it.
    bool is_subfield_of(const Field& other) const;

    /// "p", or "p^k:<modulus>" for a level-1 extension; deeper levels nest with '/'.
    std::string descriptor() const;

    friend bool operator==(const Field& a, const Field& b);
    friend bool operator!=(const Field& a, const Field& b) { return !(a == b); }

private:
    explicit Field(std::shared_ptr<const detail::FieldData> d) : d_(std::move(d)) {}
    std::shared_ptr<const detail::FieldData> d_;

    friend Field make_prime_field(std::uint64_t p);
    friend Field detail::build_extension(const Field&, const Poly&, bool);
};

/// F_p. Throws NotPrime.
Field make_prime_field(std::uint64_t p);

/// base[x]/(modulus). Throws NotMonic, Reducible, FieldMismatch, BoundExceeded.
Field make_extension(const Field& base, const Poly& modulus);

/// As make_extension, but trusts that the caller already proved irreducibility.
/// Used by the prime enumerator, which runs Rabin's test itself.
Field make_extension_preverified(const Field& base, const Poly& modulus);

/// Lexicographically smallest monic irreducible of degree k over F_p, comparing
/// (c_{k-1}, ..., c_0).
Poly default_modulus(std::uint64_t p, unsigned k);

/// Parses "p", "q", "p^k", optionally followed by ":<modulus>" (poly text over F_p).
Field parse_field(const std::string& descriptor);

bool is_prime_number(std::uint64_t n);

/// An element bundled with its field.
class FieldElement {
public:
    FieldElement(Field f, Elem code);

    const Field& field() const { return field_; }
    Elem code() const { return code_; }
    bool is_zero() const { return code_ == 0; }

    FieldElement inv() const { return {field_, field_.inv(code_)}; }
    FieldElement pow(std::uint64_t e) const { return {field_, field_.pow(code_, e)}; }

    friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator/(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator-(const FieldElement& a) { return {a.field_, a.field_.neg(a.code_)}; }
    friend bool operator==(const FieldElement& a, const FieldElement& b)
    {
        return a.code_ == b.code_ && a.field_ == b.field_;
    }

private:
    Field field_;
    Elem code_;
};

/// x^(base_order^i).
FieldElement frobenius(const FieldElement& x, unsigned i, std::uint64_t base_order);

} // namespace fqw

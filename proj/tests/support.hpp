#pragma once

// Shared helpers and independent oracles for the unit tests.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "fqw/gf.hpp"
#include "fqw/poly.hpp"

namespace fqw::test {

inline Poly P(const Field& f, const std::string& s) { return Poly::parse(f, s); }

inline Field F(const std::string& desc) { return parse_field(desc); }

/// Every polynomial over f of degree exactly deg with the given leading code.
inline std::vector<Poly> all_with_degree(const Field& f, unsigned deg, bool monic_only)
{
    std::vector<Poly> out;
    const std::uint64_t q = f.order();
    std::uint64_t n = 1;
    for (unsigned i = 0; i < deg; ++i)
        n *= q;
    for (Elem lead = 1; lead < q; ++lead) {
        if (monic_only && lead != 1)
            break;
        for (std::uint64_t idx = 0; idx < n; ++idx) {
            std::vector<Elem> c(deg + 1);
            std::uint64_t v = idx;
            for (unsigned j = 0; j < deg; ++j) {
                c[j] = static_cast<Elem>(v % q);
                v /= q;
            }
            c[deg] = lead;
            out.emplace_back(f, std::move(c));
        }
    }
    return out;
}

/// Schoolbook product straight from the definition.
inline Poly naive_mul(const Poly& a, const Poly& b)
{
    const Field& f = a.field();
    if (a.is_zero() || b.is_zero())
        return Poly(f);
    std::vector<Elem> c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            c[i + j] = f.add(c[i + j], f.mul(a.coeff(i), b.coeff(j)));
    return Poly(f, c);
}

/// Irreducibility by trial division with every monic polynomial of degree
/// 1..deg/2 (nothing shared with Rabin's test).
inline bool naive_irreducible(const Poly& f)
{
    const std::size_t d = f.degree().value();
    for (unsigned k = 1; 2 * k <= d; ++k)
        for (const Poly& g : all_with_degree(f.field(), k, true))
            if (divrem(f, g).rem.is_zero())
                return false;
    return true;
}

inline Poly random_poly(const Field& f, std::size_t len, std::mt19937_64& rng)
{
    std::vector<Elem> c(len);
    std::uniform_int_distribution<std::uint64_t> dist(0, f.order() - 1);
    for (auto& x : c)
        x = static_cast<Elem>(dist(rng));
    return Poly(f, c);
}

} // namespace fqw::test

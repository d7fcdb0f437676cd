#pragma once

// Carlitz quantities over A = F_q[t]:
//   [n] = t^{q^n} - t,  L_n = [n] L_{n-1},  D_n = [n] D_{n-1}^q,
//   F_d = product of the nonzero polynomials of degree < d = (-1)^d D_d / L_d.
// Exact values are dense and guarded by a degree bound; the *_mod variants
// reduce as they go and work at any n.

#include <cstdint>
#include <map>
#include <mutex>

#include "fqw/bignat.hpp"
#include "fqw/poly.hpp"

namespace fqw {

struct CarlitzBounds {
    /// Largest coefficient count of an exact [n], L_n, D_n, F_d.
    std::uint64_t exact_degree_guard = std::uint64_t{1} << 18;
    /// Largest q^d accepted by F_brute.
    std::uint64_t brute_bound = std::uint64_t{1} << 20;
    /// Largest q^d accepted by F_mod (one multiplication per factor).
    std::uint64_t fmod_bound = std::uint64_t{1} << 22;
};

enum class PerturbationKind { LMinusC, DPlusSignC };

/// deg L_n = q + q^2 + ... + q^n.
BigNat degree_L(std::uint64_t q, unsigned n);
/// deg D_n = n q^n.
BigNat degree_D(std::uint64_t q, unsigned n);

/// Memoized Carlitz quantities for one field. Internally synchronized.
class CarlitzCache {
public:
    explicit CarlitzCache(Field f, CarlitzBounds bounds = {});

    const Field& field() const { return field_; }
    const CarlitzBounds& bounds() const { return bounds_; }

    /// Throws BoundExceeded beyond the exact-degree guard (also for L, D, F).
    Poly bracket(unsigned n);
    Poly L(unsigned n);
    Poly D(unsigned n);
    /// (-1)^d D_d / L_d.
    Poly F(unsigned d);
    /// Literal product of the q^d - 1 nonzero polynomials of degree < d.
    Poly F_brute(unsigned d);
    /// The same product reduced mod m after every multiplication.
    Poly F_mod(unsigned d, const Poly& m);

    /// [n] mod m for any n.
    Poly bracket_mod(unsigned n, const Poly& m);
    Poly L_mod(unsigned n, const Poly& m);
    Poly D_mod(unsigned n, const Poly& m);

    /// -L'_{d-1}.
    Poly wilson_sum_poly(unsigned d);
    /// L_{d-1}/[1] + ... + L_{d-1}/[d-1], the same polynomial built as a sum.
    Poly wilson_sum_form(unsigned d);

    /// L_{d-1} - c, or D_{d-1} + (-1)^d c. Throws ZeroC for c = 0.
    Poly perturbation(PerturbationKind kind, unsigned d, Elem c);
    /// The same value reduced mod m, without forming the exact quantity.
    Poly perturbation_mod(PerturbationKind kind, unsigned d, Elem c, const Poly& m);

private:
    void guard(const BigNat& degree, const char* what) const;
    void check_modulus(const Poly& m) const;

    Field field_;
    CarlitzBounds bounds_;
    std::recursive_mutex mu_;
    std::map<unsigned, Poly> L_;
    std::map<unsigned, Poly> D_;
};

} // namespace fqw

#pragma once

// The three arithmetic derivatives on A = F_q[t] relative to a prime:
//   D(a)   = da/dt                           (poly::derivative)
//   Q(a)   = (a^{q^d} - a) / prime           (Fermat quotient)
//   a^[i]  = i-th divided difference at theta (Teichmueller difference quotient)
// plus their modular and iterated forms and the eight mixed second-order forms.

#include <map>
#include <string>
#include <variant>

#include "json.hpp"

#include "fqw/irr.hpp"
#include "fqw/poly.hpp"

namespace fqw {

/// Largest coefficient count an exact Fermat quotient may produce.
inline constexpr std::uint64_t kExactQuotientGuard = std::uint64_t{1} << 22;

/// Q(a) exactly. a may lie over F_q or over the residue field. Throws
/// BoundExceeded when deg(a) * q^d exceeds the guard.
Poly fermat_quotient(const Poly& a, const PrimeContext& ctx, std::uint64_t guard = kExactQuotientGuard);

/// Q(a) mod prime^k from a mod prime^{k+1}; degrees stay below (k+1)d.
Poly fermat_quotient_mod(const Poly& a, const PrimeContext& ctx, unsigned k);

/// i-fold Q. modulo_k == 0 selects the exact path; otherwise the result is
/// correct mod prime^modulo_k.
Poly fermat_quotient_iter(const Poly& a, const PrimeContext& ctx, unsigned i, unsigned modulo_k,
                          std::uint64_t guard = kExactQuotientGuard);

/// a^[i], a polynomial over the residue field.
Poly delta(const Poly& a, const PrimeContext& ctx, unsigned i);
/// a^[i](theta): the coefficient of (t - theta)^i in a.
FieldElement delta_at_theta(const Poly& a, const PrimeContext& ctx, unsigned i);

/// The mixed double derivatives of the prime.
enum class Mixed {
    I_II,        ///< d/dt Q(t) mod prime
    I_II_P,      ///< d/dt Q(t) at theta
    II_I,        ///< Q(prime') mod prime
    II_I_P,      ///< Q(prime') at theta
    I_III,       ///< d/dt prime^[1] at theta
    III_I,       ///< (prime')^[1] at theta
    II_III,      ///< Q(prime^[1]) at theta
    III_II,      ///< Q(t)^[1] at theta
};
inline constexpr Mixed kAllMixed[] = {Mixed::I_II,   Mixed::I_II_P, Mixed::II_I,   Mixed::II_I_P,
                                      Mixed::I_III,  Mixed::III_I,  Mixed::II_III, Mixed::III_II};

std::string label(Mixed m);

using DerivValue = std::variant<Poly, FieldElement>;

bool is_zero(const DerivValue& v);

/// Value of a mixed form. The modular path reduces every Fermat quotient
/// modulo prime^2 first; exact = true forms the full quotients instead (and
/// may throw BoundExceeded).
DerivValue mixed(Mixed form, const PrimeContext& ctx, bool exact = false,
                 std::uint64_t guard = kExactQuotientGuard);

struct DerivReport {
    PrimeContext context;
    Poly input;
    std::map<std::string, DerivValue> values;
};

/// D^i(a), Q^i(a) mod prime, a^[i](theta) for i = 1..order.
DerivReport deriv_report(const Poly& a, const PrimeContext& ctx, unsigned order);

nlohmann::json to_json(const DerivValue& v);
nlohmann::json to_json(const DerivReport& r);

} // namespace fqw

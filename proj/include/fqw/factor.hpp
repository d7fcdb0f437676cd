#pragma once

// Factorization over F_q: square-free decomposition, distinct-degree and
// equal-degree splitting, and a partial mode that only extracts small factors.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "json.hpp"

#include "fqw/poly.hpp"

namespace fqw {

struct FactorEntry {
    Poly base;
    unsigned mult;
    friend bool operator==(const FactorEntry&, const FactorEntry&) = default;
};

struct Factorization {
    FieldElement unit;
    std::vector<FactorEntry> factors;  ///< canonical order, distinct monic bases
    std::optional<Poly> cofactor;      ///< unsplit remainder of a partial run
    /// Irreducibility of the cofactor; nullopt when it was too large to check.
    std::optional<bool> cofactor_irreducible;

    /// unit * prod base^mult * cofactor.
    Poly reconstruct() const;
    bool complete() const { return !cofactor.has_value(); }
    /// (degree, multiplicity) per factor, in factor order.
    std::vector<std::pair<std::size_t, unsigned>> degree_profile() const;
};

/// Pairwise coprime square-free parts with distinct exponents, ascending.
std::vector<std::pair<Poly, unsigned>> squarefree_decomposition(const Poly& f);

/// For monic square-free f: (product of the irreducible factors of degree i, i).
std::vector<std::pair<Poly, unsigned>> ddf(const Poly& f);

/// Splits monic square-free f whose irreducible factors all have degree i.
/// Deterministic in (f, i, seed); result in canonical order.
std::vector<Poly> edf(const Poly& f, unsigned i, std::uint64_t seed);

/// Complete factorization; every base is checked with Rabin's test and the
/// product is checked against f.
Factorization factorize(const Poly& f, std::uint64_t seed = 0);

/// Default cofactor size up to which trial_division decides irreducibility.
inline constexpr std::size_t kCofactorCheckBound = 4096;

/// Extracts every irreducible factor of degree <= max_degree with its exact
/// multiplicity; the rest is left as the cofactor.
Factorization trial_division(const Poly& f, unsigned max_degree, std::uint64_t seed = 0,
                             std::size_t cofactor_check_bound = kCofactorCheckBound);

nlohmann::json to_json(const Factorization& fz);

} // namespace fqw

#pragma once

// Wieferich and Wilson primes of F_q[t], each tested through every equivalent
// condition, plus base classification, special Wilson primes and multiplicities.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "fqw/carlitz.hpp"
#include "fqw/irr.hpp"
#include "fqw/poly.hpp"

namespace fqw {

enum class SuiteKind { Wieferich, Wilson };

struct ConditionSuite {
    Poly prime;
    SuiteKind kind;
    std::optional<Poly> base;  ///< the base a, for Wieferich suites
    std::vector<std::pair<std::string, bool>> verdicts;  ///< evaluation order
    std::vector<std::string> skipped;
    /// p = 2 Wilson suites evaluate the definition only.
    bool definition_only = false;

    bool unanimous() const;
    /// The shared verdict; nullopt when nothing was evaluated.
    std::optional<bool> verdict() const;
    std::optional<bool> get(const std::string& label) const;
};

inline const std::vector<std::string> kWieferichLabels = {"def", "i", "i'", "ii", "ii'", "iii"};
inline const std::vector<std::string> kWilsonLabels = {"def",  "i",    "i'",    "i''",   "ii",
                                                       "ii'",  "iii",  "i-ii",  "i-ii'", "ii-i",
                                                       "ii-i'", "i-iii", "iii-i", "ii-iii", "iii-ii"};

/// All six conditions for `a` (over F_q). Throws EquivalenceViolation if they
/// disagree.
ConditionSuite wieferich_suite(const PrimeContext& ctx, const Poly& a);

struct WilsonOptions {
    /// Evaluate the definition (a product of q^d - 1 factors) only up to this q^d.
    std::uint64_t def_bound = std::uint64_t{1} << 22;
    /// Raise EquivalenceViolation on disagreement (p > 2 only).
    bool enforce = true;
};

/// All fifteen conditions for p > 2; the definition alone for p = 2.
ConditionSuite wilson_suite(const PrimeContext& ctx, CarlitzCache& cache, const WilsonOptions& opts = {});
/// The Wilson verdict through the second derivative (p > 2).
bool is_wilson_fast(const Poly& prime);

enum class BaseTag { AllPrimesWieferich, NoWieferichPrimes, Generic };
std::string to_string(BaseTag tag);

struct BaseClass {
    BaseTag tag;
    std::optional<Poly> b;  ///< a = b^p, or a = b^p + c t
    std::optional<Elem> c;
};

BaseClass classify_base(const Poly& a);

/// Coefficientwise p-th root when every exponent is a multiple of p.
std::optional<Poly> pth_root_if_power(const Poly& a);

struct Multiplicity {
    unsigned value;
    bool at_least;  ///< true when value is the cap and the true order may be higher
    friend bool operator==(const Multiplicity&, const Multiplicity&) = default;
};

/// Order of r at prime, where r is a value reduced mod prime^{cap+1}.
Multiplicity capped_valuation(const Poly& r, const Poly& prime, unsigned cap);

/// Largest k <= p + 2 with F_d = -1 mod prime^k.
Multiplicity wilson_multiplicity(const PrimeContext& ctx, CarlitzCache& cache);

/// Nonzero coefficients only at indices i with p | i or p | i - 1.
bool coefficient_characterization(const Poly& prime);

/// prime' = (-1)^{d-1} c, checked both as a derivative and as the shape
/// prime = a^p + (-1)^{d-1} c t. Throws ZeroC for c = 0.
bool is_special_wilson(const Poly& prime, Elem c);
inline bool is_special_wilson(const PrimeContext& ctx, Elem c) { return is_special_wilson(ctx.prime, c); }

/// Largest k with prime^k | f.
unsigned prime_valuation(const Poly& f, const Poly& prime);

nlohmann::json to_json(const ConditionSuite& s);
nlohmann::json to_json(const BaseClass& b);

} // namespace fqw

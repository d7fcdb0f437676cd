#pragma once

// Irreducibility (Rabin) and ordered enumeration of monic irreducibles.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "fqw/gf.hpp"
#include "fqw/poly.hpp"

namespace fqw {

namespace detail {
struct RabinKernel;
}

/// A monic prime of A = F_q[t] with its residue field F_q[x]/(prime) and the
/// class theta of x, a root of the prime.
struct PrimeContext {
    Poly prime;
    Field residue_field;
    FieldElement theta;
    std::uint64_t norm;  ///< q^d

    const Field& base_field() const { return prime.field(); }
    unsigned degree() const { return static_cast<unsigned>(prime.degree().value()); }
};

/// Builds the context for a monic irreducible. Throws NotMonic or Reducible.
PrimeContext make_prime_context(const Poly& prime);

/// Rabin's test. deg f >= 1 required.
bool is_irreducible(const Poly& f);

/// Number of monic irreducibles of degree d over a field of order q (Moebius
/// formula). Throws BoundExceeded if q^d overflows 64 bits.
std::uint64_t count_irreducibles(std::uint64_t q, unsigned d);
inline std::uint64_t count_irreducibles(const Field& f, unsigned d) { return count_irreducibles(f.order(), d); }

/// Monic degree-d candidate with index sum_j c_j q^j (c_j the code of the t^j
/// coefficient); ascending index is lexicographic order on (c_{d-1}, ..., c_0).
Poly monic_candidate(const Field& f, unsigned d, std::uint64_t index);

/// Restartable stream over the monic irreducibles of degree d in
/// lexicographic coefficient order.
class IrreducibleStream {
public:
    /// Scans candidate indices [start, end); end defaults to q^d.
    IrreducibleStream(Field f, unsigned d, std::uint64_t start = 0,
                      std::optional<std::uint64_t> end = std::nullopt);
    ~IrreducibleStream();
    IrreducibleStream(IrreducibleStream&&) noexcept;
    IrreducibleStream& operator=(IrreducibleStream&&) noexcept;

    std::optional<PrimeContext> next();
    /// Next irreducible without building its residue field.
    std::optional<Poly> next_poly();
    /// Next candidate index to be examined; pass it back as `start` to resume.
    std::uint64_t position() const { return pos_; }
    std::uint64_t end() const { return end_; }

private:
    Field field_;
    unsigned d_;
    std::uint64_t pos_;
    std::uint64_t end_;
    std::unique_ptr<detail::RabinKernel> kernel_;
};

/// All monic irreducibles of degree d, in stream order.
std::vector<PrimeContext> monic_irreducibles(const Field& f, unsigned d);
/// Same, as bare polynomials (cheaper: no residue fields built).
std::vector<Poly> monic_irreducible_polys(const Field& f, unsigned d);

} // namespace fqw

#pragma once

// Degree sweeps, factorization reports for the Carlitz quantities, gcd scans,
// residue distributions of Fermat quotients, and JSON-lines persistence.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "fqw/carlitz.hpp"
#include "fqw/congruence.hpp"
#include "fqw/factor.hpp"
#include "fqw/irr.hpp"

namespace fqw {

inline constexpr const char* kArtifactVersion = "1.0.0";
inline constexpr int kSchemaVersion = 1;

/// Degree-d primes of the shape a^p + (-1)^{d-1} c t, found by enumerating a.
std::vector<Poly> special_wilson_primes(const Field& f, unsigned d, Elem c);

/// (-1)^{d-1} c, the derivative of a special prime for c.
Elem special_derivative(const Field& f, unsigned d, Elem c);

struct SurveyOptions {
    /// The definition is checked on every prime while primes * q^d stays below this.
    std::uint64_t def_budget = std::uint64_t{1} << 22;
    /// Multiplicities of special and Wilson primes in the Carlitz quantities.
    bool multiplicities = true;
    bool timing = false;
    unsigned jobs = 1;
};

struct SpecialEntry {
    Poly prime;
    Multiplicity mult_L;  ///< in L_{d-1} - c
    Multiplicity mult_D;  ///< in D_{d-1} + (-1)^d c
    friend bool operator==(const SpecialEntry& a, const SpecialEntry& b);
};

struct WilsonEntry {
    Poly prime;
    /// Multiplicity in -L'_{d-1}; absent for p = 2 or when not requested.
    std::optional<Multiplicity> mult_sum;
    friend bool operator==(const WilsonEntry& a, const WilsonEntry& b);
};

enum class WilsonMethod { SecondDerivative, Definition, Skipped };
std::string to_string(WilsonMethod m);

struct SurveyRecord {
    explicit SurveyRecord(Field f, unsigned degree = 0) : field(std::move(f)), d(degree) {}

    Field field;
    unsigned d = 0;
    std::uint64_t prime_count = 0;
    std::uint64_t constant_derivative = 0;
    WilsonMethod wilson_method = WilsonMethod::Skipped;
    std::vector<WilsonEntry> wilson_primes;
    /// Whether the definition was evaluated on every prime.
    bool def_checked = false;
    /// Every evaluated suite was unanimous; nullopt when no suite ran.
    std::optional<bool> suite_agreement;
    std::map<Elem, std::vector<SpecialEntry>> special_primes;  ///< keyed by c in F_q^*
    /// Wall time, excluded from equality and only stored on request.
    std::optional<double> seconds;

    std::string key() const;
    friend bool operator==(const SurveyRecord& a, const SurveyRecord& b);
};

/// Enumerates all degree-d primes and records Wilson and special Wilson primes.
/// Throws TheoremViolation if a divisibility constraint on d fails and
/// EquivalenceViolation if two detection paths disagree.
SurveyRecord survey_degree(const Field& f, unsigned d, CarlitzCache& cache, const SurveyOptions& opts = {});

nlohmann::json to_json(const SurveyRecord& r);
SurveyRecord survey_record_from_json(const nlohmann::json& j);

/// Degree, multiplicity and how many factors share them.
struct DegreeClass {
    std::size_t degree;
    unsigned mult;
    std::size_t count;
    friend bool operator==(const DegreeClass&, const DegreeClass&) = default;
};

/// Descending by degree, then by multiplicity.
std::vector<DegreeClass> degree_multiset(const Factorization& fz);
std::string format_multiset(const std::vector<DegreeClass>& m);

struct Theorem5Report {
    Field field;
    unsigned d;
    std::size_t degree;
    Factorization factorization;
    std::vector<Poly> wilson_primes;  ///< second derivative zero, degree d
    std::vector<FactorEntry> degree_d_factors;
    std::vector<DegreeClass> multiset;
};

/// Factors -L'_{d-1} and compares its degree-d factors with the Wilson primes.
/// Requires p > 2. Throws EquivalenceViolation when the sets differ or a
/// multiplicity is below p - 2.
Theorem5Report theorem5_report(const Field& f, unsigned d, CarlitzCache& cache, std::uint64_t seed = 0);

nlohmann::json to_json(const Theorem5Report& r);

struct Theorem7Mode {
    bool full = true;
    unsigned max_degree = 0;  ///< trial-division bound when !full
    static Theorem7Mode Full() { return {true, 0}; }
    static Theorem7Mode Partial(unsigned max_degree) { return {false, max_degree}; }
};

struct Theorem7Report {
    Field field;
    unsigned d;
    Elem c;
    Theorem7Mode mode;
    Poly special_derivative;            ///< the constant (-1)^{d-1} c
    std::vector<Poly> special_primes;   ///< by shape
    std::size_t L_degree;
    Factorization L_factorization;      ///< complete, or partial with cofactor
    std::vector<FactorEntry> L_degree_d;
    std::vector<DegreeClass> L_other;   ///< factors of degree != d
    std::vector<FactorEntry> D_degree_d;
    /// Every L-multiplicity equals p - 1 (observation only).
    bool L_mult_exact;
};

/// Factors L_{d-1} - c (fully, or by trial division up to the mode's bound)
/// and extracts the degree-d primes of D_{d-1} + (-1)^d c through a gcd with
/// [d]. Throws ZeroC, EquivalenceViolation.
Theorem7Report theorem7_report(const Field& f, unsigned d, Elem c, Theorem7Mode mode, CarlitzCache& cache,
                               std::uint64_t seed = 0);

nlohmann::json to_json(const Theorem7Report& r);

enum class ScanKind { Borisov, AltConjecture };

struct ScanFinding {
    ScanKind kind;
    std::uint64_t q;
    unsigned d;
    Elem c;  ///< 0 for the alternating-sum scan
    Poly gcd;
    bool violates_expectation;
};

/// gcd(L_{d-1} + c, [d]) for 2 <= d <= d_max and every c != 0; returns the
/// nontrivial ones. Throws TheoremViolation on a nontrivial gcd with p not
/// dividing d.
std::vector<ScanFinding> borisov_scan(const Field& f, unsigned d_max, CarlitzCache& cache);

/// sum_{j<d} (-1)^j [d-1]...[d-j] mod [d].
Poly alternating_sum_mod_bracket(CarlitzCache& cache, unsigned d);

/// gcd([d], alternating sum) for 2 <= d <= d_max; returns the nontrivial ones
/// and flags those with p not dividing d. Never throws on a finding. p > 2.
std::vector<ScanFinding> alt_gcd_conjecture_scan(const Field& f, unsigned d_max, CarlitzCache& cache);

nlohmann::json to_json(const ScanFinding& s);

struct Distribution {
    std::map<Elem, std::uint64_t> histogram;  ///< residue code -> count
    std::uint64_t bases = 0;
};

/// Histogram of Q(a)(theta) over a of degree < degree_bound (monic, or all
/// including zero). Throws BudgetExceeded when bases * q^d exceeds budget.
Distribution fq_distribution(const PrimeContext& ctx, unsigned degree_bound, bool monic_only = true,
                             std::uint64_t budget = std::uint64_t{1} << 26);

nlohmann::json to_json(const Distribution& d, const Field& residue);

struct ArtinSchreierCase {
    std::uint32_t p;
    Elem m;
    Poly prime;
    bool irreducible;
    bool wilson;  ///< all fifteen conditions true
    Multiplicity multiplicity;
    std::vector<std::pair<std::string, bool>> checks;  ///< the nine hand computations
    bool passed() const;
};

/// Every t^p - t - m over F_p, m != 0.
std::vector<ArtinSchreierCase> artin_schreier_report(std::uint32_t p, CarlitzCache& cache);

nlohmann::json to_json(const ArtinSchreierCase& c);

// Persistence: a header line, then one record per line.

struct SurveyHeader {
    int schema_version = kSchemaVersion;
    std::string artifact_version = kArtifactVersion;
    std::uint64_t seed = 0;
};

struct SurveyFile {
    SurveyHeader header;
    std::vector<SurveyRecord> records;
};

/// Writes header and records. Throws IoError.
void persist(const std::filesystem::path& path, const SurveyHeader& header, const std::vector<SurveyRecord>& records);
/// Throws IoError, SchemaVersionMismatch (with the line number).
SurveyFile load(const std::filesystem::path& path);

struct ResumeStats {
    std::size_t computed = 0;
    std::size_t reused = 0;
};

/// Surveys each degree, reusing records already in `path` and appending new
/// ones. Returns the records in degree order.
std::vector<SurveyRecord> resume_survey(const std::filesystem::path& path, const Field& f,
                                        const std::vector<unsigned>& degrees, CarlitzCache& cache,
                                        const SurveyOptions& opts, std::uint64_t seed, ResumeStats* stats = nullptr);

/// q, d, primes, wilson, special_c1 .. special_c{q-1}.
std::string to_csv(const std::vector<SurveyRecord>& records);

} // namespace fqw

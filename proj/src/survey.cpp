#include "fqw/survey.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include <fmt/format.h>

#include "fqw/deriv.hpp"
#include "fqw/errors.hpp"

namespace fqw {

namespace {

template <class Fn>
void parallel_for(std::size_t n, unsigned jobs, Fn fn)
{
    const std::size_t workers = std::min<std::size_t>(std::max(1u, jobs), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i)
            fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr err;
    std::mutex mu;
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next++;
                if (i >= n)
                    return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(mu);
                    if (!err)
                        err = std::current_exception();
                    next = n;
                }
            }
        });
    for (auto& t : pool)
        t.join();
    if (err)
        std::rethrow_exception(err);
}

std::uint64_t checked_power(std::uint64_t q, unsigned e, std::uint64_t limit, const char* what)
{
    std::uint64_t v = 1;
    for (unsigned i = 0; i < e; ++i) {
        if (v > limit / q)
            throw BoundExceeded(fmt::format("{}: {}^{} exceeds {}", what, q, e, limit));
        v *= q;
    }
    return v;
}

std::vector<Poly> sorted(std::vector<Poly> v)
{
    std::sort(v.begin(), v.end(), canonical_less);
    return v;
}

std::vector<Poly> bases_of(const std::vector<FactorEntry>& v)
{
    std::vector<Poly> out;
    for (const auto& e : v)
        out.push_back(e.base);
    return sorted(std::move(out));
}

std::string poly_list(const std::vector<Poly>& v)
{
    std::string s;
    for (const auto& p : v)
        s += (s.empty() ? "" : ", ") + p.to_string();
    return "{" + s + "}";
}

// -L'_{d-1} = sum_i prod_{j != i} [j], reduced mod m.
Poly wilson_sum_mod(CarlitzCache& cache, unsigned d, const Poly& m)
{
    const Field& f = cache.field();
    if (d < 2)
        return Poly(f);
    std::vector<Poly> b;
    for (unsigned i = 1; i < d; ++i)
        b.push_back(cache.bracket_mod(i, m));
    const std::size_t n = b.size();
    std::vector<Poly> suffix(n + 1, rem(Poly::constant(f, 1), m));
    for (std::size_t i = n; i-- > 0;)
        suffix[i] = mulmod(b[i], suffix[i + 1], m);
    Poly prefix = rem(Poly::constant(f, 1), m);
    Poly sum(f);
    for (std::size_t i = 0; i < n; ++i) {
        sum += mulmod(prefix, suffix[i + 1], m);
        prefix = mulmod(prefix, b[i], m);
    }
    return rem(sum, m);
}

// Degree-d primes dividing the perturbation, from its gcd with [d].
std::vector<Poly> degree_d_divisors(CarlitzCache& cache, PerturbationKind kind, unsigned d, Elem c,
                                    std::uint64_t seed)
{
    const Field& f = cache.field();
    const std::uint64_t n = checked_power(f.order(), d, cache.bounds().exact_degree_guard, "[d]");
    const Poly bracket = Poly::monomial(f, 1, n) - Poly::t(f);
    const Poly g = gcd(cache.perturbation_mod(kind, d, c, bracket), bracket);
    for (const auto& [block, deg] : ddf(g))
        if (deg == d)
            return edf(block, d, seed);
    return {};
}

nlohmann::json mult_json(const Multiplicity& m) { return {{"value", m.value}, {"at_least", m.at_least}}; }

Multiplicity mult_from_json(const nlohmann::json& j)
{
    return {j.at("value").get<unsigned>(), j.at("at_least").get<bool>()};
}

nlohmann::json entries_json(const std::vector<FactorEntry>& v)
{
    auto j = nlohmann::json::array();
    for (const auto& [base, mult] : v)
        j.push_back({{"poly", base.to_string()}, {"mult", mult}});
    return j;
}

nlohmann::json multiset_json(const std::vector<DegreeClass>& m)
{
    auto j = nlohmann::json::array();
    for (const auto& c : m)
        j.push_back({{"degree", c.degree}, {"mult", c.mult}, {"count", c.count}});
    return j;
}

nlohmann::json polys_json(const std::vector<Poly>& v)
{
    auto j = nlohmann::json::array();
    for (const auto& p : v)
        j.push_back(p.to_string());
    return j;
}

std::vector<DegreeClass> multiset_of(const std::vector<FactorEntry>& v)
{
    std::map<std::pair<std::size_t, unsigned>, std::size_t, std::greater<>> m;
    for (const auto& [base, mult] : v)
        ++m[{base.degree().value(), mult}];
    std::vector<DegreeClass> out;
    for (const auto& [k, n] : m)
        out.push_back({k.first, k.second, n});
    return out;
}

} // namespace

Elem special_derivative(const Field& f, unsigned d, Elem c) { return (d - 1) % 2 ? f.neg(c) : c; }

std::vector<Poly> special_wilson_primes(const Field& f, unsigned d, Elem c)
{
    if (c == 0)
        throw ZeroC("special Wilson constant must be nonzero");
    if (d == 0)
        throw Error("degree must be >= 1");
    const Elem target = special_derivative(f, d, c);
    std::vector<Poly> out;
    if (d == 1) {
        if (target == 1)
            for (Elem b = 0; b < f.order(); ++b)
                out.push_back(Poly(f, {b, 1}));
        return sorted(std::move(out));
    }
    const std::uint32_t p = f.characteristic();
    if (d % p)
        return out;
    const unsigned k = d / p;
    const std::uint64_t n = checked_power(f.order(), k, std::uint64_t{1} << 32, "special candidates");
    const Poly lin = Poly::monomial(f, target, 1);
    for (std::uint64_t idx = 0; idx < n; ++idx) {
        const Poly cand = pow(monic_candidate(f, k, idx), p) + lin;
        if (is_irreducible(cand))
            out.push_back(cand);
    }
    return sorted(std::move(out));
}

bool operator==(const SpecialEntry& a, const SpecialEntry& b)
{
    return a.prime == b.prime && a.mult_L == b.mult_L && a.mult_D == b.mult_D;
}

bool operator==(const WilsonEntry& a, const WilsonEntry& b) { return a.prime == b.prime && a.mult_sum == b.mult_sum; }

std::string to_string(WilsonMethod m)
{
    switch (m) {
    case WilsonMethod::SecondDerivative: return "second-derivative";
    case WilsonMethod::Definition: return "definition";
    case WilsonMethod::Skipped: return "skipped";
    }
    return "?";
}

std::string SurveyRecord::key() const { return fmt::format("{}|{}", field.descriptor(), d); }

bool operator==(const SurveyRecord& a, const SurveyRecord& b)
{
    return a.field == b.field && a.d == b.d && a.prime_count == b.prime_count &&
           a.constant_derivative == b.constant_derivative && a.wilson_method == b.wilson_method &&
           a.wilson_primes == b.wilson_primes && a.def_checked == b.def_checked &&
           a.suite_agreement == b.suite_agreement && a.special_primes == b.special_primes;
}

SurveyRecord survey_degree(const Field& f, unsigned d, CarlitzCache& cache, const SurveyOptions& opts)
{
    if (d == 0)
        throw Error("degree must be >= 1");
    if (cache.field() != f)
        throw FieldMismatch("Carlitz cache is over a different field");
    const auto t0 = std::chrono::steady_clock::now();
    const std::uint32_t p = f.characteristic();
    const unsigned cap = p + 2;

    const std::vector<Poly> primes = monic_irreducible_polys(f, d);
    SurveyRecord rec{f, d};
    rec.prime_count = primes.size();
    if (rec.prime_count != count_irreducibles(f, d))
        throw Error("internal error: enumeration disagrees with the Moebius count");

    long double work = static_cast<long double>(primes.size());
    for (unsigned i = 0; i < d; ++i)
        work *= static_cast<long double>(f.order());
    const bool run_def = work <= static_cast<long double>(opts.def_budget);
    rec.def_checked = run_def;
    rec.wilson_method = p > 2 ? WilsonMethod::SecondDerivative
                              : (run_def ? WilsonMethod::Definition : WilsonMethod::Skipped);

    struct Result {
        bool wilson = false;
        std::optional<Multiplicity> mult_sum;
        std::optional<Elem> special_c;
        Multiplicity mult_L{0, false};
        Multiplicity mult_D{0, false};
    };
    std::vector<Result> results(primes.size());
    parallel_for(primes.size(), opts.jobs, [&](std::size_t i) {
        const Poly& P = primes[i];
        Result& r = results[i];
        const Poly dp = derivative(P);
        if (!dp.is_zero() && dp.is_constant()) {
            r.special_c = special_derivative(f, d, dp.coeff(0));
            if (!is_special_wilson(P, *r.special_c))
                throw EquivalenceViolation("constant derivative without the special shape: " + P.to_string());
        }
        if (p > 2)
            r.wilson = derivative(P, 2).is_zero();
        if (run_def) {
            const ConditionSuite s = wilson_suite(make_prime_context(P), cache);
            if (p == 2)
                r.wilson = *s.verdict();
            else if (*s.verdict() != r.wilson)
                throw EquivalenceViolation("Wilson suite disagrees with the second derivative at " + P.to_string());
        }
        if (!opts.multiplicities)
            return;
        const bool need_sum = r.wilson && p > 2;
        if (!need_sum && !r.special_c)
            return;
        const Poly m = pow(P, cap + 1);
        if (need_sum)
            r.mult_sum = capped_valuation(wilson_sum_mod(cache, d, m), P, cap);
        if (r.special_c) {
            if (d == 1) {
                // L_0 - 1 = D_0 - 1 = 0.
                r.mult_L = r.mult_D = {cap, true};
            } else {
                r.mult_L = capped_valuation(cache.perturbation_mod(PerturbationKind::LMinusC, d, *r.special_c, m), P, cap);
                r.mult_D =
                    capped_valuation(cache.perturbation_mod(PerturbationKind::DPlusSignC, d, *r.special_c, m), P, cap);
            }
        }
    });

    for (Elem c = 1; c < f.order(); ++c)
        rec.special_primes[c];
    for (std::size_t i = 0; i < primes.size(); ++i) {
        const Result& r = results[i];
        if (r.wilson)
            rec.wilson_primes.push_back({primes[i], r.mult_sum});
        if (r.special_c) {
            ++rec.constant_derivative;
            rec.special_primes[*r.special_c].push_back({primes[i], r.mult_L, r.mult_D});
        }
    }
    if (run_def)
        rec.suite_agreement = true;

    if (d > 1 && d % p != 0 && rec.constant_derivative > 0)
        throw TheoremViolation(fmt::format("special Wilson prime of degree {} with p = {} not dividing d", d, p));
    if (p > 2 && !rec.wilson_primes.empty() && d % p != 0 && (d - 1) % p != 0)
        throw TheoremViolation(fmt::format("Wilson prime of degree {} with p = {} dividing neither d nor d - 1", d, p));
    for (Elem c = 1; c < f.order(); ++c) {
        std::vector<Poly> found;
        for (const auto& e : rec.special_primes[c])
            found.push_back(e.prime);
        if (sorted(found) != special_wilson_primes(f, d, c))
            throw EquivalenceViolation(fmt::format("special Wilson primes for c = {} differ between enumerations", c));
    }
    if (opts.timing)
        rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rec;
}

nlohmann::json to_json(const SurveyRecord& r)
{
    nlohmann::json j;
    j["field"] = r.field.descriptor();
    j["q"] = r.field.order();
    j["d"] = r.d;
    j["prime_count"] = r.prime_count;
    j["constant_derivative"] = r.constant_derivative;
    j["wilson_method"] = to_string(r.wilson_method);
    j["wilson_count"] = r.wilson_primes.size();
    auto w = nlohmann::json::array();
    for (const auto& e : r.wilson_primes)
        w.push_back({{"prime", e.prime.to_string()}, {"mult_sum", e.mult_sum ? mult_json(*e.mult_sum) : nullptr}});
    j["wilson_primes"] = w;
    j["def_checked"] = r.def_checked;
    j["suite_agreement"] = r.suite_agreement ? nlohmann::json(*r.suite_agreement) : nlohmann::json(nullptr);
    auto s = nlohmann::json::object();
    for (const auto& [c, v] : r.special_primes) {
        auto a = nlohmann::json::array();
        for (const auto& e : v)
            a.push_back({{"prime", e.prime.to_string()}, {"mult_L", mult_json(e.mult_L)}, {"mult_D", mult_json(e.mult_D)}});
        s[std::to_string(c)] = a;
    }
    j["special_primes"] = s;
    if (r.seconds)
        j["seconds"] = *r.seconds;
    return j;
}

SurveyRecord survey_record_from_json(const nlohmann::json& j)
{
    SurveyRecord r{parse_field(j.at("field").get<std::string>())};
    const Field& f = r.field;
    r.d = j.at("d").get<unsigned>();
    r.prime_count = j.at("prime_count").get<std::uint64_t>();
    r.constant_derivative = j.at("constant_derivative").get<std::uint64_t>();
    const auto method = j.at("wilson_method").get<std::string>();
    if (method == "second-derivative")
        r.wilson_method = WilsonMethod::SecondDerivative;
    else if (method == "definition")
        r.wilson_method = WilsonMethod::Definition;
    else if (method == "skipped")
        r.wilson_method = WilsonMethod::Skipped;
    else
        throw ParseError("unknown wilson_method '" + method + "'");
    for (const auto& e : j.at("wilson_primes")) {
        WilsonEntry w{Poly::parse(f, e.at("prime").get<std::string>()), std::nullopt};
        if (!e.at("mult_sum").is_null())
            w.mult_sum = mult_from_json(e.at("mult_sum"));
        r.wilson_primes.push_back(std::move(w));
    }
    r.def_checked = j.at("def_checked").get<bool>();
    if (!j.at("suite_agreement").is_null())
        r.suite_agreement = j.at("suite_agreement").get<bool>();
    for (const auto& [c, v] : j.at("special_primes").items()) {
        auto& list = r.special_primes[static_cast<Elem>(std::stoul(c))];
        for (const auto& e : v)
            list.push_back({Poly::parse(f, e.at("prime").get<std::string>()), mult_from_json(e.at("mult_L")),
                            mult_from_json(e.at("mult_D"))});
    }
    if (j.contains("seconds"))
        r.seconds = j.at("seconds").get<double>();
    return r;
}

std::vector<DegreeClass> degree_multiset(const Factorization& fz) { return multiset_of(fz.factors); }

std::string format_multiset(const std::vector<DegreeClass>& m)
{
    std::string s;
    for (const auto& c : m) {
        if (!s.empty())
            s += ", ";
        s += fmt::format("{}x{}", c.degree, c.count);
        if (c.mult != 1)
            s += fmt::format(" (mult {})", c.mult);
    }
    return "{" + s + "}";
}

Theorem5Report theorem5_report(const Field& f, unsigned d, CarlitzCache& cache, std::uint64_t seed)
{
    const std::uint32_t p = f.characteristic();
    if (p == 2)
        throw Error("the Wilson-sum factorization statement needs p > 2");
    if (d < 2)
        throw Error("degree must be >= 2");
    const Poly w = cache.wilson_sum_poly(d);
    Theorem5Report r{f, d, w.is_zero() ? 0 : w.degree().value(), factorize(w, seed), {}, {}, {}};
    for (const Poly& P : monic_irreducible_polys(f, d))
        if (derivative(P, 2).is_zero())
            r.wilson_primes.push_back(P);
    r.wilson_primes = sorted(std::move(r.wilson_primes));
    for (const auto& e : r.factorization.factors)
        if (e.base.degree().value() == d)
            r.degree_d_factors.push_back(e);
    const auto found = bases_of(r.degree_d_factors);
    if (found != r.wilson_primes)
        throw EquivalenceViolation(fmt::format("degree-{} factors {} differ from the Wilson primes {}", d,
                                               poly_list(found), poly_list(r.wilson_primes)));
    for (const auto& e : r.degree_d_factors)
        if (e.mult + 2 < p)
            throw EquivalenceViolation(fmt::format("Wilson prime {} has multiplicity {} < p - 2", e.base.to_string(), e.mult));
    r.multiset = degree_multiset(r.factorization);
    return r;
}

nlohmann::json to_json(const Theorem5Report& r)
{
    nlohmann::json j;
    j["field"] = r.field.descriptor();
    j["d"] = r.d;
    j["degree"] = r.degree;
    j["wilson_primes"] = polys_json(r.wilson_primes);
    j["degree_d_factors"] = entries_json(r.degree_d_factors);
    j["multiset"] = multiset_json(r.multiset);
    j["factorization"] = to_json(r.factorization);
    return j;
}

Theorem7Report theorem7_report(const Field& f, unsigned d, Elem c, Theorem7Mode mode, CarlitzCache& cache,
                               std::uint64_t seed)
{
    if (c == 0)
        throw ZeroC("special Wilson constant must be nonzero");
    if (d < 2)
        throw Error("degree must be >= 2");
    if (!mode.full && mode.max_degree < d)
        throw Error(fmt::format("trial-division bound {} is below the degree {}", mode.max_degree, d));
    const std::uint32_t p = f.characteristic();
    const Elem target = special_derivative(f, d, c);
    const Poly lp = cache.perturbation(PerturbationKind::LMinusC, d, c);
    Theorem7Report r{f,
                     d,
                     c,
                     mode,
                     Poly::constant(f, target),
                     special_wilson_primes(f, d, c),
                     lp.degree().value(),
                     mode.full ? factorize(lp, seed) : trial_division(lp, mode.max_degree, seed),
                     {},
                     {},
                     {},
                     true};
    std::vector<FactorEntry> other;
    for (const auto& e : r.L_factorization.factors)
        (e.base.degree().value() == d ? r.L_degree_d : other).push_back(e);
    r.L_other = multiset_of(other);

    const auto from_fz = bases_of(r.L_degree_d);
    if (from_fz != r.special_primes)
        throw EquivalenceViolation(fmt::format("degree-{} factors of L_{} - c are {}, special primes are {}", d, d - 1,
                                               poly_list(from_fz), poly_list(r.special_primes)));
    if (sorted(degree_d_divisors(cache, PerturbationKind::LMinusC, d, c, seed)) != from_fz)
        throw EquivalenceViolation("gcd with [d] disagrees with the factorization of L_{d-1} - c");
    for (const auto& e : r.L_degree_d) {
        if (e.mult + 1 < p)
            throw EquivalenceViolation(fmt::format("{} divides L_{} - c only {} times", e.base.to_string(), d - 1, e.mult));
        r.L_mult_exact = r.L_mult_exact && e.mult + 1 == p;
    }

    const auto dprimes = sorted(degree_d_divisors(cache, PerturbationKind::DPlusSignC, d, c, seed));
    if (dprimes != r.special_primes)
        throw EquivalenceViolation(fmt::format("degree-{} primes of D_{} + (-1)^d c are {}, special primes are {}", d,
                                               d - 1, poly_list(dprimes), poly_list(r.special_primes)));
    for (const Poly& P : dprimes) {
        const Poly m = pow(P, 3);
        const auto mult =
            capped_valuation(cache.perturbation_mod(PerturbationKind::DPlusSignC, d, c, m), P, 2);
        if (mult.value != 1 || mult.at_least)
            throw EquivalenceViolation(fmt::format("{} divides D_{} + (-1)^d c more than once", P.to_string(), d - 1));
        r.D_degree_d.push_back({P, 1});
    }
    return r;
}

nlohmann::json to_json(const Theorem7Report& r)
{
    nlohmann::json j;
    j["field"] = r.field.descriptor();
    j["d"] = r.d;
    j["c"] = r.c;
    j["mode"] = r.mode.full ? "full" : fmt::format("partial({})", r.mode.max_degree);
    j["special_derivative"] = r.special_derivative.to_string();
    j["special_primes"] = polys_json(r.special_primes);
    j["L_degree"] = r.L_degree;
    j["L_degree_d"] = entries_json(r.L_degree_d);
    j["L_other"] = multiset_json(r.L_other);
    j["L_mult_exact"] = r.L_mult_exact;
    j["L_factorization"] = to_json(r.L_factorization);
    if (r.L_factorization.cofactor)
        j["L_cofactor_degree"] = r.L_factorization.cofactor->degree().value();
    j["D_degree_d"] = entries_json(r.D_degree_d);
    return j;
}

std::vector<ScanFinding> borisov_scan(const Field& f, unsigned d_max, CarlitzCache& cache)
{
    if (d_max < 2)
        throw Error("borisov_scan needs d_max >= 2");
    const std::uint32_t p = f.characteristic();
    std::vector<ScanFinding> out;
    for (unsigned d = 2; d <= d_max; ++d) {
        const std::uint64_t n = checked_power(f.order(), d, cache.bounds().exact_degree_guard, "[d]");
        const Poly bracket = Poly::monomial(f, 1, n) - Poly::t(f);
        const Poly l = cache.L_mod(d - 1, bracket);
        for (Elem c = 1; c < f.order(); ++c) {
            const Poly op = l + Poly::constant(f, c);
            const Poly g = gcd(op, bracket);
            if (!rem(bracket, g).is_zero() || !rem(rem(op, bracket), g).is_zero())
                throw Error("internal error: gcd does not divide its operands");
            if (g.is_one())
                continue;
            ScanFinding s{ScanKind::Borisov, f.order(), d, c, g, d % p != 0};
            if (s.violates_expectation)
                throw TheoremViolation(fmt::format("gcd(L_{} + {}, [{}]) = {} although p = {} does not divide d", d - 1,
                                                   c, d, g.to_string(), p));
            out.push_back(std::move(s));
        }
    }
    return out;
}

Poly alternating_sum_mod_bracket(CarlitzCache& cache, unsigned d)
{
    const Field& f = cache.field();
    if (d < 1)
        throw Error("degree must be >= 1");
    const std::uint64_t n = checked_power(f.order(), d, cache.bounds().exact_degree_guard, "[d]");
    const Poly bracket = Poly::monomial(f, 1, n) - Poly::t(f);
    Poly term = Poly::constant(f, 1);
    Poly sum = term;
    for (unsigned j = 1; j < d; ++j) {
        term = -mulmod(term, cache.bracket_mod(d - j, bracket), bracket);
        sum += term;
    }
    return rem(sum, bracket);
}

std::vector<ScanFinding> alt_gcd_conjecture_scan(const Field& f, unsigned d_max, CarlitzCache& cache)
{
    const std::uint32_t p = f.characteristic();
    if (p == 2)
        throw Error("the alternating-sum scan needs p > 2");
    std::vector<ScanFinding> out;
    for (unsigned d = 2; d <= d_max; ++d) {
        const std::uint64_t n = checked_power(f.order(), d, cache.bounds().exact_degree_guard, "[d]");
        const Poly bracket = Poly::monomial(f, 1, n) - Poly::t(f);
        const Poly s = alternating_sum_mod_bracket(cache, d);
        const Poly g = gcd(s, bracket);
        if (!rem(bracket, g).is_zero() || !rem(s, g).is_zero())
            throw Error("internal error: gcd does not divide its operands");
        if (!g.is_one())
            out.push_back({ScanKind::AltConjecture, f.order(), d, 0, g, d % p != 0});
    }
    return out;
}

nlohmann::json to_json(const ScanFinding& s)
{
    return {{"kind", s.kind == ScanKind::Borisov ? "borisov_gcd" : "alt_gcd_conjecture"},
            {"q", s.q},
            {"d", s.d},
            {"c", s.c},
            {"gcd", s.gcd.to_string()},
            {"gcd_degree", s.gcd.degree().value()},
            {"violates_expectation", s.violates_expectation}};
}

Distribution fq_distribution(const PrimeContext& ctx, unsigned degree_bound, bool monic_only, std::uint64_t budget)
{
    const Field& f = ctx.base_field();
    const std::uint64_t q = f.order();
    long double count = 0;
    long double qk = 1;
    for (unsigned k = 0; k < degree_bound; ++k) {
        count += monic_only ? qk : 0;
        qk *= static_cast<long double>(q);
    }
    if (!monic_only)
        count = qk;
    if (count * static_cast<long double>(ctx.norm) > static_cast<long double>(budget))
        throw BudgetExceeded(fmt::format("{} bases at norm {} exceed the budget {}", static_cast<double>(count),
                                         ctx.norm, budget));
    Distribution out;
    auto add = [&](const Poly& a) {
        ++out.histogram[eval(fermat_quotient_mod(a, ctx, 1), ctx.theta).code()];
        ++out.bases;
    };
    if (monic_only) {
        std::uint64_t n = 1;
        for (unsigned k = 0; k < degree_bound; ++k, n *= q)
            for (std::uint64_t idx = 0; idx < n; ++idx)
                add(monic_candidate(f, k, idx));
    } else {
        const std::uint64_t n = static_cast<std::uint64_t>(count);
        std::vector<Elem> c(degree_bound);
        for (std::uint64_t idx = 0; idx < n; ++idx) {
            std::uint64_t v = idx;
            for (unsigned j = 0; j < degree_bound; ++j) {
                c[j] = static_cast<Elem>(v % q);
                v /= q;
            }
            add(Poly(f, c));
        }
    }
    return out;
}

nlohmann::json to_json(const Distribution& d, const Field& residue)
{
    nlohmann::json j;
    j["field"] = residue.descriptor();
    j["bases"] = d.bases;
    auto h = nlohmann::json::object();
    for (const auto& [code, n] : d.histogram)
        h[std::to_string(code)] = n;
    j["histogram"] = h;
    return j;
}

bool ArtinSchreierCase::passed() const
{
    if (!irreducible || !wilson || multiplicity.value + 1 < p)
        return false;
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.second; });
}

std::vector<ArtinSchreierCase> artin_schreier_report(std::uint32_t p, CarlitzCache& cache)
{
    const Field f = make_prime_field(p);
    if (p == 2)
        throw Error("the Artin-Schreier family is examined for p > 2");
    if (cache.field() != f)
        throw FieldMismatch("Carlitz cache is over a different field");
    std::vector<ArtinSchreierCase> out;
    const Poly t = Poly::t(f);
    for (Elem m = 1; m < p; ++m) {
        const Poly P = Poly::monomial(f, 1, p) - t - Poly::constant(f, m);
        ArtinSchreierCase r{p, m, P, is_irreducible(P), false, {0, false}, {}};
        if (!r.irreducible) {
            out.push_back(std::move(r));
            continue;
        }
        const PrimeContext ctx = make_prime_context(P);
        const Field& e = ctx.residue_field;
        const ConditionSuite s = wilson_suite(ctx, cache);
        r.wilson = s.unanimous() && *s.verdict();
        r.multiplicity = wilson_multiplicity(ctx, cache);

        const Poly lin(e, {e.neg(ctx.theta.code()), 1});
        const Poly one_e = Poly::constant(e, 1);
        auto zero = [&](Mixed form) { return is_zero(mixed(form, ctx)); };
        auto divisible = [&](const Poly& a, unsigned k) { return a.is_zero() || valuation(a, lin, k) >= k; };

        // (i): P' = -1 and P'' = 0.
        r.checks.emplace_back("i", derivative(P) == Poly::constant(f, f.neg(1)) && derivative(P, 2).is_zero());
        // (iii): P^[1] = (t - theta)^{p-1} - 1 and P^[2] = (t - theta)^{p-2}.
        const Poly d1 = delta(P, ctx, 1);
        r.checks.emplace_back("iii", d1 == pow(lin, p - 1) - one_e && delta(P, ctx, 2) == pow(lin, p - 2));
        // (ii): Q(t) = sum_{j<p} P^{p^j - 1} and P^{p-2} divides Q^2(t).
        const Poly qt = fermat_quotient(t, ctx);
        Poly expansion(f);
        std::uint64_t pj = 1;
        for (unsigned j = 0; j < p; ++j, pj *= p)
            expansion += pow(P, pj - 1);
        r.checks.emplace_back("ii", qt == expansion && fermat_quotient_iter(t, ctx, 2, p - 2).is_zero());
        // (i-ii): Q(t) = 1 mod P^{p-1}.
        r.checks.emplace_back("i-ii", rem(qt, pow(P, p - 1)).is_one() && zero(Mixed::I_II));
        // (ii-i): Q(P') = Q(-1) = 0.
        r.checks.emplace_back("ii-i", fermat_quotient(derivative(P), ctx).is_zero() && zero(Mixed::II_I));
        // (i-iii): d/dt P^[1] = (p - 1)(t - theta)^{p-2}.
        r.checks.emplace_back("i-iii", derivative(d1) == Poly::constant(e, e.from_int(p - 1)) * pow(lin, p - 2) &&
                                           zero(Mixed::I_III));
        // (iii-i): (P')^[1] = 0.
        r.checks.emplace_back("iii-i", delta(derivative(P), ctx, 1).is_zero() && zero(Mixed::III_I));
        // (ii-iii): (t - theta)^{p-2} divides Q(P^[1]).
        r.checks.emplace_back("ii-iii", divisible(fermat_quotient(d1, ctx), p - 2) && zero(Mixed::II_III));
        // (iii-ii): Q(t)^[1] = (Q(t) - 1)/(t - theta), divisible by (t - theta)^{p-2}.
        const Poly qd = delta(qt, ctx, 1);
        r.checks.emplace_back("iii-ii", qd == exact_div(embed(qt, e) - one_e, lin) && divisible(qd, p - 2) &&
                                            zero(Mixed::III_II));
        out.push_back(std::move(r));
    }
    return out;
}

nlohmann::json to_json(const ArtinSchreierCase& c)
{
    nlohmann::json j;
    j["p"] = c.p;
    j["m"] = c.m;
    j["prime"] = c.prime.to_string();
    j["irreducible"] = c.irreducible;
    j["wilson"] = c.wilson;
    j["multiplicity"] = mult_json(c.multiplicity);
    auto checks = nlohmann::json::object();
    for (const auto& [k, v] : c.checks)
        checks[k] = v;
    j["checks"] = checks;
    j["passed"] = c.passed();
    return j;
}

namespace {

nlohmann::json header_json(const SurveyHeader& h)
{
    return {{"schema", "fqw-survey"},
            {"schema_version", h.schema_version},
            {"artifact_version", h.artifact_version},
            {"seed", h.seed}};
}

SurveyHeader header_from_json(const nlohmann::json& j)
{
    if (j.value("schema", "") != "fqw-survey")
        throw SchemaVersionMismatch("line 1: not a survey file header");
    SurveyHeader h;
    h.schema_version = j.at("schema_version").get<int>();
    h.artifact_version = j.at("artifact_version").get<std::string>();
    h.seed = j.at("seed").get<std::uint64_t>();
    if (h.schema_version != kSchemaVersion)
        throw SchemaVersionMismatch(
            fmt::format("line 1: schema version {} (expected {})", h.schema_version, kSchemaVersion));
    return h;
}

} // namespace

void persist(const std::filesystem::path& path, const SurveyHeader& header, const std::vector<SurveyRecord>& records)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot open " + path.string() + " for writing");
    out << header_json(header).dump() << '\n';
    for (const auto& r : records)
        out << to_json(r).dump() << '\n';
    if (!out)
        throw IoError("write failed: " + path.string());
}

SurveyFile load(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open " + path.string());
    SurveyFile file;
    std::string line;
    std::size_t lineno = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty())
            continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw SchemaVersionMismatch(fmt::format("line {}: malformed JSON ({})", lineno, e.what()));
        }
        if (!have_header) {
            file.header = header_from_json(j);
            have_header = true;
            continue;
        }
        try {
            file.records.push_back(survey_record_from_json(j));
        } catch (const std::exception& e) {
            throw SchemaVersionMismatch(fmt::format("line {}: invalid survey record ({})", lineno, e.what()));
        }
    }
    if (!have_header)
        throw SchemaVersionMismatch("line 1: missing header");
    return file;
}

std::vector<SurveyRecord> resume_survey(const std::filesystem::path& path, const Field& f,
                                        const std::vector<unsigned>& degrees, CarlitzCache& cache,
                                        const SurveyOptions& opts, std::uint64_t seed, ResumeStats* stats)
{
    std::map<std::string, SurveyRecord> done;
    const bool exists = std::filesystem::exists(path);
    if (exists)
        for (auto& r : load(path).records)
            done.emplace(r.key(), std::move(r));
    std::ofstream out(path, std::ios::binary | std::ios::app);
    if (!out)
        throw IoError("cannot open " + path.string() + " for appending");
    if (!exists) {
        SurveyHeader h;
        h.seed = seed;
        out << header_json(h).dump() << '\n';
    }
    ResumeStats local;
    std::vector<SurveyRecord> result;
    for (unsigned d : degrees) {
        const std::string key = fmt::format("{}|{}", f.descriptor(), d);
        if (auto it = done.find(key); it != done.end()) {
            ++local.reused;
            result.push_back(it->second);
            continue;
        }
        SurveyRecord r = survey_degree(f, d, cache, opts);
        out << to_json(r).dump() << '\n';
        out.flush();
        if (!out)
            throw IoError("write failed: " + path.string());
        ++local.computed;
        done.emplace(key, r);
        result.push_back(std::move(r));
    }
    if (stats)
        *stats = local;
    return result;
}

std::string to_csv(const std::vector<SurveyRecord>& records)
{
    std::uint64_t max_q = 2;
    for (const auto& r : records)
        max_q = std::max(max_q, r.field.order());
    std::ostringstream os;
    os << "q,d,primes,wilson";
    for (std::uint64_t c = 1; c < max_q; ++c)
        os << ",special_c" << c;
    os << '\n';
    for (const auto& r : records) {
        os << r.field.order() << ',' << r.d << ',' << r.prime_count << ',';
        if (r.wilson_method != WilsonMethod::Skipped)
            os << r.wilson_primes.size();
        for (std::uint64_t c = 1; c < max_q; ++c) {
            os << ',';
            if (auto it = r.special_primes.find(static_cast<Elem>(c)); it != r.special_primes.end())
                os << it->second.size();
        }
        os << '\n';
    }
    return os.str();
}

} // namespace fqw

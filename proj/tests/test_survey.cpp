#include "doctest.h"

#include <filesystem>
#include <fstream>

#include "fqw/errors.hpp"
#include "fqw/survey.hpp"
#include "support.hpp"

using namespace fqw;
using fqw::test::P;

namespace {

std::filesystem::path temp_file(const std::string& name)
{
    auto p = std::filesystem::temp_directory_path() / ("fqw_test_" + name);
    std::filesystem::remove(p);
    return p;
}

std::vector<DegreeClass> expect(std::initializer_list<DegreeClass> v) { return v; }

} // namespace

TEST_CASE("special Wilson primes by shape")
{
    const Field f3 = make_prime_field(3);
    CHECK(special_wilson_primes(f3, 6, 1).size() == 3);
    CHECK(special_wilson_primes(f3, 6, 2).size() == 3);
    for (Elem c = 1; c < 3; ++c)
        CHECK(special_wilson_primes(f3, 12, c).empty());
    CHECK(special_wilson_primes(f3, 9, 2).empty());
    CHECK(special_wilson_primes(f3, 9, 1).size() == 6);
    CHECK(special_wilson_primes(make_prime_field(2), 14, 1).size() == 12);
    CHECK(special_wilson_primes(make_prime_field(2), 8, 1).empty());
    CHECK(special_wilson_primes(parse_field("4"), 4, 1).empty());
    CHECK(special_wilson_primes(f3, 1, 1).size() == 3);
    CHECK(special_wilson_primes(f3, 1, 2).empty());
    CHECK(special_wilson_primes(f3, 5, 1).empty());
    CHECK_THROWS_AS(special_wilson_primes(f3, 6, 0), ZeroC);
    // Every shaped prime has the right derivative.
    for (const Poly& p : special_wilson_primes(f3, 6, 1))
        CHECK(derivative(p) == Poly::constant(f3, 2));
}

TEST_CASE("survey of q = 3, d = 6")
{
    const Field f3 = make_prime_field(3);
    CarlitzCache cache(f3);
    const SurveyRecord r = survey_degree(f3, 6, cache);
    CHECK(r.prime_count == 116);
    CHECK(r.constant_derivative == 6);
    CHECK(r.wilson_primes.size() == 15);
    CHECK(r.wilson_method == WilsonMethod::SecondDerivative);
    CHECK(r.def_checked);
    CHECK(r.suite_agreement == std::optional<bool>(true));
    CHECK(r.special_primes.at(1).size() == 3);
    CHECK(r.special_primes.at(2).size() == 3);
    for (const auto& [c, list] : r.special_primes)
        for (const auto& e : list) {
            CHECK(e.mult_L == Multiplicity{2, false});
            CHECK(e.mult_D == Multiplicity{1, false});
        }
    for (const auto& w : r.wilson_primes) {
        REQUIRE(w.mult_sum);
        CHECK(w.mult_sum->value >= 1);
    }
}

TEST_CASE("survey of q = 2, d = 14 counts")
{
    const Field f2 = make_prime_field(2);
    CarlitzCache cache(f2);
    SurveyOptions opts;
    opts.multiplicities = false;
    const SurveyRecord r = survey_degree(f2, 14, cache, opts);
    CHECK(r.prime_count == 1161);
    CHECK(r.constant_derivative == 12);
    CHECK(r.wilson_method == WilsonMethod::Skipped);
    CHECK_FALSE(r.suite_agreement.has_value());
}

TEST_CASE("survey sweep keeps the divisibility constraints")
{
    for (auto [desc, dmax] : {std::pair{"2", 8u}, std::pair{"3", 8u}, std::pair{"4", 8u}, std::pair{"5", 5u}}) {
        const Field f = parse_field(desc);
        CarlitzCache cache(f);
        const std::uint32_t p = f.characteristic();
        for (unsigned d = 1; d <= dmax; ++d) {
            SurveyOptions opts;
            opts.multiplicities = d <= 6;
            const SurveyRecord r = survey_degree(f, d, cache, opts);
            CHECK(r.prime_count == count_irreducibles(f, d));
            if (r.constant_derivative > 0)
                CHECK((d == 1 || d % p == 0));
            if (p > 2 && !r.wilson_primes.empty())
                CHECK((d % p == 0 || (d - 1) % p == 0));
        }
    }
}

TEST_CASE("survey output is independent of the job count")
{
    const Field f3 = make_prime_field(3);
    CarlitzCache cache(f3);
    SurveyOptions one, many;
    many.jobs = 3;
    CHECK(to_json(survey_degree(f3, 6, cache, one)).dump() == to_json(survey_degree(f3, 6, cache, many)).dump());
}

TEST_CASE("Wilson sum polynomial factorization")
{
    const Field f3 = make_prime_field(3);
    CarlitzCache cache(f3);
    const auto r = theorem5_report(f3, 6, cache);
    CHECK(r.degree == 360);
    CHECK(r.wilson_primes.size() == 15);
    CHECK(r.degree_d_factors.size() == 15);
    CHECK(r.multiset == expect({{28, 1, 3}, {24, 1, 3}, {20, 1, 3}, {18, 1, 2}, {6, 1, 15}, {2, 1, 3}, {1, 4, 3}}));
    CHECK(r.factorization.reconstruct() == cache.wilson_sum_poly(6));

    const auto r3 = theorem5_report(f3, 3, cache);
    std::vector<Poly> w;
    for (const Poly& p : monic_irreducible_polys(f3, 3))
        if (coefficient_characterization(p))
            w.push_back(p);
    std::sort(w.begin(), w.end(), canonical_less);
    CHECK(r3.wilson_primes == w);

    const Field f5 = make_prime_field(5);
    CarlitzCache c5(f5);
    const auto r5 = theorem5_report(f5, 2, c5);
    CHECK(r5.degree_d_factors.empty());
    CHECK(r5.wilson_primes.empty());
    CHECK_THROWS(theorem5_report(make_prime_field(2), 4, cache));
}

TEST_CASE("special Wilson factorization reports")
{
    const Field f3 = make_prime_field(3);
    CarlitzCache cache(f3);
    const auto r = theorem7_report(f3, 6, 2, Theorem7Mode::Full(), cache);
    CHECK(r.L_degree == 363);
    CHECK(r.special_derivative == Poly::constant(f3, 1));
    REQUIRE(r.L_degree_d.size() == 3);
    for (const auto& e : r.L_degree_d) {
        CHECK(e.mult == 2);
        CHECK(derivative(e.base) == Poly::constant(f3, 1));
    }
    CHECK(r.L_other == expect({{95, 1, 3}, {14, 1, 3}}));
    CHECK(r.L_mult_exact);
    CHECK(r.D_degree_d.size() == 3);
    CHECK(r.L_factorization.reconstruct() == cache.L(5) + Poly::constant(f3, 1));

    const auto mirror = theorem7_report(f3, 6, 1, Theorem7Mode::Full(), cache);
    CHECK(mirror.L_other == expect({{95, 1, 3}, {14, 1, 3}}));
    for (const auto& e : mirror.L_degree_d)
        CHECK(derivative(e.base) == Poly::constant(f3, 2));

    const auto nine = theorem7_report(f3, 9, 1, Theorem7Mode::Partial(9), cache);
    CHECK(nine.L_degree_d.size() == 6);
    CHECK(nine.D_degree_d.size() == 6);
    const auto nine_neg = theorem7_report(f3, 9, 2, Theorem7Mode::Partial(9), cache);
    CHECK(nine_neg.L_degree_d.empty());

    CHECK_THROWS_AS(theorem7_report(f3, 6, 0, Theorem7Mode::Full(), cache), ZeroC);
}

TEST_CASE("gcd scans")
{
    const Field f3 = make_prime_field(3);
    CarlitzCache cache(f3);
    const auto b = borisov_scan(f3, 6, cache);
    bool saw_three = false;
    for (const auto& s : b) {
        CHECK(s.d % 3 == 0);
        CHECK_FALSE(s.violates_expectation);
        saw_three = saw_three || (s.d == 3 && s.c == 1);
    }
    CHECK(saw_three);
    // The Artin-Schreier primes t^3 - t - m divide L_2 + 1 and [3].
    const Poly as = P(f3, "t^3+2*t+2");
    for (const auto& s : b)
        if (s.d == 3 && s.c == 1)
            CHECK(rem(s.gcd, as).is_zero());

    const Field f2 = make_prime_field(2);
    CarlitzCache c2(f2);
    for (const auto& s : borisov_scan(f2, 3, c2))
        CHECK(s.d != 3);
    CHECK(gcd(c2.L(2) + Poly::constant(f2, 1), c2.bracket(3)).is_one());

    for (const auto& s : alt_gcd_conjecture_scan(f3, 6, cache))
        CHECK_FALSE(s.violates_expectation);
    // S_2 = 1 - [1].
    const Poly s2 = Poly::constant(f3, 1) - cache.bracket(1);
    CHECK(alternating_sum_mod_bracket(cache, 2) == rem(s2, cache.bracket(2)));
    // S_3 = 1 - [2] + [2][1].
    const Poly s3 = Poly::constant(f3, 1) - cache.bracket(2) + cache.bracket(2) * cache.bracket(1);
    CHECK(alternating_sum_mod_bracket(cache, 3) == rem(s3, cache.bracket(3)));
    CHECK_THROWS(alt_gcd_conjecture_scan(f2, 4, c2));
}

TEST_CASE("Fermat quotient residue distribution")
{
    const Field f2 = make_prime_field(2);
    const PrimeContext ctx = make_prime_context(P(f2, "t^2+t+1"));
    const auto d = fq_distribution(ctx, 2);
    CHECK(d.bases == 3);
    CHECK(d.histogram.at(0) == 1);
    CHECK(d.histogram.at(1) == 2);
    const auto consts = fq_distribution(ctx, 1, false);
    CHECK(consts.bases == 2);
    CHECK(consts.histogram.size() == 1);
    CHECK(consts.histogram.at(0) == 2);
    const Field f3 = make_prime_field(3);
    const auto big = fq_distribution(make_prime_context(P(f3, "t^2+1")), 4, false);
    std::uint64_t total = 0;
    for (const auto& [k, n] : big.histogram)
        total += n;
    CHECK(total == 81);
    CHECK_THROWS_AS(fq_distribution(ctx, 30), BudgetExceeded);
}

TEST_CASE("Artin-Schreier family")
{
    for (std::uint32_t p : {3u, 5u}) {
        CarlitzCache cache(make_prime_field(p));
        const auto cases = artin_schreier_report(p, cache);
        CHECK(cases.size() == p - 1);
        for (const auto& c : cases) {
            CHECK(c.irreducible);
            CHECK(c.wilson);
            CHECK(c.multiplicity.value >= p - 1);
            CHECK(c.checks.size() == 9);
            for (const auto& [k, v] : c.checks)
                CHECK_MESSAGE(v, p, " ", c.m, " ", k);
        }
    }
}

TEST_CASE("persistence round trip and resume")
{
    const Field f3 = make_prime_field(3);
    CarlitzCache cache(f3);
    std::vector<SurveyRecord> recs;
    for (unsigned d = 1; d <= 4; ++d)
        recs.push_back(survey_degree(f3, d, cache));
    const auto path = temp_file("roundtrip.jsonl");
    SurveyHeader h;
    h.seed = 42;
    persist(path, h, recs);
    const auto loaded = load(path);
    CHECK(loaded.header.seed == 42);
    CHECK(loaded.records == recs);

    const auto rpath = temp_file("resume.jsonl");
    ResumeStats s1, s2;
    const auto first = resume_survey(rpath, f3, {1, 2, 3}, cache, {}, 0, &s1);
    CHECK(s1.computed == 3);
    const auto second = resume_survey(rpath, f3, {1, 2, 3, 4}, cache, {}, 0, &s2);
    CHECK(s2.reused == 3);
    CHECK(s2.computed == 1);
    CHECK(second == recs);
    ResumeStats s3;
    resume_survey(rpath, f3, {1, 2, 3, 4}, cache, {}, 0, &s3);
    CHECK(s3.computed == 0);

    // Byte-stable output.
    const auto path2 = temp_file("roundtrip2.jsonl");
    persist(path2, h, loaded.records);
    std::ifstream a(path), b(path2);
    CHECK(std::string(std::istreambuf_iterator<char>(a), {}) == std::string(std::istreambuf_iterator<char>(b), {}));

    {
        std::ofstream out(path, std::ios::app);
        out << "{not json\n";
    }
    try {
        load(path);
        FAIL("corrupt line accepted");
    } catch (const SchemaVersionMismatch& e) {
        CHECK(std::string(e.what()).find("line 6") != std::string::npos);
    }
    CHECK_THROWS_AS(load(temp_file("missing.jsonl")), IoError);
}

TEST_CASE("CSV export")
{
    const Field f3 = make_prime_field(3);
    CarlitzCache cache(f3);
    const std::string csv = to_csv({survey_degree(f3, 6, cache)});
    CHECK(csv == "q,d,primes,wilson,special_c1,special_c2\n3,6,116,15,3,3\n");
}

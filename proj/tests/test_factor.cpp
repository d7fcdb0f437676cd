#include "doctest.h"

#include <map>
#include <random>

#include "fqw/errors.hpp"
#include "fqw/factor.hpp"
#include "fqw/irr.hpp"
#include "support.hpp"

using namespace fqw;
using fqw::test::P;

namespace {

// Oracle: divide by every monic irreducible (by trial division) of degree up
// to deg f, counting multiplicities.
std::vector<FactorEntry> oracle_factors(const Poly& f)
{
    std::vector<FactorEntry> out;
    Poly rest = f.monic();
    for (unsigned k = 1; k <= f.degree().value(); ++k)
        for (const Poly& g : fqw::test::all_with_degree(f.field(), k, true)) {
            if (!fqw::test::naive_irreducible(g))
                continue;
            unsigned m = 0;
            while (!rest.is_constant() && divrem(rest, g).rem.is_zero()) {
                rest = exact_div(rest, g);
                ++m;
            }
            if (m)
                out.push_back({g, m});
        }
    return out;
}

} // namespace

TEST_CASE("square-free decomposition")
{
    const Field f2 = make_prime_field(2);
    auto sq = squarefree_decomposition(P(f2, "t^2"));
    REQUIRE(sq.size() == 1);
    CHECK(sq[0].first == P(f2, "t"));
    CHECK(sq[0].second == 2);
    const Field f3 = make_prime_field(3);
    auto one = squarefree_decomposition(P(f3, "2*t^3+t+1"));
    REQUIRE(one.size() == 1);
    CHECK(one[0].first == P(f3, "t^3+2*t+2"));
    CHECK(one[0].second == 1);
    const Poly a = P(f2, "t^2+t"), b = P(f2, "t^2+t+1");
    auto mixed = squarefree_decomposition(a * b * b);
    REQUIRE(mixed.size() == 2);
    CHECK(mixed[0] == std::pair{a, 1u});
    CHECK(mixed[1] == std::pair{b, 2u});
    // Multiplicities divisible by p: (t+1)^6 (t^2+1)^3 t over F_3.
    const Poly c = pow(P(f3, "t+1"), 6) * pow(P(f3, "t^2+1"), 3) * P(f3, "t");
    auto deep = squarefree_decomposition(c);
    REQUIRE(deep.size() == 3);
    CHECK(deep[0] == std::pair{P(f3, "t"), 1u});
    CHECK(deep[1] == std::pair{P(f3, "t^2+1"), 3u});
    CHECK(deep[2] == std::pair{P(f3, "t+1"), 6u});
}

TEST_CASE("distinct-degree splitting")
{
    const Field f2 = make_prime_field(2);
    auto d2 = ddf(P(f2, "t^4+t"));
    REQUIRE(d2.size() == 2);
    CHECK(d2[0] == std::pair{P(f2, "t^2+t"), 1u});
    CHECK(d2[1] == std::pair{P(f2, "t^2+t+1"), 2u});
    const Poly irr = P(f2, "t^7+t+1");
    auto d7 = ddf(irr);
    REQUIRE(d7.size() == 1);
    CHECK(d7[0] == std::pair{irr, 7u});
    auto d23 = ddf(P(f2, "t^2+t+1") * P(f2, "t^3+t+1"));
    REQUIRE(d23.size() == 2);
    CHECK(d23[0] == std::pair{P(f2, "t^2+t+1"), 2u});
    CHECK(d23[1] == std::pair{P(f2, "t^3+t+1"), 3u});
}

TEST_CASE("equal-degree splitting")
{
    const Field f3 = make_prime_field(3);
    const Poly irr = P(f3, "t^3+2*t+2");
    CHECK(edf(irr, 3, 0) == std::vector<Poly>{irr});
    const Poly a = P(f3, "t^2+1"), b = P(f3, "t^2+t+2");
    CHECK(edf(a * b, 2, 0) == std::vector<Poly>{a, b});
    const Field f2 = make_prime_field(2);
    CHECK(edf(P(f2, "t^2+t"), 1, 0) == std::vector<Poly>{P(f2, "t"), P(f2, "t+1")});
    // Even characteristic beyond the prime field uses the trace over F_4.
    const Field f4 = parse_field("4");
    const auto lin = monic_irreducible_polys(f4, 1);
    Poly prod = Poly::constant(f4, 1);
    for (const Poly& p : lin)
        prod *= p;
    CHECK(edf(prod, 1, 5) == lin);
    const auto quad = monic_irreducible_polys(f4, 2);
    Poly prod2 = quad[0] * quad[3] * quad[5];
    CHECK(edf(prod2, 2, 11) == std::vector<Poly>{quad[0], quad[3], quad[5]});
}

TEST_CASE("factorize examples")
{
    const Field f2 = make_prime_field(2);
    const Factorization fz = factorize(P(f2, "t^4+t"), 0);
    REQUIRE(fz.complete());
    REQUIRE(fz.factors.size() == 3);
    CHECK(fz.factors[0].base == P(f2, "t"));
    CHECK(fz.factors[1].base == P(f2, "t+1"));
    CHECK(fz.factors[2].base == P(f2, "t^2+t+1"));
    const Field f5 = make_prime_field(5);
    const Factorization c = factorize(Poly::constant(f5, 3), 0);
    CHECK(c.unit.code() == 3);
    CHECK(c.factors.empty());
    CHECK(c.reconstruct() == Poly::constant(f5, 3));
}

TEST_CASE("factorize agrees with the trial-division oracle, deg <= 6 over F_2 and F_3")
{
    for (std::uint64_t p : {2, 3}) {
        const Field f = make_prime_field(p);
        for (unsigned deg = 1; deg <= 6; ++deg) {
            const auto all = fqw::test::all_with_degree(f, deg, false);
            // All of F_2 and every monic plus a stride over non-monic for F_3.
            for (std::size_t i = 0; i < all.size(); ++i) {
                if (p == 3 && all[i].lead() != 1 && i % 7)
                    continue;
                const Factorization fz = factorize(all[i], 17);
                CHECK(fz.factors == oracle_factors(all[i]));
                CHECK(fz.reconstruct() == all[i]);
            }
        }
    }
}

TEST_CASE("factorize is deterministic and handles larger fields")
{
    std::mt19937_64 rng(1);
    for (const char* desc : {"4", "9", "5", "2"}) {
        const Field f = parse_field(desc);
        for (int it = 0; it < 10; ++it) {
            Poly a = fqw::test::random_poly(f, 2 + rng() % 40, rng);
            if (a.is_constant())
                continue;
            a *= a * fqw::test::random_poly(f, 3, rng) + Poly::constant(f, 1);
            const Factorization x = factorize(a, 42);
            const Factorization y = factorize(a, 42);
            CHECK(x.factors == y.factors);
            CHECK(x.reconstruct() == a);
            CHECK(factorize(a, 7).factors == x.factors);
        }
    }
}

TEST_CASE("trial division")
{
    const Field f3 = make_prime_field(3);
    const Poly p1 = P(f3, "t+2"), p2 = P(f3, "t^4+t+2");
    REQUIRE(is_irreducible(p2));
    const Factorization part = trial_division(p1 * p2 * p2 * P(f3, "t^5+2*t+1"), 1);
    REQUIRE(part.factors.size() == 1);
    CHECK(part.factors[0].base == p1);
    REQUIRE(part.cofactor);
    CHECK(part.reconstruct() == p1 * p2 * p2 * P(f3, "t^5+2*t+1"));
    REQUIRE(part.cofactor_irreducible);
    CHECK_FALSE(*part.cofactor_irreducible);

    const Factorization one = trial_division(p1 * p2, 2);
    CHECK(one.complete());
    CHECK(one.factors.size() == 2);

    std::mt19937_64 rng(5);
    for (int it = 0; it < 20; ++it) {
        Poly a = fqw::test::random_poly(f3, 2 + rng() % 30, rng);
        if (a.is_constant())
            continue;
        a *= P(f3, "t^2+1") * P(f3, "t^2+1");
        const Factorization full = trial_division(a, static_cast<unsigned>(a.degree().value()));
        CHECK(full.complete());
        CHECK(full.factors == factorize(a, 0).factors);
        const Factorization small = trial_division(a, 3);
        CHECK(small.reconstruct() == a);
        for (const auto& e : small.factors)
            if (e.base.degree().value() <= 3 || small.complete())
                CHECK(std::find(full.factors.begin(), full.factors.end(), e) != full.factors.end());
    }
}

TEST_CASE("factorization JSON")
{
    const Field f2 = make_prime_field(2);
    const auto j = to_json(factorize(P(f2, "t^4+t"), 0));
    CHECK(j["unit"] == 1);
    CHECK(j["factors"].size() == 3);
    CHECK(j["factors"][2]["poly"] == "t^2+t+1");
    CHECK(j["cofactor"].is_null());
    const auto k = to_json(trial_division(P(f2, "t^17+t^3+1") * P(f2, "t^17+t^3+1") * P(f2, "t+1"), 1));
    CHECK(k["cofactor_irreducible"] == false);
}

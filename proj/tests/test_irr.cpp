#include "doctest.h"

#include "fqw/errors.hpp"
#include "fqw/irr.hpp"
#include "support.hpp"

using namespace fqw;
using fqw::test::P;

TEST_CASE("irreducibility examples")
{
    const Field f2 = make_prime_field(2);
    CHECK(is_irreducible(P(f2, "t^2+t+1")));
    CHECK_FALSE(is_irreducible(P(f2, "t^2+1")));
    const Field f3 = make_prime_field(3);
    CHECK(is_irreducible(P(f3, "t^3+2*t+2")));
    CHECK(is_irreducible(P(f3, "2*t^3+t+1")));
}

TEST_CASE("Rabin agrees with trial division, exhaustive small cases")
{
    for (const char* desc : {"2", "3", "4", "5"}) {
        const Field f = parse_field(desc);
        for (unsigned d = 1; d <= 8; ++d) {
            if (std::pow(double(f.order()), d) > 5000)
                break;
            std::uint64_t count = 0;
            for (const Poly& c : fqw::test::all_with_degree(f, d, true)) {
                const bool naive = fqw::test::naive_irreducible(c);
                CHECK(is_irreducible(c) == naive);
                count += naive;
            }
            CHECK(count == count_irreducibles(f, d));
        }
    }
}

TEST_CASE("generic Rabin path for larger fields and degrees")
{
    const Field f2 = make_prime_field(2);
    // Degree above the flat-kernel limit: x^127+x+1 is a trinomial irreducible.
    CHECK(is_irreducible(P(f2, "t^127+t+1")));
    CHECK_FALSE(is_irreducible(P(f2, "t^127+t^2+1") * P(f2, "t+1")));
    CHECK(is_irreducible(P(f2, "t^1279+t^216+1")));
    const Field f101 = make_prime_field(101);
    CHECK_FALSE(is_irreducible(P(f101, "t^2+1")));  // 101 = 1 mod 4
    CHECK(is_irreducible(P(f101, "t^2+2")));        // 2 is a non-residue mod 101
}

TEST_CASE("counts")
{
    CHECK(count_irreducibles(3, 6) == 116);
    CHECK(count_irreducibles(2, 14) == 1161);
    for (std::uint64_t q : {2, 3, 4, 5, 7, 9})
        CHECK(count_irreducibles(q, 1) == q);
    CHECK_THROWS_AS(count_irreducibles(2, 70), BoundExceeded);
}

TEST_CASE("stream")
{
    const Field f2 = make_prime_field(2);
    auto two = monic_irreducible_polys(f2, 2);
    REQUIRE(two.size() == 1);
    CHECK(two[0] == P(f2, "t^2+t+1"));
    CHECK(monic_irreducible_polys(make_prime_field(3), 6).size() == 116);
    CHECK(monic_irreducible_polys(f2, 14).size() == 1161);

    // Length equals the count; q^d <= 3^9 and q = 2 with d <= 16.
    for (const char* desc : {"2", "3", "4", "5", "7", "8", "9"}) {
        const Field f = parse_field(desc);
        for (unsigned d = 1;; ++d) {
            if (std::pow(double(f.order()), d) > 19683)
                break;
            CHECK(monic_irreducible_polys(f, d).size() == count_irreducibles(f, d));
        }
    }
    for (unsigned d = 15; d <= 16; ++d)
        CHECK(monic_irreducible_polys(f2, d).size() == count_irreducibles(f2, d));
}

TEST_CASE("stream order and restart")
{
    const Field f3 = make_prime_field(3);
    const auto all = monic_irreducible_polys(f3, 4);
    for (std::size_t i = 1; i < all.size(); ++i)
        CHECK(canonical_less(all[i - 1], all[i]));
    IrreducibleStream s(f3, 4);
    std::vector<Poly> seen;
    for (int i = 0; i < 5; ++i)
        seen.push_back(s.next()->prime);
    IrreducibleStream resumed(f3, 4, s.position());
    while (auto c = resumed.next_poly())
        seen.push_back(*c);
    CHECK(seen == all);
}

TEST_CASE("product of primes of degree dividing d is [d], q^d <= 729")
{
    for (const char* desc : {"2", "3", "4", "5", "9"}) {
        const Field f = parse_field(desc);
        for (unsigned d = 1;; ++d) {
            if (std::pow(double(f.order()), d) > 729)
                break;
            Poly prod = Poly::constant(f, 1);
            for (unsigned e = 1; e <= d; ++e)
                if (d % e == 0)
                    for (const Poly& p : monic_irreducible_polys(f, e))
                        prod *= p;
            std::uint64_t n = 1;
            for (unsigned i = 0; i < d; ++i)
                n *= f.order();
            CHECK(prod == Poly::monomial(f, 1, n) - Poly::t(f));
        }
    }
}

TEST_CASE("prime contexts")
{
    const Field f3 = make_prime_field(3);
    const PrimeContext ctx = make_prime_context(P(f3, "t^3+2*t+2"));
    CHECK(ctx.norm == 27);
    CHECK(ctx.residue_field.order() == 27);
    CHECK(eval(ctx.prime, ctx.theta).is_zero());
    const PrimeContext lin = make_prime_context(P(f3, "t+1"));
    CHECK(lin.theta.code() == 2);
    CHECK_THROWS_AS(make_prime_context(P(f3, "t^2+2")), Reducible);
    CHECK_THROWS_AS(make_prime_context(P(f3, "2*t+1")), NotMonic);
}

#include "doctest.h"

#include <random>

#include "fqw/errors.hpp"
#include "fqw/gf2x.hpp"
#include "fqw/irr.hpp"
#include "fqw/poly.hpp"
#include "support.hpp"

using namespace fqw;
using fqw::test::P;

TEST_CASE("degree sentinel")
{
    const Field f2 = make_prime_field(2);
    const Poly z(f2);
    CHECK(z.degree().is_neg_inf());
    CHECK_THROWS_AS((void)z.degree().value(), std::logic_error);
    CHECK(z.degree() < Poly::constant(f2, 1).degree());
    CHECK(z.degree().to_string() == "NEG_INF");
}

TEST_CASE("ring operations")
{
    const Field f2 = make_prime_field(2);
    CHECK(P(f2, "t^2+t+1") * P(f2, "t^2+t") == P(f2, "t^4+t"));
    const Poly f = P(f2, "t^5+t^2+1");
    CHECK(f * Poly::constant(f2, 1) == f);
    auto [q, r] = divrem(P(f2, "t^4+t"), P(f2, "t^2+t+1"));
    CHECK(q == P(f2, "t^2+t"));
    CHECK(r.is_zero());
    CHECK_THROWS_AS(divrem(f, Poly(f2)), DivisionByZero);
    const Field f9 = parse_field("9");
    CHECK_THROWS_AS(f * P(f9, "t"), FieldMismatch);
}

TEST_CASE("text format")
{
    const Field f3 = make_prime_field(3);
    const Poly f = P(f3, "t^6+2*t+1");
    CHECK(f.to_string() == "t^6+2*t+1");
    CHECK(f.to_list_string() == "[1,2,0,0,0,0,1]");
    CHECK(P(f3, "[1,2,0,0,0,0,1]") == f);
    CHECK(P(f3, " t^3 - t - 1 ").to_string() == "t^3+2*t+2");
    CHECK(P(f3, "2t + t").is_zero());
    CHECK(P(f3, "0").to_string() == "0");
    CHECK(P(f3, "[]").is_zero());
    CHECK_THROWS_AS(P(f3, "t^2+5"), ParseError);
    CHECK_THROWS_AS(P(f3, "t^"), ParseError);
    CHECK_THROWS_AS(P(f3, "x+1"), ParseError);
    CHECK_THROWS_AS(P(f3, ""), ParseError);
}

TEST_CASE("exact division")
{
    const Field f2 = make_prime_field(2);
    CHECK(exact_div(P(f2, "t^4+t"), P(f2, "t^2+t+1")) == P(f2, "t^2+t"));
    const Poly g = P(f2, "t^7+t+1");
    CHECK(exact_div(g, g).is_one());
    const Field f3 = make_prime_field(3);
    CHECK_THROWS_AS(exact_div(P(f3, "t^2+1"), P(f3, "t")), NotDivisible);
}

TEST_CASE("gcd")
{
    const Field f2 = make_prime_field(2);
    CHECK(gcd(P(f2, "t^3+t"), Poly(f2)) == P(f2, "t^3+t"));
    const Field f3 = make_prime_field(3);
    CHECK(gcd(P(f3, "2*t^2+1"), Poly(f3)) == P(f3, "t^2+2"));
    CHECK(gcd(P(f2, "t^2+t"), P(f2, "t^2+t+1")).is_one());
    CHECK(gcd(P(f2, "t^4+t"), P(f2, "t^2+t")) == P(f2, "t^2+t"));
    auto e = ext_gcd(P(f3, "t^4+t+2"), P(f3, "t^2+1"));
    CHECK(e.s * P(f3, "t^4+t+2") + e.t * P(f3, "t^2+1") == e.g);
}

TEST_CASE("derivatives")
{
    const Field f3 = make_prime_field(3);
    CHECK(derivative(P(f3, "t^3")).is_zero());
    CHECK(derivative(P(f3, "t^3+2*t+2"), 1) == P(f3, "2"));
    CHECK(derivative(P(f3, "t^3+2*t+2"), 2).is_zero());
    CHECK(derivative(P(f3, "t^4+t"), 0) == P(f3, "t^4+t"));
}

TEST_CASE("derivative degree law, exhaustive")
{
    for (std::uint64_t q : {2, 3, 5}) {
        const Field f = make_prime_field(q);
        for (unsigned deg = 1; deg <= 5; ++deg) {
            if (q == 5 && deg > 4)
                break;
            for (const Poly& a : fqw::test::all_with_degree(f, deg, true)) {
                const Poly da = derivative(a);
                if (deg % q != 0) {
                    CHECK(da.degree() == deg - 1);
                } else {
                    CHECK(da.degree() < Degree(deg - 1));
                }
            }
        }
    }
}

TEST_CASE("powmod and q-power expansion")
{
    const Field f2 = make_prime_field(2);
    const Poly m = P(f2, "t^2+t+1");
    CHECK(powmod(P(f2, "t"), 2, m) == P(f2, "t+1"));
    const Poly f = P(f2, "t^5+t^3+1");
    CHECK(powmod(f, 1, m) == rem(f, m));
    CHECK(powmod(P(f2, "t"), 16, m) == P(f2, "t"));

    CHECK(q_power_expand(P(f2, "t"), 3) == P(f2, "t^8"));
    CHECK(q_power_expand(P(f2, "t+1"), 2) == P(f2, "t^4+1"));
    const Field f3 = make_prime_field(3);
    CHECK(q_power_expand(P(f3, "t^2+2*t"), 1) == P(f3, "t^6+2*t^3"));
    CHECK(q_power_expand(P(f3, "t^2+2*t"), 1) == pow(P(f3, "t^2+2*t"), 3));

    // Only coefficients of the fixed field survive exponent scaling.
    const Field f9 = parse_field("9");
    CHECK_THROWS_AS(q_power_expand(P(f9, "3*t+1"), 1, 3), CoefficientsNotInFixedField);
    CHECK(q_power_expand(P(f9, "2*t+1"), 1, 3) == P(f9, "2*t^3+1"));
}

TEST_CASE("randomized ring properties")
{
    std::mt19937_64 rng(12345);
    for (const char* desc : {"2", "3", "5", "4", "9", "65537"}) {
        const Field f = parse_field(desc);
        for (int it = 0; it < 30; ++it) {
            const std::size_t la = 1 + rng() % 300, lb = 1 + rng() % 300;
            const Poly a = fqw::test::random_poly(f, la, rng);
            Poly b = fqw::test::random_poly(f, lb, rng);
            if (b.is_zero())
                b = Poly::constant(f, 1);
            CHECK(a * b == fqw::test::naive_mul(a, b));
            auto [q, r] = divrem(a, b);
            CHECK(q * b + r == a);
            CHECK(r.degree() < b.degree());
            CHECK(exact_div(a * b, b) == a);
            const Poly g = gcd(a, b);
            if (!g.is_zero()) {
                CHECK(divrem(a, g).rem.is_zero());
                CHECK(divrem(b, g).rem.is_zero());
            }
        }
    }
}

TEST_CASE("bit-packed F_2 kernel agrees with the generic path")
{
    std::mt19937_64 rng(99);
    const Field f2 = make_prime_field(2);
    for (int it = 0; it < 20; ++it) {
        const Poly a = fqw::test::random_poly(f2, 100 + rng() % 3000, rng);
        const Poly b = fqw::test::random_poly(f2, 100 + rng() % 3000, rng);
        if (b.is_zero())
            continue;
        CHECK(a * b == fqw::test::naive_mul(a, b));
        auto [q, r] = divrem(a * b + a, b);
        CHECK(q * b + r == a * b + a);
        CHECK(r.degree() < b.degree());
        const Poly g = gcd(a, b);
        if (!g.is_zero())
            CHECK(divrem(a, g).rem.is_zero());
        auto pa = gf2x::BitPoly::from_coeffs<Elem>(a.coeffs());
        auto pb = gf2x::BitPoly::from_coeffs<Elem>(b.coeffs());
        CHECK(gf2x::mul(pa, pb) == gf2x::mul_basecase(pa, pb));
        CHECK(gf2x::sqr(pa) == gf2x::mul_basecase(pa, pa));
    }
    for (int it = 0; it < 1000; ++it) {
        const std::uint64_t x = rng(), y = rng();
        std::uint64_t lo, hi, elo = 0, ehi = 0;
        gf2x::clmul64(x, y, lo, hi);
        for (unsigned i = 0; i < 64; ++i)
            if ((y >> i) & 1) {
                elo ^= x << i;
                if (i)
                    ehi ^= x >> (64 - i);
            }
        CHECK(lo == elo);
        CHECK(hi == ehi);
    }
}

TEST_CASE("powmod against q_power_expand, randomized")
{
    std::mt19937_64 rng(7);
    for (const char* desc : {"2", "3", "4", "5"}) {
        const Field f = parse_field(desc);
        for (int it = 0; it < 20; ++it) {
            const Poly a = fqw::test::random_poly(f, 1 + rng() % 8, rng);
            Poly m = fqw::test::random_poly(f, 2 + rng() % 200, rng);
            if (m.is_constant())
                continue;
            for (unsigned d = 1; d <= 3; ++d) {
                BigNat e = 1;
                for (unsigned i = 0; i < d; ++i)
                    e *= f.order();
                CHECK(powmod(a, e, m) == rem(q_power_expand(a, d), m));
            }
        }
    }
    const Field f2 = make_prime_field(2);
    const Poly m = fqw::test::random_poly(f2, 700, rng) + Poly::monomial(f2, 1, 700);
    CHECK(powmod(P(f2, "t"), BigNat(1) << 12, m) == rem(P(f2, "t^4096"), m));
    CHECK(t_pow_q_pow_mod(12, m) == rem(P(f2, "t^4096"), m));
}

TEST_CASE("evaluation and synthetic division")
{
    const Field f2 = make_prime_field(2);
    const Poly p = P(f2, "t^2+t+1");
    const PrimeContext ctx = make_prime_context(p);
    CHECK(eval(p, ctx.theta).is_zero());
    CHECK(eval(p, Elem{1}) == 1);
    const Field f3 = make_prime_field(3);
    const PrimeContext as = make_prime_context(P(f3, "t^3+2*t+2"));
    CHECK(eval(as.prime, as.theta).is_zero());

    const Field& e = ctx.residue_field;
    auto [q, r] = synth_div(p, ctx.theta);
    CHECK(r.is_zero());
    CHECK(q == Poly(e, {e.add(ctx.theta.code(), 1), 1}));
    auto [q2, r2] = synth_div(Poly::constant(f2, 1), ctx.theta);
    CHECK(q2.is_zero());
    CHECK(r2.code() == 1);
    auto [q3, r3] = synth_div(Poly(e, {e.neg(ctx.theta.code()), 1}), ctx.theta);
    CHECK(q3.is_one());
    CHECK(r3.is_zero());
    CHECK_THROWS_AS(eval(P(f3, "t"), ctx.theta), FieldMismatch);
}

TEST_CASE("Taylor coefficients from repeated synthetic division, exhaustive")
{
    for (const char* desc : {"2", "3"}) {
        const Field fq = parse_field(desc);
        for (unsigned d = 1; d <= 3; ++d) {
            for (const PrimeContext& ctx : monic_irreducibles(fq, d)) {
                const Field& e = ctx.residue_field;
                if (e.order() > 27)
                    continue;
                for (unsigned deg = 0; deg <= 6; ++deg) {
                    if (std::pow(double(fq.order()), deg) > 800)
                        break;
                    for (const Poly& a : fqw::test::all_with_degree(fq, deg, true)) {
                        Poly cur = embed(a, e);
                        Poly rebuilt(e);
                        Poly lin_pow = Poly::constant(e, 1);
                        const Poly lin(e, {e.neg(ctx.theta.code()), 1});
                        for (unsigned i = 0; i <= deg; ++i) {
                            auto [q, r] = synth_div(cur, ctx.theta);
                            CHECK(r == eval(cur, ctx.theta));
                            rebuilt += lin_pow * Poly::constant(e, r.code());
                            lin_pow *= lin;
                            cur = q;
                        }
                        CHECK(rebuilt == embed(a, e));
                    }
                }
            }
        }
    }
}

TEST_CASE("shift")
{
    const Field f3 = make_prime_field(3);
    CHECK(shift(P(f3, "t^2"), FieldElement(f3, 1)) == P(f3, "t^2+2*t+1"));
    const Poly f = P(f3, "t^5+2*t^2+1");
    CHECK(shift(f, FieldElement(f3, 0)) == f);
    for (const char* desc : {"2", "3", "4", "5"}) {
        const Field fq = parse_field(desc);
        const Poly b1 = Poly::monomial(fq, 1, fq.order()) - Poly::t(fq);
        for (Elem c = 0; c < fq.order(); ++c)
            CHECK(shift(b1, FieldElement(fq, c)) == b1);
    }
}

TEST_CASE("binomial helpers")
{
    std::mt19937_64 rng(3);
    const Field f3 = make_prime_field(3);
    for (int it = 0; it < 20; ++it) {
        const Poly a = fqw::test::random_poly(f3, 1 + rng() % 200, rng);
        for (std::size_t n : {2, 3, 9, 27}) {
            const Poly bin = Poly::monomial(f3, 1, n) - Poly::t(f3);
            CHECK(reduce_mod_binomial(a, n) == rem(a, bin));
            CHECK(mul_by_binomial(a, n) == a * bin);
        }
    }
}

TEST_CASE("valuation")
{
    const Field f3 = make_prime_field(3);
    const Poly p = P(f3, "t^3+2*t+2");
    const Poly g = P(f3, "t^2+1");
    CHECK(valuation(pow(p, 3) * g, p) == 3);
    CHECK(valuation(g, p) == 0);
    CHECK(valuation(pow(p, 5), p, 2) == 2);
}

TEST_CASE("canonical order")
{
    const Field f3 = make_prime_field(3);
    CHECK(canonical_less(P(f3, "t"), P(f3, "t^2")));
    CHECK(canonical_less(P(f3, "t^2+2"), P(f3, "t^2+t")));
    CHECK_FALSE(canonical_less(P(f3, "t^2+t"), P(f3, "t^2+t")));
}

TEST_CASE("division by a sparse modulus")
{
    std::mt19937_64 rng(7);
    for (const char* desc : {"3", "5", "4"}) {
        const Field f = parse_field(desc);
        for (std::size_t n : {16u, 81u, 200u}) {
            const Poly g = Poly::monomial(f, 1, n) - Poly::t(f) + Poly::monomial(f, 2 % f.order(), 3);
            for (int it = 0; it < 5; ++it) {
                const Poly a = fqw::test::random_poly(f, 3 * n + it, rng);
                const auto [quot, r] = divrem(a, g);
                CHECK(r.degree() < g.degree());
                CHECK(fqw::test::naive_mul(quot, g) + r == a);
                const Poly bin = Poly::monomial(f, 1, n) - Poly::t(f);
                CHECK(rem(a, bin) == reduce_mod_binomial(a, n));
            }
        }
    }
}

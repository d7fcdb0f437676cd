#include "doctest.h"

#include <map>

#include "fqw/carlitz.hpp"
#include "fqw/errors.hpp"
#include "fqw/factor.hpp"
#include "fqw/irr.hpp"
#include "support.hpp"

using namespace fqw;
using fqw::test::P;

TEST_CASE("brackets, L and D")
{
    CarlitzCache c2(make_prime_field(2));
    const Field& f2 = c2.field();
    CHECK(c2.bracket(1) == P(f2, "t^2+t"));
    CHECK(c2.bracket(2) == P(f2, "t^4+t"));
    CarlitzCache c3(make_prime_field(3));
    const Field& f3 = c3.field();
    CHECK(c3.bracket(1) == P(f3, "t^3+2*t"));
    CHECK(c2.L(2) == P(f2, "t^6+t^5+t^3+t^2"));
    CHECK(c2.L(0).is_one());
    CHECK(c2.D(0).is_one());
    CHECK(c3.L(5).degree() == 363);
    CHECK(degree_L(3, 5) == 363);
    CHECK(degree_L(2, 13) == 16382);
    CHECK(degree_D(2, 13) == 106496);
    for (unsigned n = 1; n <= 5; ++n) {
        CHECK(BigNat(c3.L(n).degree().value()) == degree_L(3, n));
        CHECK(BigNat(c3.D(n).degree().value()) == degree_D(3, n));
        CHECK(c3.L(n) == c3.bracket(n) * c3.L(n - 1));
        CHECK(c3.D(n) == c3.bracket(n) * pow(c3.D(n - 1), 3));
    }
    CarlitzBounds tight;
    tight.exact_degree_guard = 100;
    CarlitzCache small(make_prime_field(3), tight);
    CHECK_THROWS_AS(small.L(5), BoundExceeded);
    CHECK_THROWS_AS(small.bracket(5), BoundExceeded);
}

TEST_CASE("F_d")
{
    CarlitzCache c2(make_prime_field(2));
    const Field& f2 = c2.field();
    CHECK(c2.F(2) == P(f2, "t^2+t"));
    CHECK(c2.F_brute(2) == P(f2, "t^2+t"));
    CHECK(c2.F_brute(1).is_one());
    CarlitzCache c3(make_prime_field(3));
    CHECK(c3.F_brute(1) == P(c3.field(), "2"));
    for (const char* desc : {"2", "3", "4", "5", "7", "8", "9"}) {
        CarlitzCache c(parse_field(desc));
        CHECK(c.F(1) == Poly::constant(c.field(), c.field().neg(1)));
        for (unsigned d = 1; std::pow(double(c.field().order()), d) <= 81; ++d)
            CHECK(c.F(d) == c.F_brute(d));
    }
    CarlitzBounds tight;
    tight.brute_bound = 100;
    tight.fmod_bound = 100;
    CarlitzCache small(make_prime_field(3), tight);
    CHECK_THROWS_AS(small.F_brute(5), BoundExceeded);
    CHECK_THROWS_AS(small.F_mod(5, P(small.field(), "t^2+1")), BoundExceeded);
}

TEST_CASE("F_mod")
{
    CarlitzCache c3(make_prime_field(3));
    const Field& f3 = c3.field();
    const Poly as = P(f3, "t^3+2*t+2");
    CHECK(c3.F_mod(3, as * as) == P(f3, "2"));
    CarlitzCache c2(make_prime_field(2));
    CHECK(c2.F_mod(2, P(c2.field(), "t^2+t+1")).is_one());
    // F_d = -1 mod every prime of degree d.
    for (const char* desc : {"2", "3", "4", "5"}) {
        CarlitzCache c(parse_field(desc));
        const Field& f = c.field();
        for (unsigned d = 1; std::pow(double(f.order()), d) <= 625; ++d)
            for (const Poly& p : monic_irreducible_polys(f, d)) {
                CHECK(c.F_mod(d, p) == Poly::constant(f, f.neg(1)));
                CHECK(c.F_mod(d, p * p) == rem(c.F(d), p * p));
            }
    }
}

TEST_CASE("Wilson sum polynomial")
{
    CarlitzCache c3(make_prime_field(3));
    CHECK(c3.wilson_sum_poly(6).degree() == 360);
    CarlitzCache c2(make_prime_field(2));
    CHECK(c2.wilson_sum_poly(2).is_one());
    for (const char* desc : {"2", "3"})
        for (unsigned d = 2; d <= 5; ++d) {
            CarlitzCache c(parse_field(desc));
            CHECK(c.wilson_sum_poly(d) == c.wilson_sum_form(d));
        }
}

TEST_CASE("perturbations")
{
    CarlitzCache c3(make_prime_field(3));
    const Field& f3 = c3.field();
    const Poly l51 = c3.perturbation(PerturbationKind::LMinusC, 6, f3.neg(1));
    CHECK(l51.degree() == 363);
    CHECK(l51 == c3.L(5) + Poly::constant(f3, 1));
    CHECK(c3.perturbation(PerturbationKind::DPlusSignC, 6, 1) == c3.D(5) + Poly::constant(f3, 1));
    CHECK(c3.perturbation(PerturbationKind::DPlusSignC, 5, 1) == c3.D(4) - Poly::constant(f3, 1));
    CHECK_THROWS_AS(c3.perturbation(PerturbationKind::LMinusC, 6, 0), ZeroC);
    CarlitzCache c2(make_prime_field(2));
    CHECK(c2.perturbation(PerturbationKind::LMinusC, 2, 1) == P(c2.field(), "t^2+t+1"));
    CHECK(c2.perturbation(PerturbationKind::LMinusC, 14, 1).degree() == 16382);
}

TEST_CASE("modular values agree with exact values reduced")
{
    for (const char* desc : {"2", "3", "4", "5"}) {
        CarlitzCache c(parse_field(desc));
        const Field& f = c.field();
        for (unsigned d = 1; d <= 3; ++d)
            for (const Poly& p : monic_irreducible_polys(f, d)) {
                if (std::pow(double(f.order()), d) > 125)
                    break;
                for (const Poly& m : {p, p * p, p * p * p})
                    for (unsigned n = 1; n <= 4; ++n) {
                        CHECK(c.bracket_mod(n, m) == rem(c.bracket(n), m));
                        CHECK(c.L_mod(n, m) == rem(c.L(n), m));
                        if (f.order() <= 3 || n <= 3)
                            CHECK(c.D_mod(n, m) == rem(c.D(n), m));
                        for (Elem k = 1; k < f.order() && n >= 2; ++k)
                            CHECK(c.perturbation_mod(PerturbationKind::LMinusC, n, k, m) ==
                                  rem(c.perturbation(PerturbationKind::LMinusC, n, k), m));
                    }
            }
    }
}

namespace {

std::map<std::string, unsigned> as_map(const Factorization& fz)
{
    std::map<std::string, unsigned> m;
    for (const auto& e : fz.factors)
        m[e.base.to_string()] = e.mult;
    return m;
}

} // namespace

TEST_CASE("factorization patterns of [d], L_d, D_d for q <= 3, d <= 4")
{
    for (std::uint64_t q : {2, 3}) {
        CarlitzCache c(make_prime_field(q));
        const Field& f = c.field();
        for (unsigned d = 1; d <= 4; ++d) {
            std::map<std::string, unsigned> bracket, l, dd;
            for (unsigned k = 1; k <= d; ++k)
                for (const Poly& p : monic_irreducible_polys(f, k)) {
                    if (d % k == 0)
                        bracket[p.to_string()] = 1;
                    l[p.to_string()] = d / k;
                    std::uint64_t nk = 0;
                    for (unsigned e = 1; e <= d / k; ++e) {
                        std::uint64_t pw = 1;
                        for (unsigned i = 0; i < d - e * k; ++i)
                            pw *= q;
                        nk += pw;
                    }
                    dd[p.to_string()] = static_cast<unsigned>(nk);
                }
            CHECK(as_map(factorize(c.bracket(d))) == bracket);
            CHECK(as_map(factorize(c.L(d))) == l);
            CHECK(as_map(factorize(c.D(d))) == dd);
        }
    }
}

TEST_CASE("congruences tying D and L")
{
    for (std::uint64_t q : {2, 3}) {
        CarlitzCache c(make_prime_field(q));
        const Field& f = c.field();
        for (unsigned d = 2; d <= 5; ++d) {
            const Poly b = c.bracket(d);
            const Poly lhs = rem(q_power_expand(c.D(d - 1), 1), b);
            const Poly l = rem(c.L(d - 1), b);
            CHECK(lhs == ((d - 1) % 2 ? -l : l));
        }
        for (unsigned d = 1; d <= 3; ++d) {
            const Poly fd = c.F(d);
            const Poly dd = c.D(d);
            for (const Poly& p : monic_irreducible_polys(f, d)) {
                if (q == 2)
                    continue;  // modulus p^{q-1} = p carries the same check as F_d = -1 mod p
                const Poly m = pow(p, q - 1);
                CHECK(rem(exact_div(dd, p), m) == rem(fd, m));
            }
        }
    }
}

TEST_CASE("translation invariance")
{
    for (const char* desc : {"2", "3", "4"}) {
        CarlitzCache c(parse_field(desc));
        const Field& f = c.field();
        for (Elem k = 0; k < f.order(); ++k) {
            const FieldElement s(f, k);
            for (unsigned n = 1; n <= 2; ++n) {
                CHECK(shift(c.bracket(n), s) == c.bracket(n));
                CHECK(shift(c.L(n), s) == c.L(n));
                CHECK(shift(c.D(n), s) == c.D(n));
            }
        }
    }
}

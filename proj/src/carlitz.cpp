#include "fqw/carlitz.hpp"

#include <fmt/format.h>

#include "fqw/errors.hpp"

namespace fqw {

BigNat degree_L(std::uint64_t q, unsigned n)
{
    BigNat sum = 0, pw = 1;
    for (unsigned i = 1; i <= n; ++i) {
        pw *= q;
        sum += pw;
    }
    return sum;
}

BigNat degree_D(std::uint64_t q, unsigned n)
{
    BigNat pw = 1;
    for (unsigned i = 0; i < n; ++i)
        pw *= q;
    return pw * n;
}

namespace {

BigNat big_power(std::uint64_t q, unsigned n)
{
    BigNat pw = 1;
    for (unsigned i = 0; i < n; ++i)
        pw *= q;
    return pw;
}

} // namespace

CarlitzCache::CarlitzCache(Field f, CarlitzBounds bounds) : field_(std::move(f)), bounds_(bounds)
{
    L_.emplace(0, Poly::constant(field_, 1));
    D_.emplace(0, Poly::constant(field_, 1));
}

void CarlitzCache::guard(const BigNat& degree, const char* what) const
{
    if (degree + 1 > bounds_.exact_degree_guard)
        throw BoundExceeded(fmt::format("{} has degree {}, above the exact-degree guard of {} coefficients",
                                        what, degree.str(), bounds_.exact_degree_guard));
}

void CarlitzCache::check_modulus(const Poly& m) const
{
    if (m.field() != field_)
        throw FieldMismatch("modulus is not over the cache's field");
    if (m.is_zero())
        throw DivisionByZero("zero modulus");
}

Poly CarlitzCache::bracket(unsigned n)
{
    if (n == 0)
        throw Error("[n] requires n >= 1");
    const BigNat qn = big_power(field_.order(), n);
    guard(qn, "[n]");
    return Poly::monomial(field_, 1, static_cast<std::size_t>(qn)) - Poly::t(field_);
}

Poly CarlitzCache::L(unsigned n)
{
    std::lock_guard lock(mu_);
    if (auto it = L_.find(n); it != L_.end())
        return it->second;
    guard(degree_L(field_.order(), n), "L_n");
    const Poly prev = L(n - 1);
    const std::size_t qn = static_cast<std::size_t>(big_power(field_.order(), n));
    Poly v = mul_by_binomial(prev, qn);
    L_.emplace(n, v);
    return v;
}

Poly CarlitzCache::D(unsigned n)
{
    std::lock_guard lock(mu_);
    if (auto it = D_.find(n); it != D_.end())
        return it->second;
    guard(degree_D(field_.order(), n), "D_n");
    const Poly prev = D(n - 1);
    const std::size_t qn = static_cast<std::size_t>(big_power(field_.order(), n));
    Poly v = mul_by_binomial(q_power_expand(prev, 1), qn);
    D_.emplace(n, v);
    return v;
}

Poly CarlitzCache::F(unsigned d)
{
    if (d == 0)
        throw Error("F_d requires d >= 1");
    Poly v = exact_div(D(d), L(d));
    return d % 2 ? -v : v;
}

Poly CarlitzCache::F_brute(unsigned d)
{
    if (d == 0)
        throw Error("F_d requires d >= 1");
    const BigNat n = big_power(field_.order(), d);
    if (n > bounds_.brute_bound)
        throw BoundExceeded(fmt::format("F_brute: q^d = {} exceeds the bound {}", n.str(), bounds_.brute_bound));
    const std::uint64_t q = field_.order();
    const std::uint64_t count = static_cast<std::uint64_t>(n);
    Poly acc = Poly::constant(field_, 1);
    std::vector<Elem> c(d);
    for (std::uint64_t idx = 1; idx < count; ++idx) {
        std::uint64_t v = idx;
        for (unsigned j = 0; j < d; ++j) {
            c[j] = static_cast<Elem>(v % q);
            v /= q;
        }
        acc = acc * Poly(field_, c);
    }
    return acc;
}

Poly CarlitzCache::F_mod(unsigned d, const Poly& m)
{
    if (d == 0)
        throw Error("F_d requires d >= 1");
    check_modulus(m);
    const BigNat n = big_power(field_.order(), d);
    if (n > bounds_.fmod_bound)
        throw BoundExceeded(fmt::format("F_mod: q^d = {} exceeds the bound {}", n.str(), bounds_.fmod_bound));
    const std::uint64_t q = field_.order();
    const std::uint64_t count = static_cast<std::uint64_t>(n);
    Poly acc = rem(Poly::constant(field_, 1), m);
    std::vector<Elem> c(d);
    for (std::uint64_t idx = 1; idx < count; ++idx) {
        std::uint64_t v = idx;
        for (unsigned j = 0; j < d; ++j) {
            c[j] = static_cast<Elem>(v % q);
            v /= q;
        }
        acc = mulmod(acc, Poly(field_, c), m);
    }
    return acc;
}

Poly CarlitzCache::bracket_mod(unsigned n, const Poly& m)
{
    if (n == 0)
        throw Error("[n] requires n >= 1");
    check_modulus(m);
    return rem(t_pow_q_pow_mod(n, m) - Poly::t(field_), m);
}

Poly CarlitzCache::L_mod(unsigned n, const Poly& m)
{
    check_modulus(m);
    const Poly t = Poly::t(field_);
    Poly acc = rem(Poly::constant(field_, 1), m);
    Poly h = rem(t, m);
    for (unsigned i = 1; i <= n && !acc.is_zero(); ++i) {
        h = frobenius_mod(h, m);
        acc = mulmod(acc, h - t, m);
    }
    return acc;
}

Poly CarlitzCache::D_mod(unsigned n, const Poly& m)
{
    check_modulus(m);
    const Poly t = Poly::t(field_);
    const BigNat q = field_.order();
    Poly acc = rem(Poly::constant(field_, 1), m);
    Poly h = rem(t, m);
    for (unsigned i = 1; i <= n; ++i) {
        h = frobenius_mod(h, m);
        acc = mulmod(h - t, powmod(acc, q, m), m);
    }
    return acc;
}

Poly CarlitzCache::wilson_sum_poly(unsigned d)
{
    if (d < 2)
        throw Error("wilson_sum_poly requires d >= 2");
    return -derivative(L(d - 1));
}

Poly CarlitzCache::wilson_sum_form(unsigned d)
{
    if (d < 2)
        throw Error("wilson_sum_form requires d >= 2");
    const Poly l = L(d - 1);
    Poly sum(field_);
    for (unsigned i = 1; i < d; ++i)
        sum += exact_div(l, bracket(i));
    return sum;
}

namespace {

Elem signed_c(const Field& f, PerturbationKind kind, unsigned d, Elem c)
{
    if (c == 0)
        throw ZeroC("perturbation constant must be nonzero");
    if (!f.contains(c))
        throw FieldMismatch(fmt::format("constant {} is not in the field", c));
    if (kind == PerturbationKind::LMinusC)
        return f.neg(c);
    return d % 2 ? f.neg(c) : c;
}

} // namespace

Poly CarlitzCache::perturbation(PerturbationKind kind, unsigned d, Elem c)
{
    if (d < 2)
        throw Error("perturbation requires d >= 2");
    const Elem s = signed_c(field_, kind, d, c);
    const Poly base = kind == PerturbationKind::LMinusC ? L(d - 1) : D(d - 1);
    return base + Poly::constant(field_, s);
}

Poly CarlitzCache::perturbation_mod(PerturbationKind kind, unsigned d, Elem c, const Poly& m)
{
    if (d < 2)
        throw Error("perturbation requires d >= 2");
    const Elem s = signed_c(field_, kind, d, c);
    const Poly base = kind == PerturbationKind::LMinusC ? L_mod(d - 1, m) : D_mod(d - 1, m);
    return rem(base + Poly::constant(field_, s), m);
}

} // namespace fqw

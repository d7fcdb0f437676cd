#include "fqw/factor.hpp"

#include <algorithm>
#include <map>

#include <fmt/format.h>

#include "fqw/errors.hpp"
#include "fqw/irr.hpp"
#include "fqw/rng.hpp"

namespace fqw {

namespace {

// g with g^p = f, for f whose exponents are all multiples of p.
Poly pth_root(const Poly& f)
{
    const Field& fld = f.field();
    const std::uint32_t p = fld.characteristic();
    const std::uint64_t e = fld.order() / p;  // (c^{q/p})^p = c
    std::vector<Elem> c(f.size() / p + 1, 0);
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (!f.coeff(i))
            continue;
        if (i % p)
            throw Error("pth_root: exponent not divisible by the characteristic");
        c[i / p] = fld.pow(f.coeff(i), e);
    }
    return Poly(fld, std::move(c));
}

void squarefree_into(const Poly& f, unsigned scale, std::map<unsigned, Poly>& out)
{
    if (f.is_constant())
        return;
    const Field& fld = f.field();
    Poly c = gcd(f, derivative(f));
    Poly w = exact_div(f, c);
    unsigned i = 1;
    while (!w.is_one()) {
        Poly y = gcd(w, c);
        Poly fac = exact_div(w, y);
        if (!fac.is_one()) {
            auto [it, fresh] = out.emplace(i * scale, fac);
            if (!fresh)
                it->second *= fac;
        }
        w = std::move(y);
        c = exact_div(c, w);
        ++i;
    }
    if (!c.is_one())
        squarefree_into(pth_root(c), scale * fld.characteristic(), out);
}

std::vector<Poly> sorted(std::vector<Poly> v)
{
    std::sort(v.begin(), v.end(), canonical_less);
    return v;
}

Poly random_below(const Field& fld, std::size_t n, SplitMix& rng)
{
    std::vector<Elem> c(n);
    for (auto& x : c)
        x = static_cast<Elem>(rng.below(fld.order()));
    return Poly(fld, std::move(c));
}

void edf_rec(const Poly& f, unsigned i, SplitMix& rng, std::vector<Poly>& out)
{
    const std::size_t n = f.degree().value();
    if (n == i) {
        out.push_back(f);
        return;
    }
    const Field& fld = f.field();
    const bool even = fld.characteristic() == 2;
    BigNat half;
    unsigned trace_len = 0;
    if (even) {
        trace_len = fld.absolute_degree() * i;
    } else {
        BigNat qi = 1;
        for (unsigned k = 0; k < i; ++k)
            qi *= fld.order();
        half = (qi - 1) / 2;
    }
    for (;;) {
        const Poly a = random_below(fld, n, rng);
        if (a.is_constant())
            continue;
        Poly b(fld);
        if (even) {
            Poly s = a;
            b = a;
            for (unsigned k = 1; k < trace_len; ++k) {
                s = mulmod(s, s, f);
                b += s;
            }
        } else {
            b = powmod(a, half, f) - Poly::constant(fld, 1);
        }
        const Poly g = gcd(f, b);
        if (g.is_zero() || g.is_one() || g.degree() == f.degree())
            continue;
        edf_rec(g, i, rng, out);
        edf_rec(exact_div(f, g), i, rng, out);
        return;
    }
}

void insert_sorted(std::vector<FactorEntry>& v)
{
    std::sort(v.begin(), v.end(),
              [](const FactorEntry& a, const FactorEntry& b) { return canonical_less(a.base, b.base); });
}

} // namespace

Poly Factorization::reconstruct() const
{
    const Field& fld = unit.field();
    Poly r = Poly::constant(fld, unit.code());
    for (const auto& [base, mult] : factors)
        r *= pow(base, mult);
    if (cofactor)
        r *= *cofactor;
    return r;
}

std::vector<std::pair<std::size_t, unsigned>> Factorization::degree_profile() const
{
    std::vector<std::pair<std::size_t, unsigned>> out;
    for (const auto& [base, mult] : factors)
        out.emplace_back(base.degree().value(), mult);
    return out;
}

std::vector<std::pair<Poly, unsigned>> squarefree_decomposition(const Poly& f)
{
    if (f.is_zero())
        throw Error("squarefree_decomposition of the zero polynomial");
    std::map<unsigned, Poly> parts;
    squarefree_into(f.monic(), 1, parts);
    std::vector<std::pair<Poly, unsigned>> out;
    for (auto& [m, part] : parts)
        out.emplace_back(std::move(part), m);
    return out;
}

std::vector<std::pair<Poly, unsigned>> ddf(const Poly& f)
{
    std::vector<std::pair<Poly, unsigned>> out;
    if (f.is_constant())
        return out;
    const Field& fld = f.field();
    const Poly t = Poly::t(fld);
    Poly rest = f.monic();
    Poly h = rem(t, rest);
    for (unsigned i = 1; 2 * i <= rest.degree().value(); ++i) {
        h = frobenius_mod(h, rest);
        const Poly g = gcd(rest, h - t);
        if (!g.is_one()) {
            out.emplace_back(g, i);
            rest = exact_div(rest, g);
            if (rest.is_one())
                return out;
            h = rem(h, rest);
        }
    }
    if (!rest.is_one())
        out.emplace_back(rest, static_cast<unsigned>(rest.degree().value()));
    return out;
}

std::vector<Poly> edf(const Poly& f, unsigned i, std::uint64_t seed)
{
    if (i == 0)
        throw Error("edf: degree must be >= 1");
    const std::size_t n = f.degree().value();
    if (n % i)
        throw Error(fmt::format("edf: degree {} is not a multiple of {}", n, i));
    SplitMix rng(hash_words(seed, f.coeffs(), i));
    std::vector<Poly> out;
    edf_rec(f.monic(), i, rng, out);
    return sorted(std::move(out));
}

Factorization factorize(const Poly& f, std::uint64_t seed)
{
    if (f.is_zero())
        throw Error("factorize: zero polynomial");
    const Field& fld = f.field();
    Factorization fz{FieldElement(fld, f.lead()), {}, std::nullopt, std::nullopt};
    for (const auto& [part, mult] : squarefree_decomposition(f))
        for (const auto& [block, deg] : ddf(part))
            for (Poly& base : edf(block, deg, seed))
                fz.factors.push_back({std::move(base), mult});
    insert_sorted(fz.factors);
    for (const auto& e : fz.factors)
        if (!is_irreducible(e.base))
            throw Error("factorize: internal error, reducible factor " + e.base.to_string());
    if (fz.reconstruct() != f)
        throw Error("factorize: internal error, product does not reconstruct the input");
    return fz;
}

Factorization trial_division(const Poly& f, unsigned max_degree, std::uint64_t seed, std::size_t cofactor_check_bound)
{
    if (f.is_zero())
        throw Error("trial_division: zero polynomial");
    const Field& fld = f.field();
    const std::uint64_t q = fld.order();
    Factorization fz{FieldElement(fld, f.lead()), {}, std::nullopt, std::nullopt};
    Poly rest = f.monic();
    const Poly t = Poly::t(fld);
    Poly h = rest.is_constant() ? t : rem(t, rest);
    long double qk = 1;
    for (unsigned k = 1; k <= max_degree && 2 * k <= rest.degree().value(); ++k) {
        qk *= static_cast<long double>(q);
        // t^{q^k} mod rest, advanced incrementally.
        h = frobenius_mod(h, rest);
        Poly g(fld);
        if (qk <= static_cast<long double>(rest.degree().value())) {
            // [k] is the smaller operand: fold rest modulo it instead.
            const std::size_t n = static_cast<std::size_t>(qk);
            const Poly bracket = Poly::monomial(fld, 1, n) - t;
            g = gcd(bracket, reduce_mod_binomial(rest, n));
        } else {
            g = gcd(rest, h - t);
        }
        if (g.is_one())
            continue;
        // Factors of degree < k are gone, so g is the square-free product of
        // the degree-k factors.
        for (Poly& base : edf(g, k, seed)) {
            unsigned m = 0;
            for (;;) {
                auto [quot, r] = divrem(rest, base);
                if (!r.is_zero())
                    break;
                rest = std::move(quot);
                ++m;
            }
            fz.factors.push_back({std::move(base), m});
        }
        if (rest.is_constant())
            break;
        h = rem(h, rest);
    }
    if (!rest.is_one()) {
        const std::size_t dr = rest.degree().value();
        if (dr < 2 * (std::size_t{max_degree} + 1)) {
            // Every factor has degree > max_degree, so at most one exists.
            fz.factors.push_back({rest, 1});
        } else {
            if (dr <= cofactor_check_bound)
                fz.cofactor_irreducible = is_irreducible(rest);
            fz.cofactor = std::move(rest);
        }
    }
    insert_sorted(fz.factors);
    return fz;
}

nlohmann::json to_json(const Factorization& fz)
{
    nlohmann::json j;
    j["unit"] = fz.unit.code();
    j["factors"] = nlohmann::json::array();
    for (const auto& [base, mult] : fz.factors)
        j["factors"].push_back({{"poly", base.to_string()}, {"mult", mult}});
    if (fz.cofactor) {
        j["cofactor"] = fz.cofactor->to_string();
        if (fz.cofactor_irreducible)
            j["cofactor_irreducible"] = *fz.cofactor_irreducible;
        else
            j["cofactor_irreducible"] = "unchecked";
    } else {
        j["cofactor"] = nullptr;
        j["cofactor_irreducible"] = nullptr;
    }
    return j;
}

} // namespace fqw

#include "fqw/deriv.hpp"

#include <fmt/format.h>

#include "fqw/errors.hpp"

namespace fqw {

namespace {

// prime^k over F_q.
Poly prime_power(const PrimeContext& ctx, unsigned k) { return pow(ctx.prime, k); }

// x^{q^d} mod m for x over F_q: d applications of the q-power map.
Poly norm_power_mod(const Poly& x, const PrimeContext& ctx, const Poly& m)
{
    Poly h = rem(x, m);
    for (unsigned i = 0; i < ctx.degree(); ++i)
        h = frobenius_mod(h, m);
    return h;
}

// x^{q^d} mod m for x over the residue field E: coefficients of E are fixed by
// the q^d-power map, so x^{q^d} = sum c_i T^i with T = t^{q^d} mod m.
Poly norm_power_mod_ext(const Poly& x, const PrimeContext& ctx, const Poly& m_base)
{
    const Field& e = ctx.residue_field;
    const Poly T = embed(norm_power_mod(Poly::t(m_base.field()), ctx, m_base), e);
    const Poly m = embed(m_base, e);
    Poly acc(e);
    for (std::size_t i = x.size(); i-- > 0;)
        acc = rem(acc * T + Poly::constant(e, x.coeff(i)), m);
    return acc;
}

void check_base(const Poly& a, const PrimeContext& ctx)
{
    if (a.field() != ctx.base_field() && a.field() != ctx.residue_field)
        throw FieldMismatch("argument is neither over F_q nor over the residue field");
}

} // namespace

Poly fermat_quotient(const Poly& a, const PrimeContext& ctx, std::uint64_t guard)
{
    check_base(a, ctx);
    if (a.is_constant())
        return Poly(a.field());
    const long double size = static_cast<long double>(a.degree().value()) * static_cast<long double>(ctx.norm) + 1;
    if (size > static_cast<long double>(guard))
        throw BoundExceeded(fmt::format("exact Fermat quotient would have {:.0Lf} coefficients (guard {})", size,
                                        guard));
    const bool over_base = a.field() == ctx.base_field();
    const Poly pw = over_base ? q_power_expand(a, ctx.degree()) : q_power_expand(a, 1, ctx.norm);
    const Poly p = over_base ? ctx.prime : embed(ctx.prime, ctx.residue_field);
    try {
        return exact_div(pw - a, p);
    } catch (const NotDivisible&) {
        throw Error("internal error: a^(q^d) - a is not divisible by the prime");
    }
}

Poly fermat_quotient_mod(const Poly& a, const PrimeContext& ctx, unsigned k)
{
    check_base(a, ctx);
    if (k == 0)
        throw Error("fermat_quotient_mod requires k >= 1");
    const Poly m = prime_power(ctx, k + 1);
    const bool over_base = a.field() == ctx.base_field();
    const Poly pw = over_base ? norm_power_mod(a, ctx, m) : norm_power_mod_ext(a, ctx, m);
    const Poly mm = over_base ? m : embed(m, ctx.residue_field);
    const Poly p = over_base ? ctx.prime : embed(ctx.prime, ctx.residue_field);
    const Poly diff = rem(pw - rem(a, mm), mm);
    return exact_div(diff, p);
}

Poly fermat_quotient_iter(const Poly& a, const PrimeContext& ctx, unsigned i, unsigned modulo_k, std::uint64_t guard)
{
    Poly cur = a;
    for (unsigned step = 1; step <= i; ++step)
        cur = modulo_k == 0 ? fermat_quotient(cur, ctx, guard)
                            : fermat_quotient_mod(cur, ctx, modulo_k + i - step);
    if (modulo_k && i == 0)
        cur = rem(cur, prime_power(ctx, modulo_k));
    return cur;
}

Poly delta(const Poly& a, const PrimeContext& ctx, unsigned i)
{
    check_base(a, ctx);
    Poly cur = embed(a, ctx.residue_field);
    for (unsigned s = 0; s < i; ++s) {
        auto [q, r] = synth_div(cur, ctx.theta);
        cur = std::move(q);
    }
    return cur;
}

FieldElement delta_at_theta(const Poly& a, const PrimeContext& ctx, unsigned i)
{
    return eval(delta(a, ctx, i), ctx.theta);
}

std::string label(Mixed m)
{
    switch (m) {
    case Mixed::I_II: return "i-ii";
    case Mixed::I_II_P: return "i-ii'";
    case Mixed::II_I: return "ii-i";
    case Mixed::II_I_P: return "ii-i'";
    case Mixed::I_III: return "i-iii";
    case Mixed::III_I: return "iii-i";
    case Mixed::II_III: return "ii-iii";
    case Mixed::III_II: return "iii-ii";
    }
    return "?";
}

bool is_zero(const DerivValue& v)
{
    if (const Poly* p = std::get_if<Poly>(&v))
        return p->is_zero();
    return std::get<FieldElement>(v).is_zero();
}

DerivValue mixed(Mixed form, const PrimeContext& ctx, bool exact, std::uint64_t guard)
{
    const Poly& p = ctx.prime;
    const Poly t = Poly::t(p.field());
    // Q(x) for x over F_q, correct modulo prime^2 (or exact).
    auto Q2 = [&](const Poly& x) { return exact ? fermat_quotient(x, ctx, guard) : fermat_quotient_mod(x, ctx, 2); };
    auto Q1 = [&](const Poly& x) { return exact ? rem(fermat_quotient(x, ctx, guard), p) : fermat_quotient_mod(x, ctx, 1); };
    switch (form) {
    case Mixed::I_II:
        return rem(derivative(Q2(t)), p);
    case Mixed::I_II_P:
        return eval(derivative(Q2(t)), ctx.theta);
    case Mixed::II_I:
        return Q1(derivative(p));
    case Mixed::II_I_P:
        return eval(Q1(derivative(p)), ctx.theta);
    case Mixed::I_III:
        return eval(derivative(delta(p, ctx, 1)), ctx.theta);
    case Mixed::III_I:
        return delta_at_theta(derivative(p), ctx, 1);
    case Mixed::II_III: {
        const Poly x = delta(p, ctx, 1);
        const Poly q = exact ? fermat_quotient(x, ctx, guard) : fermat_quotient_mod(x, ctx, 1);
        return eval(q, ctx.theta);
    }
    case Mixed::III_II:
        return delta_at_theta(Q2(t), ctx, 1);
    }
    throw Error("unknown mixed form");
}

DerivReport deriv_report(const Poly& a, const PrimeContext& ctx, unsigned order)
{
    DerivReport r{ctx, a, {}};
    for (unsigned i = 1; i <= order; ++i) {
        r.values.emplace(fmt::format("D^{}", i), derivative(a, i));
        r.values.emplace(fmt::format("Q^{} mod p", i), fermat_quotient_iter(a, ctx, i, 1));
        r.values.emplace(fmt::format("Delta^{} at theta", i), delta_at_theta(a, ctx, i));
    }
    return r;
}

nlohmann::json to_json(const DerivValue& v)
{
    if (const Poly* p = std::get_if<Poly>(&v))
        return {{"poly", p->to_string()}};
    const FieldElement& e = std::get<FieldElement>(v);
    return {{"element", e.code()}};
}

nlohmann::json to_json(const DerivReport& r)
{
    nlohmann::json j;
    j["field"] = r.context.base_field().descriptor();
    j["prime"] = r.context.prime.to_string();
    j["input"] = r.input.to_string();
    j["theta"] = r.context.theta.code();
    j["values"] = nlohmann::json::object();
    for (const auto& [k, v] : r.values)
        j["values"][k] = to_json(v);
    return j;
}

} // namespace fqw

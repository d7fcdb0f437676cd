#include "fqw/congruence.hpp"

#include <fmt/format.h>

#include "fqw/deriv.hpp"
#include "fqw/errors.hpp"

namespace fqw {

namespace {

void enforce_unanimity(const ConditionSuite& s)
{
    if (s.unanimous())
        return;
    std::string detail;
    for (const auto& [k, v] : s.verdicts)
        detail += fmt::format(" {}={}", k, v);
    throw EquivalenceViolation(fmt::format("{} conditions disagree for prime {}:{}",
                                           s.kind == SuiteKind::Wieferich ? "Wieferich" : "Wilson",
                                           s.prime.to_string(), detail));
}

BigNat norm_of(const PrimeContext& ctx) { return BigNat(ctx.norm); }

} // namespace

bool ConditionSuite::unanimous() const
{
    for (const auto& [k, v] : verdicts)
        if (v != verdicts.front().second)
            return false;
    return true;
}

std::optional<bool> ConditionSuite::verdict() const
{
    if (verdicts.empty())
        return std::nullopt;
    return verdicts.front().second;
}

std::optional<bool> ConditionSuite::get(const std::string& label) const
{
    for (const auto& [k, v] : verdicts)
        if (k == label)
            return v;
    return std::nullopt;
}

ConditionSuite wieferich_suite(const PrimeContext& ctx, const Poly& a)
{
    if (a.field() != ctx.base_field())
        throw FieldMismatch("base must lie over the prime's field");
    const Poly& p = ctx.prime;
    const Poly p2 = p * p;
    ConditionSuite s{p, SuiteKind::Wieferich, a, {}, {}, false};
    s.verdicts.emplace_back("def", powmod(a, norm_of(ctx), p2) == rem(a, p2));
    const Poly da = derivative(a);
    s.verdicts.emplace_back("i", rem(da, p).is_zero());
    s.verdicts.emplace_back("i'", eval(da, ctx.theta).is_zero());
    const Poly q1 = fermat_quotient_mod(a, ctx, 1);
    s.verdicts.emplace_back("ii", q1.is_zero());
    s.verdicts.emplace_back("ii'", eval(q1, ctx.theta).is_zero());
    s.verdicts.emplace_back("iii", delta_at_theta(a, ctx, 1).is_zero());
    enforce_unanimity(s);
    return s;
}

ConditionSuite wilson_suite(const PrimeContext& ctx, CarlitzCache& cache, const WilsonOptions& opts)
{
    const Poly& p = ctx.prime;
    const Field& f = p.field();
    if (cache.field() != f)
        throw FieldMismatch("Carlitz cache is over a different field");
    const unsigned d = ctx.degree();
    ConditionSuite s{p, SuiteKind::Wilson, std::nullopt, {}, {}, f.characteristic() == 2};
    if (ctx.norm <= opts.def_bound) {
        const Poly fm = cache.F_mod(d, p * p);
        s.verdicts.emplace_back("def", fm == Poly::constant(f, f.neg(1)));
    } else {
        s.skipped.push_back("def");
    }
    if (s.definition_only)
        return s;

    const Poly d2 = derivative(p, 2);
    s.verdicts.emplace_back("i", d2.is_zero());
    s.verdicts.emplace_back("i'", rem(d2, p).is_zero());
    s.verdicts.emplace_back("i''", eval(d2, ctx.theta).is_zero());
    const Poly q2 = fermat_quotient_iter(Poly::t(f), ctx, 2, 1);
    s.verdicts.emplace_back("ii", q2.is_zero());
    s.verdicts.emplace_back("ii'", eval(q2, ctx.theta).is_zero());
    s.verdicts.emplace_back("iii", delta_at_theta(p, ctx, 2).is_zero());
    for (Mixed m : kAllMixed)
        s.verdicts.emplace_back(label(m), is_zero(mixed(m, ctx)));
    if (opts.enforce)
        enforce_unanimity(s);
    return s;
}

bool is_wilson_fast(const Poly& prime)
{
    if (prime.field().characteristic() == 2)
        throw Error("the second-derivative criterion needs p > 2");
    return derivative(prime, 2).is_zero();
}

std::string to_string(BaseTag tag)
{
    switch (tag) {
    case BaseTag::AllPrimesWieferich: return "AllPrimesWieferich";
    case BaseTag::NoWieferichPrimes: return "NoWieferichPrimes";
    case BaseTag::Generic: return "Generic";
    }
    return "?";
}

std::optional<Poly> pth_root_if_power(const Poly& a)
{
    const Field& f = a.field();
    const std::uint32_t p = f.characteristic();
    const std::uint64_t e = f.order() / p;
    std::vector<Elem> c(a.size() / p + 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a.coeff(i))
            continue;
        if (i % p)
            return std::nullopt;
        c[i / p] = f.pow(a.coeff(i), e);
    }
    return Poly(f, std::move(c));
}

BaseClass classify_base(const Poly& a)
{
    if (auto b = pth_root_if_power(a))
        return {BaseTag::AllPrimesWieferich, std::move(b), std::nullopt};
    const Elem c = a.coeff(1);
    if (c != 0) {
        const Poly rest = a - Poly::monomial(a.field(), c, 1);
        if (auto b = pth_root_if_power(rest))
            return {BaseTag::NoWieferichPrimes, std::move(b), c};
    }
    return {BaseTag::Generic, std::nullopt, std::nullopt};
}

Multiplicity capped_valuation(const Poly& r, const Poly& prime, unsigned cap)
{
    if (r.is_zero())
        return {cap, true};
    const unsigned v = valuation(r, prime, cap + 1);
    return {std::min(v, cap), v > cap};
}

Multiplicity wilson_multiplicity(const PrimeContext& ctx, CarlitzCache& cache)
{
    const Poly& p = ctx.prime;
    const Field& f = p.field();
    const unsigned cap = f.characteristic() + 2;
    const Poly m = pow(p, cap + 1);
    return capped_valuation(rem(cache.F_mod(ctx.degree(), m) + Poly::constant(f, 1), m), p, cap);
}

bool coefficient_characterization(const Poly& prime)
{
    const std::uint32_t p = prime.field().characteristic();
    for (std::size_t i = 0; i < prime.size(); ++i)
        if (prime.coeff(i) && i % p != 0 && (i + p - 1) % p != 0)
            return false;
    return true;
}

bool is_special_wilson(const Poly& prime, Elem c)
{
    const Field& f = prime.field();
    if (c == 0)
        throw ZeroC("special Wilson constant must be nonzero");
    if (prime.is_zero())
        return false;
    const unsigned d = static_cast<unsigned>(prime.degree().value());
    const Elem target = (d - 1) % 2 ? f.neg(c) : c;
    const bool by_derivative = derivative(prime) == Poly::constant(f, target);
    const bool by_shape = pth_root_if_power(prime - Poly::monomial(f, target, 1)).has_value();
    if (by_derivative != by_shape)
        throw EquivalenceViolation("special Wilson characterizations disagree for " + prime.to_string());
    return by_derivative;
}

unsigned prime_valuation(const Poly& f, const Poly& prime) { return valuation(f, prime); }

nlohmann::json to_json(const ConditionSuite& s)
{
    nlohmann::json j;
    j["prime"] = s.prime.to_string();
    j["kind"] = s.kind == SuiteKind::Wieferich ? "wieferich" : "wilson";
    if (s.base)
        j["base"] = s.base->to_string();
    j["verdicts"] = nlohmann::json::object();
    for (const auto& [k, v] : s.verdicts)
        j["verdicts"][k] = v;
    j["unanimous"] = s.unanimous();
    j["skipped"] = s.skipped;
    if (s.definition_only)
        j["definition_only"] = true;
    return j;
}

nlohmann::json to_json(const BaseClass& b)
{
    nlohmann::json j;
    j["tag"] = to_string(b.tag);
    if (b.b)
        j["b"] = b.b->to_string();
    if (b.c)
        j["c"] = *b.c;
    return j;
}

} // namespace fqw

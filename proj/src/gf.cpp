#include "fqw/gf.hpp"

#include <mutex>

#include <fmt/format.h>

#include "fqw/errors.hpp"
#include "fqw/irr.hpp"
#include "fqw/poly.hpp"

namespace fqw {

namespace detail {

struct FieldData {
    enum class Kind { Prime, Binary, Small, Generic };

    std::uint32_t p = 0;
    std::uint64_t order = 0;
    unsigned degree = 1;
    unsigned abs_degree = 1;
    unsigned level = 0;
    std::shared_ptr<const FieldData> base;
    std::uint64_t base_order = 1;
    std::vector<Elem> modulus;
    Kind kind = Kind::Prime;
    // Binary kind: modulus as a bit mask including the leading bit.
    std::uint64_t binary_modulus = 0;
    std::string key;

    mutable std::once_flag tables_once;
    mutable std::vector<Elem> exp_table;
    mutable std::vector<Elem> log_table;
};

} // namespace detail

namespace {

using detail::FieldData;

// Extensions up to this order get exp/log tables.
constexpr std::uint64_t kTableOrder = 4096;

Elem add_digits(std::uint32_t p, Elem a, Elem b)
{
    Elem r = 0;
    Elem m = 1;
    while (a | b) {
        r += ((a % p + b % p) % p) * m;
        a /= p;
        b /= p;
        m *= p;
    }
    return r;
}

Elem neg_digits(std::uint32_t p, Elem a)
{
    Elem r = 0;
    Elem m = 1;
    while (a) {
        const Elem d = a % p;
        r += (d ? p - d : 0) * m;
        a /= p;
        m *= p;
    }
    return r;
}

Elem f_add(const FieldData& f, Elem a, Elem b);
Elem f_neg(const FieldData& f, Elem a);
Elem f_mul(const FieldData& f, Elem a, Elem b);

std::vector<Elem> decode_digits(const FieldData& f, Elem code)
{
    std::vector<Elem> out(f.degree);
    for (unsigned i = 0; i < f.degree; ++i) {
        out[i] = static_cast<Elem>(code % f.base_order);
        code = static_cast<Elem>(code / f.base_order);
    }
    return out;
}

Elem encode_digits(const FieldData& f, std::span<const Elem> c)
{
    std::uint64_t code = 0;
    for (std::size_t i = c.size(); i-- > 0;)
        code = code * f.base_order + c[i];
    return static_cast<Elem>(code);
}

Elem mul_generic(const FieldData& f, Elem a, Elem b)
{
    const FieldData& base = *f.base;
    const unsigned k = f.degree;
    const auto x = decode_digits(f, a);
    const auto y = decode_digits(f, b);
    std::vector<Elem> r(2 * k - 1, 0);
    for (unsigned i = 0; i < k; ++i) {
        if (!x[i])
            continue;
        for (unsigned j = 0; j < k; ++j)
            if (y[j])
                r[i + j] = f_add(base, r[i + j], f_mul(base, x[i], y[j]));
    }
    for (std::size_t i = r.size(); i-- > k;) {
        const Elem c = r[i];
        if (!c)
            continue;
        r[i] = 0;
        for (unsigned j = 0; j < k; ++j)
            if (f.modulus[j])
                r[i - k + j] = f_add(base, r[i - k + j], f_neg(base, f_mul(base, c, f.modulus[j])));
    }
    r.resize(k);
    return encode_digits(f, r);
}

Elem mul_binary(const FieldData& f, Elem a, Elem b)
{
    std::uint64_t prod = 0;
    for (unsigned i = 0; b >> i; ++i)
        if ((b >> i) & 1)
            prod ^= std::uint64_t{a} << i;
    const unsigned k = f.degree;
    for (unsigned i = 2 * k; i-- > k;)
        if ((prod >> i) & 1)
            prod ^= f.binary_modulus << (i - k);
    return static_cast<Elem>(prod);
}

Elem pow_with(const FieldData& f, Elem a, std::uint64_t e, Elem (*mul)(const FieldData&, Elem, Elem))
{
    Elem result = 1;
    while (e) {
        if (e & 1)
            result = mul(f, result, a);
        e >>= 1;
        if (e)
            a = mul(f, a, a);
    }
    return result;
}

std::vector<std::uint64_t> prime_divisors(std::uint64_t n)
{
    std::vector<std::uint64_t> out;
    for (std::uint64_t r = 2; r * r <= n; ++r) {
        if (n % r)
            continue;
        out.push_back(r);
        while (n % r == 0)
            n /= r;
    }
    if (n > 1)
        out.push_back(n);
    return out;
}

void build_tables(const FieldData& f)
{
    const std::uint64_t n = f.order - 1;
    const auto divisors = prime_divisors(n);
    Elem g = 0;
    for (Elem c = 1; c < f.order; ++c) {
        bool primitive = true;
        for (auto r : divisors)
            if (pow_with(f, c, n / r, mul_generic) == 1) {
                primitive = false;
                break;
            }
        if (primitive) {
            g = c;
            break;
        }
    }
    f.exp_table.resize(n);
    f.log_table.assign(f.order, 0);
    Elem x = 1;
    for (std::uint64_t i = 0; i < n; ++i) {
        f.exp_table[i] = x;
        f.log_table[x] = static_cast<Elem>(i);
        x = mul_generic(f, x, g);
    }
}

Elem f_add(const FieldData& f, Elem a, Elem b)
{
    if (f.p == 2)
        return a ^ b;
    if (f.kind == FieldData::Kind::Prime) {
        const std::uint64_t s = std::uint64_t{a} + b;
        return static_cast<Elem>(s >= f.p ? s - f.p : s);
    }
    return add_digits(f.p, a, b);
}

Elem f_neg(const FieldData& f, Elem a)
{
    if (f.p == 2)
        return a;
    if (f.kind == FieldData::Kind::Prime)
        return a ? f.p - a : 0;
    return neg_digits(f.p, a);
}

Elem f_mul(const FieldData& f, Elem a, Elem b)
{
    switch (f.kind) {
    case FieldData::Kind::Prime:
        return static_cast<Elem>((std::uint64_t{a} * b) % f.p);
    case FieldData::Kind::Binary:
        return mul_binary(f, a, b);
    case FieldData::Kind::Small: {
        if (!a || !b)
            return 0;
        std::call_once(f.tables_once, [&f] { build_tables(f); });
        std::uint64_t idx = std::uint64_t{f.log_table[a]} + f.log_table[b];
        const std::uint64_t n = f.order - 1;
        if (idx >= n)
            idx -= n;
        return f.exp_table[idx];
    }
    case FieldData::Kind::Generic:
        break;
    }
    return mul_generic(f, a, b);
}

Elem f_inv(const FieldData& f, Elem a)
{
    if (a == 0)
        throw DivisionByZero("inverse of zero");
    if (f.kind == FieldData::Kind::Small) {
        std::call_once(f.tables_once, [&f] { build_tables(f); });
        const std::uint64_t n = f.order - 1;
        return f.exp_table[(n - f.log_table[a]) % n];
    }
    return pow_with(f, a, f.order - 2, f_mul);
}

} // namespace

// ---------------------------------------------------------------------------
// Field

std::uint32_t Field::characteristic() const { return d_->p; }
std::uint64_t Field::order() const { return d_->order; }
unsigned Field::degree() const { return d_->degree; }
unsigned Field::absolute_degree() const { return d_->abs_degree; }
unsigned Field::level() const { return d_->level; }
std::uint64_t Field::base_order() const { return d_->base_order; }
std::span<const Elem> Field::modulus() const { return d_->modulus; }

std::optional<Field> Field::base() const
{
    if (!d_->base)
        return std::nullopt;
    return Field(d_->base);
}

Elem Field::generator() const
{
    if (d_->level == 0)
        return 1;
    if (d_->degree == 1)
        return f_neg(*d_->base, d_->modulus[0]);
    return static_cast<Elem>(d_->base_order);
}

Elem Field::add(Elem a, Elem b) const { return f_add(*d_, a, b); }
Elem Field::neg(Elem a) const { return f_neg(*d_, a); }
Elem Field::sub(Elem a, Elem b) const { return f_add(*d_, a, f_neg(*d_, b)); }
Elem Field::mul(Elem a, Elem b) const { return f_mul(*d_, a, b); }
Elem Field::inv(Elem a) const { return f_inv(*d_, a); }
Elem Field::pow(Elem a, std::uint64_t e) const { return pow_with(*d_, a, e, f_mul); }

Elem Field::pow(Elem a, const BigNat& e) const
{
    if (e == 0)
        return 1;
    if (a == 0)
        return 0;
    // Nonzero elements have order dividing order - 1.
    BigNat r = e % (d_->order - 1);
    return pow(a, static_cast<std::uint64_t>(r));
}

Elem Field::from_int(long long v) const
{
    const long long p = d_->p;
    long long r = v % p;
    if (r < 0)
        r += p;
    return static_cast<Elem>(r);
}

std::vector<Elem> Field::decode(Elem code) const
{
    if (d_->level == 0)
        return {code};
    return decode_digits(*d_, code);
}

Elem Field::encode(std::span<const Elem> coeffs) const
{
    if (d_->level == 0)
        return coeffs.empty() ? 0 : coeffs[0];
    return encode_digits(*d_, coeffs);
}

bool Field::is_subfield_of(const Field& other) const
{
    for (auto cur = other.d_; cur; cur = cur->base)
        if (cur == d_ || cur->key == d_->key)
            return true;
    return false;
}

std::string Field::descriptor() const { return d_->key; }

bool operator==(const Field& a, const Field& b)
{
    return a.d_ == b.d_ || a.d_->key == b.d_->key;
}

// ---------------------------------------------------------------------------
// Construction

bool is_prime_number(std::uint64_t n)
{
    if (n < 2)
        return false;
    for (std::uint64_t r = 2; r * r <= n; ++r)
        if (n % r == 0)
            return false;
    return true;
}

Field make_prime_field(std::uint64_t p)
{
    if (!is_prime_number(p) || p >= (std::uint64_t{1} << 31))
        throw NotPrime(fmt::format("{} is not a supported prime", p));
    auto d = std::make_shared<FieldData>();
    d->p = static_cast<std::uint32_t>(p);
    d->order = p;
    d->kind = FieldData::Kind::Prime;
    d->key = std::to_string(p);
    return Field(std::move(d));
}

namespace detail {

Field build_extension(const Field& base, const Poly& modulus, bool verify)
{
    if (modulus.field() != base)
        throw FieldMismatch("modulus is not over the given base field");
    if (modulus.is_zero() || modulus.is_constant())
        throw Reducible("modulus must have degree >= 1");
    if (!modulus.is_monic())
        throw NotMonic("modulus must be monic: " + modulus.to_string());
    if (base.level() >= 2)
        throw BoundExceeded("tower height is capped at two levels above the prime field");
    const unsigned k = static_cast<unsigned>(modulus.degree().value());
    long double approx = 1;
    for (unsigned i = 0; i < k; ++i)
        approx *= static_cast<long double>(base.order());
    if (approx >= 4294967296.0L)
        throw BoundExceeded(fmt::format("field of order {}^{} exceeds the element code range",
                                        base.order(), k));
    if (verify && !is_irreducible(modulus))
        throw Reducible("modulus is reducible: " + modulus.to_string());

    auto d = std::make_shared<FieldData>();
    d->p = base.characteristic();
    d->degree = k;
    d->abs_degree = base.absolute_degree() * k;
    d->level = base.level() + 1;
    d->base_order = base.order();
    d->order = 1;
    for (unsigned i = 0; i < k; ++i)
        d->order *= base.order();
    d->modulus.assign(modulus.coeffs().begin(), modulus.coeffs().end());
    d->base = base.d_;
    if (base.is_prime_field() && base.characteristic() == 2) {
        d->kind = FieldData::Kind::Binary;
        for (unsigned i = 0; i <= k; ++i)
            if (d->modulus[i])
                d->binary_modulus |= std::uint64_t{1} << i;
    } else if (d->order <= kTableOrder) {
        d->kind = FieldData::Kind::Small;
    } else {
        d->kind = FieldData::Kind::Generic;
    }
    if (base.is_prime_field())
        d->key = fmt::format("{}^{}:{}", base.characteristic(), k, modulus.to_string());
    else
        d->key = fmt::format("{}/{}", base.descriptor(), modulus.to_string());
    return Field(std::move(d));
}

} // namespace detail

Field make_extension(const Field& base, const Poly& modulus)
{
    return detail::build_extension(base, modulus, true);
}

Field make_extension_preverified(const Field& base, const Poly& modulus)
{
    return detail::build_extension(base, modulus, false);
}

Poly default_modulus(std::uint64_t p, unsigned k)
{
    if (k == 0)
        throw Error("default_modulus: degree must be >= 1");
    const Field fp = make_prime_field(p);
    std::uint64_t count = 1;
    for (unsigned i = 0; i < k; ++i)
        count *= p;
    std::vector<Elem> c(k + 1, 0);
    c[k] = 1;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        std::uint64_t v = idx;
        for (unsigned j = 0; j < k; ++j) {
            c[j] = static_cast<Elem>(v % p);
            v /= p;
        }
        Poly f(fp, c);
        if (is_irreducible(f))
            return f;
    }
    throw Error("no irreducible polynomial found"); // unreachable
}

Field parse_field(const std::string& descriptor)
{
    const auto colon = descriptor.find(':');
    const std::string head = descriptor.substr(0, colon);
    std::uint64_t p = 0;
    unsigned k = 0;
    try {
        const auto caret = head.find('^');
        if (caret != std::string::npos) {
            p = std::stoull(head.substr(0, caret));
            k = static_cast<unsigned>(std::stoul(head.substr(caret + 1)));
        } else {
            std::uint64_t n = std::stoull(head);
            for (std::uint64_t r = 2; r <= n; ++r)
                if (n % r == 0) {
                    p = r;
                    break;
                }
            k = 0;
            std::uint64_t m = n;
            while (p > 1 && m % p == 0) {
                m /= p;
                ++k;
            }
            if (m != 1 || p < 2)
                throw NotPrime(fmt::format("field order {} is not a prime power", n));
        }
    } catch (const std::logic_error&) {
        throw ParseError("bad field descriptor: '" + descriptor + "'");
    }
    if (k == 0)
        throw ParseError("bad field descriptor: '" + descriptor + "'");
    const Field fp = make_prime_field(p);
    if (k == 1) {
        if (colon != std::string::npos)
            throw ParseError("a prime field takes no modulus: '" + descriptor + "'");
        return fp;
    }
    if (colon != std::string::npos) {
        Poly m = Poly::parse(fp, descriptor.substr(colon + 1));
        if (m.degree() != Degree(k))
            throw ParseError(fmt::format("modulus degree {} does not match {}^{}",
                                         m.degree().to_string(), p, k));
        return make_extension(fp, m);
    }
    return make_extension(fp, default_modulus(p, k));
}

// ---------------------------------------------------------------------------
// FieldElement

FieldElement::FieldElement(Field f, Elem code) : field_(std::move(f)), code_(code)
{
    if (!field_.contains(code_))
        throw Error(fmt::format("element code {} out of range for field of order {}", code_,
                                field_.order()));
}

namespace {
void same_field(const FieldElement& a, const FieldElement& b)
{
    if (a.field() != b.field())
        throw FieldMismatch("field elements from different fields");
}
} // namespace

FieldElement operator+(const FieldElement& a, const FieldElement& b)
{
    same_field(a, b);
    return {a.field(), a.field().add(a.code(), b.code())};
}
FieldElement operator-(const FieldElement& a, const FieldElement& b)
{
    same_field(a, b);
    return {a.field(), a.field().sub(a.code(), b.code())};
}
FieldElement operator*(const FieldElement& a, const FieldElement& b)
{
    same_field(a, b);
    return {a.field(), a.field().mul(a.code(), b.code())};
}
FieldElement operator/(const FieldElement& a, const FieldElement& b)
{
    same_field(a, b);
    return {a.field(), a.field().div(a.code(), b.code())};
}

FieldElement frobenius(const FieldElement& x, unsigned i, std::uint64_t base_order)
{
    Elem v = x.code();
    for (unsigned k = 0; k < i; ++k)
        v = x.field().pow(v, base_order);
    return {x.field(), v};
}

} // namespace fqw

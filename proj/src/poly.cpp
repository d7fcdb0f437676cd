#include "fqw/poly.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <stdexcept>

#include <fmt/format.h>

#include "fqw/errors.hpp"
#include "fqw/gf2x.hpp"

namespace fqw {

std::size_t Degree::value() const
{
    if (!finite_)
        throw std::logic_error("degree of the zero polynomial is NEG_INF");
    return v_;
}

std::string Degree::to_string() const
{
    return finite_ ? std::to_string(v_) : std::string("NEG_INF");
}

namespace {

using Coeffs = std::vector<Elem>;
using CSpan = std::span<const Elem>;

bool packable(const Field& f, std::size_t a, std::size_t b)
{
    return f.order() == 2 && std::min(a, b) >= kGf2PackThreshold;
}

gf2x::BitPoly pack(CSpan c) { return gf2x::BitPoly::from_coeffs<Elem>(c); }

Coeffs unpack(const gf2x::BitPoly& b) { return b.to_coeffs<Elem>(); }

void trim(Coeffs& c)
{
    while (!c.empty() && c.back() == 0)
        c.pop_back();
}

// Element operations for the two dense kernel flavours.

struct PrimeOps {
    std::uint32_t p;
    Elem add(Elem a, Elem b) const
    {
        const std::uint64_t s = std::uint64_t{a} + b;
        return static_cast<Elem>(s >= p ? s - p : s);
    }
    Elem sub(Elem a, Elem b) const { return a >= b ? a - b : static_cast<Elem>(a + p - b); }

    // out[i+j] += a[i]*b[j]; out sized a.size()+b.size()-1 and zero.
    void school(CSpan a, CSpan b, Elem* out) const
    {
        const std::uint64_t pm1 = p - 1;
        const std::uint64_t sq = pm1 * pm1;
        const std::uint64_t limit =
            sq == 0 ? std::numeric_limits<std::uint64_t>::max() : (std::numeric_limits<std::uint64_t>::max() - pm1) / sq;
        const std::size_t n = a.size() + b.size() - 1;
        std::vector<std::uint64_t> acc(n, 0);
        std::uint64_t rows = 0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            const std::uint64_t ai = a[i];
            if (!ai)
                continue;
            if (++rows > limit) {
                for (auto& v : acc)
                    v %= p;
                rows = 1;
            }
            std::uint64_t* dst = acc.data() + i;
            for (std::size_t j = 0; j < b.size(); ++j)
                dst[j] += ai * b[j];
        }
        for (std::size_t k = 0; k < n; ++k)
            out[k] = static_cast<Elem>(acc[k] % p);
    }
};

struct FieldOps {
    const Field* f;
    Elem add(Elem a, Elem b) const { return f->add(a, b); }
    Elem sub(Elem a, Elem b) const { return f->sub(a, b); }
    void school(CSpan a, CSpan b, Elem* out) const
    {
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (!a[i])
                continue;
            for (std::size_t j = 0; j < b.size(); ++j)
                if (b[j])
                    out[i + j] = f->add(out[i + j], f->mul(a[i], b[j]));
        }
    }
};

template <class Ops>
Coeffs kara(const Ops& ops, CSpan a, CSpan b);

// Both operands have length n.
template <class Ops>
Coeffs kara_square(const Ops& ops, CSpan a, CSpan b)
{
    const std::size_t n = a.size();
    Coeffs out(2 * n - 1, 0);
    if (n < kKaratsubaThreshold) {
        ops.school(a, b, out.data());
        return out;
    }
    const std::size_t h = n / 2;
    const std::size_t l = n - h;  // high halves have l >= h coefficients
    CSpan a0 = a.subspan(0, h), a1 = a.subspan(h), b0 = b.subspan(0, h), b1 = b.subspan(h);
    Coeffs as(a1.begin(), a1.end()), bs(b1.begin(), b1.end());
    for (std::size_t i = 0; i < h; ++i) {
        as[i] = ops.add(as[i], a0[i]);
        bs[i] = ops.add(bs[i], b0[i]);
    }
    Coeffs z0 = kara_square(ops, a0, b0);
    Coeffs z2 = kara_square(ops, a1, b1);
    Coeffs z1 = kara_square(ops, CSpan(as), CSpan(bs));
    for (std::size_t i = 0; i < z0.size(); ++i)
        z1[i] = ops.sub(z1[i], z0[i]);
    for (std::size_t i = 0; i < z2.size(); ++i)
        z1[i] = ops.sub(z1[i], z2[i]);
    for (std::size_t i = 0; i < z0.size(); ++i)
        out[i] = ops.add(out[i], z0[i]);
    for (std::size_t i = 0; i < z1.size(); ++i)
        out[h + i] = ops.add(out[h + i], z1[i]);
    for (std::size_t i = 0; i < z2.size(); ++i)
        out[2 * h + i] = ops.add(out[2 * h + i], z2[i]);
    (void)l;
    return out;
}

template <class Ops>
Coeffs kara(const Ops& ops, CSpan a, CSpan b)
{
    if (a.size() < b.size())
        std::swap(a, b);
    Coeffs out(a.size() + b.size() - 1, 0);
    if (b.size() < kKaratsubaThreshold) {
        ops.school(a, b, out.data());
        return out;
    }
    // Split the longer operand into blocks the length of the shorter one.
    const std::size_t n = b.size();
    Coeffs block(n);
    for (std::size_t off = 0; off < a.size(); off += n) {
        const std::size_t len = std::min(n, a.size() - off);
        std::fill(block.begin(), block.end(), 0);
        std::copy_n(a.begin() + static_cast<std::ptrdiff_t>(off), len, block.begin());
        Coeffs part = kara_square(ops, CSpan(block), b);
        const std::size_t keep = std::min(part.size(), out.size() - off);
        for (std::size_t i = 0; i < keep; ++i)
            out[off + i] = ops.add(out[off + i], part[i]);
    }
    return out;
}

Coeffs mul_coeffs(const Field& f, CSpan a, CSpan b)
{
    if (a.empty() || b.empty())
        return {};
    if (packable(f, a.size(), b.size()))
        return unpack(gf2x::mul(pack(a), pack(b)));
    Coeffs out;
    if (f.is_prime_field())
        out = kara(PrimeOps{f.characteristic()}, a, b);
    else
        out = kara(FieldOps{&f}, a, b);
    trim(out);
    return out;
}

// r <- r mod g; quotient written to q if non-null. g nonzero, trimmed.
void rem_coeffs(const Field& f, Coeffs& r, CSpan g, Coeffs* q)
{
    const std::size_t dg = g.size() - 1;
    trim(r);
    if (r.size() < g.size()) {
        if (q)
            q->clear();
        return;
    }
    if (packable(f, r.size(), g.size())) {
        auto a = pack(r);
        gf2x::BitPoly quot;
        gf2x::rem_in_place(a, pack(g), q ? &quot : nullptr);
        r = unpack(a);
        if (q)
            *q = unpack(quot);
        return;
    }
    const std::size_t nq = r.size() - dg;
    if (q)
        q->assign(nq, 0);
    const Elem lead_inv = f.inv(g.back());
    std::vector<std::size_t> support;
    for (std::size_t j = 0; j < dg; ++j)
        if (g[j])
            support.push_back(j);
    if (support.size() * 8 < dg) {
        // Sparse modulus (e.g. t^n - t): touch only its nonzero terms.
        for (std::size_t i = r.size(); i-- > dg;) {
            const Elem top = r[i];
            if (!top)
                continue;
            const Elem c = f.mul(top, lead_inv);
            if (q)
                (*q)[i - dg] = c;
            for (std::size_t j : support)
                r[i - dg + j] = f.sub(r[i - dg + j], f.mul(c, g[j]));
        }
        r.resize(dg);
        trim(r);
        if (q)
            trim(*q);
        return;
    }
    if (f.is_prime_field()) {
        const std::uint64_t p = f.characteristic();
        // Delayed reduction: each slot receives at most dg additions below p^2.
        const bool lazy = p < (1u << 20) && dg < (std::size_t{1} << 23);
        std::vector<std::uint64_t> acc(r.begin(), r.end());
        std::vector<std::uint64_t> ng(dg);
        for (std::size_t j = 0; j < dg; ++j)
            ng[j] = g[j] ? p - g[j] : 0;
        for (std::size_t i = r.size(); i-- > dg;) {
            const std::uint64_t top = acc[i] % p;
            if (!top)
                continue;
            const std::uint64_t c = (top * lead_inv) % p;
            if (q)
                (*q)[i - dg] = static_cast<Elem>(c);
            std::uint64_t* dst = acc.data() + (i - dg);
            if (lazy) {
                for (std::size_t j = 0; j < dg; ++j)
                    dst[j] += c * ng[j];
            } else {
                for (std::size_t j = 0; j < dg; ++j)
                    dst[j] = (dst[j] % p + (c * ng[j]) % p) % p;
            }
        }
        r.resize(dg);
        for (std::size_t k = 0; k < dg; ++k)
            r[k] = static_cast<Elem>(acc[k] % p);
    } else {
        for (std::size_t i = r.size(); i-- > dg;) {
            const Elem top = r[i];
            if (!top)
                continue;
            const Elem c = f.mul(top, lead_inv);
            if (q)
                (*q)[i - dg] = c;
            for (std::size_t j = 0; j < dg; ++j)
                if (g[j])
                    r[i - dg + j] = f.sub(r[i - dg + j], f.mul(c, g[j]));
            r[i] = 0;
        }
        r.resize(dg);
    }
    trim(r);
    if (q)
        trim(*q);
}

} // namespace

// ---------------------------------------------------------------------------
// Poly

Poly::Poly(Field f) : field_(std::move(f)) {}

Poly::Poly(Field f, std::vector<Elem> coeffs) : field_(std::move(f)), c_(std::move(coeffs))
{
    for (Elem c : c_)
        if (!field_.contains(c))
            throw Error(fmt::format("coefficient code {} out of range for field of order {}", c,
                                    field_.order()));
    normalize();
}

Poly Poly::constant(Field f, Elem c) { return Poly(std::move(f), std::vector<Elem>{c}); }

Poly Poly::monomial(Field f, Elem c, std::size_t n)
{
    if (c == 0)
        return Poly(std::move(f));
    std::vector<Elem> v(n + 1, 0);
    v[n] = c;
    return Poly(std::move(f), std::move(v));
}

Poly Poly::from_terms(Field f, std::span<const std::pair<std::size_t, Elem>> terms)
{
    std::size_t top = 0;
    for (const auto& [e, c] : terms)
        top = std::max(top, e);
    std::vector<Elem> v(terms.empty() ? 0 : top + 1, 0);
    for (const auto& [e, c] : terms)
        v[e] = f.add(v[e], c);
    return Poly(std::move(f), std::move(v));
}

void Poly::normalize() { trim(c_); }

void Poly::check_same_field(const Poly& o) const
{
    if (field_ != o.field_)
        throw FieldMismatch("polynomials over different fields: " + field_.descriptor() + " vs " +
                            o.field_.descriptor());
}

Poly Poly::scaled(Elem c) const
{
    Poly r(field_);
    if (c == 0)
        return r;
    r.c_.resize(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i)
        r.c_[i] = field_.mul(c_[i], c);
    return r;
}

Poly Poly::monic() const
{
    if (c_.empty() || c_.back() == 1)
        return *this;
    return scaled(field_.inv(c_.back()));
}

Poly& Poly::operator+=(const Poly& o)
{
    check_same_field(o);
    if (o.c_.size() > c_.size())
        c_.resize(o.c_.size(), 0);
    for (std::size_t i = 0; i < o.c_.size(); ++i)
        c_[i] = field_.add(c_[i], o.c_[i]);
    normalize();
    return *this;
}

Poly& Poly::operator-=(const Poly& o)
{
    check_same_field(o);
    if (o.c_.size() > c_.size())
        c_.resize(o.c_.size(), 0);
    for (std::size_t i = 0; i < o.c_.size(); ++i)
        c_[i] = field_.sub(c_[i], o.c_[i]);
    normalize();
    return *this;
}

Poly& Poly::operator*=(const Poly& o)
{
    *this = *this * o;
    return *this;
}

Poly operator*(const Poly& a, const Poly& b)
{
    a.check_same_field(b);
    Poly r(a.field_);
    r.c_ = mul_coeffs(a.field_, a.c_, b.c_);
    return r;
}

Poly operator-(const Poly& a)
{
    Poly r(a.field_);
    r.c_.resize(a.c_.size());
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        r.c_[i] = a.field_.neg(a.c_[i]);
    return r;
}

std::string Poly::to_string() const
{
    if (c_.empty())
        return "0";
    std::string out;
    for (std::size_t i = c_.size(); i-- > 0;) {
        const Elem c = c_[i];
        if (!c)
            continue;
        if (!out.empty())
            out += '+';
        if (i == 0) {
            out += std::to_string(c);
            continue;
        }
        if (c != 1)
            out += std::to_string(c) + "*";
        out += i == 1 ? std::string("t") : fmt::format("t^{}", i);
    }
    return out;
}

std::string Poly::to_list_string() const
{
    std::string out = "[";
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (i)
            out += ',';
        out += std::to_string(c_[i]);
    }
    return out + "]";
}

namespace {

struct Parser {
    std::string_view s;
    std::size_t pos = 0;

    void skip_ws()
    {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
            ++pos;
    }
    bool at_end()
    {
        skip_ws();
        return pos >= s.size();
    }
    bool accept(char ch)
    {
        skip_ws();
        if (pos < s.size() && s[pos] == ch) {
            ++pos;
            return true;
        }
        return false;
    }
    bool peek_digit()
    {
        skip_ws();
        return pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]));
    }
    std::uint64_t number()
    {
        skip_ws();
        if (!peek_digit())
            fail("expected a number");
        std::uint64_t v = 0;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            const auto next = v * 10 + static_cast<std::uint64_t>(s[pos] - '0');
            if (next < v)
                fail("number too large");
            v = next;
            ++pos;
        }
        return v;
    }
    [[noreturn]] void fail(const std::string& what) const
    {
        throw ParseError(fmt::format("cannot parse polynomial '{}' at offset {}: {}", s, pos, what));
    }
};

Elem checked_code(const Field& f, std::uint64_t v, const Parser& ps)
{
    if (v >= f.order())
        ps.fail(fmt::format("coefficient code {} out of range for field of order {}", v, f.order()));
    return static_cast<Elem>(v);
}

} // namespace

Poly Poly::parse(Field f, std::string_view text)
{
    Parser ps{text};
    if (ps.accept('[')) {
        std::vector<Elem> c;
        if (!ps.accept(']')) {
            do {
                c.push_back(checked_code(f, ps.number(), ps));
            } while (ps.accept(','));
            if (!ps.accept(']'))
                ps.fail("expected ']'");
        }
        if (!ps.at_end())
            ps.fail("trailing characters");
        return Poly(std::move(f), std::move(c));
    }
    std::vector<std::pair<std::size_t, Elem>> terms;
    bool first = true;
    while (!ps.at_end()) {
        bool negate = false;
        if (ps.accept('-'))
            negate = true;
        else if (!first && !ps.accept('+'))
            ps.fail("expected '+' or '-'");
        first = false;
        Elem coef = 1;
        bool has_coef = false;
        if (ps.peek_digit()) {
            coef = checked_code(f, ps.number(), ps);
            has_coef = true;
            ps.accept('*');
        }
        std::size_t exp = 0;
        if (ps.accept('t')) {
            exp = 1;
            if (ps.accept('^'))
                exp = static_cast<std::size_t>(ps.number());
        } else if (!has_coef) {
            ps.fail("expected a term");
        }
        terms.emplace_back(exp, negate ? f.neg(coef) : coef);
    }
    if (first)
        ps.fail("empty polynomial");
    return from_terms(std::move(f), terms);
}

bool canonical_less(const Poly& a, const Poly& b)
{
    if (a.degree() != b.degree())
        return a.degree() < b.degree();
    for (std::size_t i = a.size(); i-- > 0;)
        if (a.coeff(i) != b.coeff(i))
            return a.coeff(i) < b.coeff(i);
    return false;
}

// ---------------------------------------------------------------------------
// Division, gcd

DivRem divrem(const Poly& f, const Poly& g)
{
    if (f.field() != g.field())
        throw FieldMismatch("divrem: polynomials over different fields");
    if (g.is_zero())
        throw DivisionByZero("polynomial division by zero");
    Coeffs r(f.coeffs().begin(), f.coeffs().end());
    Coeffs q;
    rem_coeffs(f.field(), r, g.coeffs(), &q);
    return {Poly(f.field(), std::move(q)), Poly(f.field(), std::move(r))};
}

Poly rem(const Poly& f, const Poly& g)
{
    if (f.field() != g.field())
        throw FieldMismatch("rem: polynomials over different fields");
    if (g.is_zero())
        throw DivisionByZero("polynomial division by zero");
    if (f.size() < g.size())
        return f;
    Coeffs r(f.coeffs().begin(), f.coeffs().end());
    rem_coeffs(f.field(), r, g.coeffs(), nullptr);
    return Poly(f.field(), std::move(r));
}

Poly exact_div(const Poly& f, const Poly& g)
{
    auto [q, r] = divrem(f, g);
    if (!r.is_zero())
        throw NotDivisible("(" + g.to_string() + ") does not divide (" +
                           (f.size() > 64 ? fmt::format("degree {} polynomial", f.size() - 1) : f.to_string()) + ")");
    return q;
}

Poly gcd(const Poly& f, const Poly& g)
{
    if (f.field() != g.field())
        throw FieldMismatch("gcd: polynomials over different fields");
    const Field& fld = f.field();
    if (packable(fld, f.size(), g.size()))
        return Poly(fld, unpack(gf2x::gcd(pack(f.coeffs()), pack(g.coeffs()))));
    Coeffs a(f.coeffs().begin(), f.coeffs().end());
    Coeffs b(g.coeffs().begin(), g.coeffs().end());
    while (!b.empty()) {
        if (packable(fld, a.size(), b.size()))
            return Poly(fld, unpack(gf2x::gcd(pack(a), pack(b)))).monic();
        rem_coeffs(fld, a, b, nullptr);
        std::swap(a, b);
    }
    return Poly(fld, std::move(a)).monic();
}

ExtGcd ext_gcd(const Poly& f, const Poly& h)
{
    const Field& fld = f.field();
    Poly r0 = f, r1 = h;
    Poly s0 = Poly::constant(fld, 1), s1(fld);
    Poly t0(fld), t1 = Poly::constant(fld, 1);
    while (!r1.is_zero()) {
        auto [q, r] = divrem(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        Poly s2 = s0 - q * s1;
        s0 = std::move(s1);
        s1 = std::move(s2);
        Poly t2 = t0 - q * t1;
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.is_zero())
        return {r0, s0, t0};
    const Elem li = fld.inv(r0.lead());
    return {r0.scaled(li), s0.scaled(li), t0.scaled(li)};
}

Poly invmod(const Poly& f, const Poly& m)
{
    auto e = ext_gcd(rem(f, m), m);
    if (!e.g.is_one())
        throw DivisionByZero("not invertible modulo " + m.to_string());
    return rem(e.s, m);
}

// ---------------------------------------------------------------------------
// Derivatives, powers

Poly derivative(const Poly& f, unsigned i)
{
    const Field& fld = f.field();
    std::vector<Elem> cur(f.coeffs().begin(), f.coeffs().end());
    for (unsigned step = 0; step < i && !cur.empty(); ++step) {
        std::vector<Elem> next(cur.size() - 1);
        for (std::size_t k = 1; k < cur.size(); ++k)
            next[k - 1] = fld.mul(cur[k], fld.from_int(static_cast<long long>(k % fld.characteristic())));
        cur = std::move(next);
        trim(cur);
    }
    return Poly(fld, std::move(cur));
}

Poly pow(const Poly& f, std::uint64_t e)
{
    Poly result = Poly::constant(f.field(), 1);
    Poly base = f;
    while (e) {
        if (e & 1)
            result = result * base;
        e >>= 1;
        if (e)
            base = base * base;
    }
    return result;
}

Poly mulmod(const Poly& a, const Poly& b, const Poly& m) { return rem(a * b, m); }

Poly powmod(const Poly& f, const BigNat& e, const Poly& m)
{
    if (m.is_zero())
        throw DivisionByZero("powmod: zero modulus");
    if (f.field() != m.field())
        throw FieldMismatch("powmod: polynomials over different fields");
    if (packable(m.field(), m.size(), m.size()))
        return Poly(m.field(), unpack(gf2x::powmod(pack(f.coeffs()), e, pack(m.coeffs()))));
    Poly base = rem(f, m);
    Poly result = rem(Poly::constant(m.field(), 1), m);
    if (e == 0)
        return result;
    const std::size_t top = boost::multiprecision::msb(e);
    for (std::size_t i = top + 1; i-- > 0;) {
        result = mulmod(result, result, m);
        if (boost::multiprecision::bit_test(e, static_cast<unsigned>(i)))
            result = mulmod(result, base, m);
    }
    return result;
}

Poly q_power_expand(const Poly& f, unsigned d)
{
    return q_power_expand(f, d, f.field().order());
}

Poly q_power_expand(const Poly& f, unsigned d, std::uint64_t fixed_order)
{
    const Field& fld = f.field();
    for (Elem c : f.coeffs())
        if (fld.pow(c, fixed_order) != c)
            throw CoefficientsNotInFixedField(
                fmt::format("coefficient {} is not fixed by x -> x^{}", c, fixed_order));
    if (f.is_zero())
        return f;
    std::uint64_t scale = 1;
    const std::uint64_t limit = std::uint64_t{1} << 32;
    for (unsigned i = 0; i < d; ++i) {
        scale *= fixed_order;
        if (scale > limit)
            throw BoundExceeded("q_power_expand: exponent scale too large");
    }
    const std::uint64_t top = (f.size() - 1) * scale;
    if (top > limit)
        throw BoundExceeded(fmt::format("q_power_expand: result degree {} too large", top));
    std::vector<Elem> out(static_cast<std::size_t>(top) + 1, 0);
    for (std::size_t i = 0; i < f.size(); ++i)
        out[static_cast<std::size_t>(i * scale)] = f.coeff(i);
    return Poly(fld, std::move(out));
}

Poly frobenius_mod(const Poly& h, const Poly& m)
{
    const Field& fld = m.field();
    if (packable(fld, m.size(), m.size())) {
        auto sq = gf2x::sqr(pack(rem(h, m).coeffs()));
        gf2x::rem_in_place(sq, pack(m.coeffs()));
        return Poly(fld, unpack(sq));
    }
    return rem(q_power_expand(rem(h, m), 1), m);
}

Poly t_pow_q_pow_mod(unsigned n, const Poly& m)
{
    Poly h = rem(Poly::t(m.field()), m);
    for (unsigned i = 0; i < n; ++i)
        h = frobenius_mod(h, m);
    return h;
}

// ---------------------------------------------------------------------------
// Evaluation, synthetic division, shifts

Elem eval(const Poly& f, Elem x)
{
    const Field& fld = f.field();
    Elem acc = 0;
    for (std::size_t i = f.size(); i-- > 0;)
        acc = fld.add(fld.mul(acc, x), f.coeff(i));
    return acc;
}

FieldElement eval(const Poly& f, const FieldElement& x)
{
    const Field& e = x.field();
    if (!f.field().is_subfield_of(e))
        throw FieldMismatch("eval: point is not in an extension of the coefficient field");
    Elem acc = 0;
    for (std::size_t i = f.size(); i-- > 0;)
        acc = e.add(e.mul(acc, x.code()), f.coeff(i));
    return {e, acc};
}

Poly embed(const Poly& f, const Field& ext)
{
    if (f.field() == ext)
        return f;
    if (!f.field().is_subfield_of(ext))
        throw FieldMismatch("embed: " + ext.descriptor() + " does not extend " + f.field().descriptor());
    return Poly(ext, std::vector<Elem>(f.coeffs().begin(), f.coeffs().end()));
}

SynthDiv synth_div(const Poly& f, const FieldElement& x)
{
    const Field& e = x.field();
    const Poly g = embed(f, e);
    if (g.is_zero())
        return {Poly(e), FieldElement(e, 0)};
    std::vector<Elem> q(g.size() - 1, 0);
    Elem carry = 0;
    for (std::size_t i = g.size(); i-- > 0;) {
        const Elem v = e.add(g.coeff(i), e.mul(carry, x.code()));
        if (i == 0)
            return {Poly(e, std::move(q)), FieldElement(e, v)};
        q[i - 1] = v;
        carry = v;
    }
    return {Poly(e), FieldElement(e, 0)}; // unreachable
}

Poly shift(const Poly& f, const FieldElement& c)
{
    const Field& fld = f.field();
    if (!c.field().is_subfield_of(fld))
        throw FieldMismatch("shift: constant not in the coefficient field");
    const Poly lin(fld, {c.code(), 1});
    Poly acc(fld);
    for (std::size_t i = f.size(); i-- > 0;)
        acc = acc * lin + Poly::constant(fld, f.coeff(i));
    return acc;
}

Poly reduce_mod_binomial(const Poly& f, std::size_t n)
{
    if (n < 2)
        throw Error("reduce_mod_binomial: n must be >= 2");
    const Field& fld = f.field();
    if (f.size() <= n)
        return f;
    std::vector<Elem> c(f.coeffs().begin(), f.coeffs().end());
    for (std::size_t i = c.size(); i-- > n;) {
        if (!c[i])
            continue;
        c[i - n + 1] = fld.add(c[i - n + 1], c[i]);
        c[i] = 0;
    }
    c.resize(n);
    return Poly(fld, std::move(c));
}

Poly mul_by_binomial(const Poly& f, std::size_t n)
{
    const Field& fld = f.field();
    if (f.is_zero())
        return f;
    std::vector<Elem> c(f.size() + n, 0);
    for (std::size_t i = 0; i < f.size(); ++i)
        c[i + n] = f.coeff(i);
    for (std::size_t i = 0; i < f.size(); ++i)
        c[i + 1] = fld.sub(c[i + 1], f.coeff(i));
    return Poly(fld, std::move(c));
}

unsigned valuation(const Poly& f, const Poly& g, unsigned cap)
{
    if (f.is_zero())
        throw Error("valuation of the zero polynomial is infinite");
    if (g.is_constant())
        throw Error("valuation: divisor must have degree >= 1");
    unsigned k = 0;
    Poly cur = f;
    while (k < cap) {
        auto [q, r] = divrem(cur, g);
        if (!r.is_zero())
            break;
        cur = std::move(q);
        ++k;
    }
    return k;
}

} // namespace fqw

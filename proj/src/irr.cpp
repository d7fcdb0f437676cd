#include "fqw/irr.hpp"

#include <limits>

#include <fmt/format.h>

#include "fqw/errors.hpp"

namespace fqw {

namespace {

std::vector<unsigned> prime_divisors(unsigned n)
{
    std::vector<unsigned> out;
    for (unsigned r = 2; r * r <= n; ++r) {
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

int moebius(unsigned n)
{
    int mu = 1;
    for (unsigned r = 2; r * r <= n; ++r) {
        if (n % r)
            continue;
        n /= r;
        if (n % r == 0)
            return 0;
        mu = -mu;
    }
    return n > 1 ? -mu : mu;
}

bool rabin_generic(const Poly& f)
{
    const unsigned d = static_cast<unsigned>(f.degree().value());
    if (d == 1)
        return true;
    const Poly m = f.monic();
    const Poly t = Poly::t(m.field());
    const auto divs = prime_divisors(d);
    std::vector<bool> need(d + 1, false);
    for (unsigned r : divs)
        need[d / r] = true;
    std::vector<Poly> kept(d + 1, Poly(m.field()));
    Poly h = rem(t, m);
    for (unsigned i = 1; i <= d; ++i) {
        h = frobenius_mod(h, m);
        if (need[i])
            kept[i] = h;
    }
    if (h != rem(t, m))
        return false;
    for (unsigned r : divs)
        if (!gcd(kept[d / r] - t, m).is_one())
            return false;
    return true;
}

} // namespace

// Rabin's test for monic polynomials of small degree over a small field, on
// flat buffers. The q-power map h -> h^q mod f is linear over F_q, so it is
// applied as a d x d matrix whose rows are t^{qj} mod f.
namespace detail {

struct RabinKernel {
    static constexpr std::uint64_t kMaxOrder = 64;
    static constexpr unsigned kMaxDegree = 64;

    Field field;
    unsigned d;
    std::uint64_t q;
    bool prime;
    std::uint32_t p;
    std::vector<unsigned> divs;
    std::vector<Elem> f;     // d + 1 coefficients, monic
    std::vector<Elem> rows;  // d * d
    std::vector<Elem> x, y, tmp;
    std::vector<std::vector<Elem>> kept;

    RabinKernel(Field fld, unsigned deg)
        : field(std::move(fld)), d(deg), q(field.order()), prime(field.is_prime_field()),
          p(field.characteristic()), divs(prime_divisors(deg)), f(deg + 1, 0), rows(std::size_t{deg} * deg, 0),
          x(deg), y(deg), tmp(deg), kept(deg + 1)
    {
    }

    static bool applicable(const Field& fld, unsigned deg) { return fld.order() <= kMaxOrder && deg <= kMaxDegree; }

    Elem mul(Elem a, Elem b) const
    {
        return prime ? static_cast<Elem>((std::uint64_t{a} * b) % p) : field.mul(a, b);
    }
    Elem add(Elem a, Elem b) const
    {
        if (prime) {
            const Elem s = a + b;
            return s >= p ? s - p : s;
        }
        return field.add(a, b);
    }
    Elem sub(Elem a, Elem b) const
    {
        if (prime)
            return a >= b ? a - b : a + p - b;
        return field.sub(a, b);
    }

    // v <- v * t mod f, v of length d.
    void mul_t(std::vector<Elem>& v) const
    {
        const Elem top = v[d - 1];
        for (unsigned j = d - 1; j > 0; --j)
            v[j] = v[j - 1];
        v[0] = 0;
        if (top)
            for (unsigned j = 0; j < d; ++j)
                if (f[j])
                    v[j] = sub(v[j], mul(top, f[j]));
    }

    // out <- h^q mod f.
    void frob(const std::vector<Elem>& h, std::vector<Elem>& out) const
    {
        std::fill(out.begin(), out.end(), 0);
        for (unsigned j = 0; j < d; ++j) {
            if (!h[j])
                continue;
            const Elem* row = rows.data() + std::size_t{j} * d;
            for (unsigned k = 0; k < d; ++k)
                if (row[k])
                    out[k] = add(out[k], mul(h[j], row[k]));
        }
    }

    bool coprime_to_f(std::vector<Elem> b) const
    {
        std::vector<Elem> a(f);
        auto trim = [](std::vector<Elem>& v) {
            while (!v.empty() && v.back() == 0)
                v.pop_back();
        };
        trim(b);
        while (!b.empty()) {
            const Elem li = field.inv(b.back());
            const std::size_t db = b.size() - 1;
            for (std::size_t i = a.size(); i-- > db;) {
                const Elem c = a[i];
                if (!c)
                    continue;
                const Elem m = mul(c, li);
                for (std::size_t j = 0; j <= db; ++j)
                    a[i - db + j] = sub(a[i - db + j], mul(m, b[j]));
            }
            a.resize(std::min(a.size(), db));
            trim(a);
            std::swap(a, b);
        }
        return a.size() == 1;
    }

    // Candidate coefficients c_0..c_{d-1} are already in f.
    bool test()
    {
        if (d == 1)
            return true;
        if (f[0] == 0)
            return false;
        for (Elem r = 1; r < q; ++r) {
            Elem acc = 0;
            for (unsigned i = d + 1; i-- > 0;)
                acc = add(mul(acc, r), f[i]);
            if (acc == 0)
                return false;
        }
        if (d <= 3)
            return true;  // no roots and degree <= 3
        std::fill(x.begin(), x.end(), 0);
        x[0] = 1;
        std::copy(x.begin(), x.end(), rows.begin());
        for (unsigned j = 1; j < d; ++j) {
            for (std::uint64_t s = 0; s < q; ++s)
                mul_t(x);
            std::copy(x.begin(), x.end(), rows.begin() + std::ptrdiff_t(j) * d);
        }
        std::fill(x.begin(), x.end(), 0);
        x[1] = 1;
        for (unsigned i = 1; i <= d; ++i) {
            frob(x, y);
            std::swap(x, y);
            for (unsigned r : divs)
                if (d / r == i)
                    kept[i] = x;
        }
        for (unsigned k = 0; k < d; ++k)
            if (x[k] != (k == 1 ? 1u : 0u))
                return false;
        for (unsigned r : divs) {
            auto g = kept[d / r];
            g[1] = sub(g[1], 1);
            if (!coprime_to_f(std::move(g)))
                return false;
        }
        return true;
    }
};

} // namespace detail

PrimeContext make_prime_context(const Poly& prime)
{
    if (!prime.is_monic())
        throw NotMonic("prime must be monic: " + prime.to_string());
    Field residue = make_extension(prime.field(), prime);
    const Elem theta = residue.generator();
    const std::uint64_t norm = residue.order();
    return PrimeContext{prime, residue, FieldElement(residue, theta), norm};
}

namespace {

PrimeContext context_preverified(const Poly& prime)
{
    Field residue = make_extension_preverified(prime.field(), prime);
    const Elem theta = residue.generator();
    const std::uint64_t norm = residue.order();
    return PrimeContext{prime, residue, FieldElement(residue, theta), norm};
}

} // namespace

bool is_irreducible(const Poly& f)
{
    if (f.is_zero() || f.is_constant())
        throw Error("is_irreducible: degree must be >= 1");
    const unsigned d = static_cast<unsigned>(f.degree().value());
    if (detail::RabinKernel::applicable(f.field(), d)) {
        detail::RabinKernel k(f.field(), d);
        const Poly m = f.monic();
        std::copy(m.coeffs().begin(), m.coeffs().end(), k.f.begin());
        return k.test();
    }
    return rabin_generic(f);
}

std::uint64_t count_irreducibles(std::uint64_t q, unsigned d)
{
    if (d == 0)
        throw Error("count_irreducibles: degree must be >= 1");
    auto qpow = [q](unsigned e) {
        unsigned __int128 v = 1;
        for (unsigned i = 0; i < e; ++i) {
            v *= q;
            if (v > std::numeric_limits<std::uint64_t>::max())
                throw BoundExceeded(fmt::format("{}^{} overflows 64 bits", q, e));
        }
        return static_cast<__int128>(v);
    };
    __int128 sum = 0;
    for (unsigned e = 1; e <= d; ++e) {
        if (d % e)
            continue;
        const int mu = moebius(e);
        if (mu)
            sum += mu * qpow(d / e);
    }
    return static_cast<std::uint64_t>(sum / d);
}

Poly monic_candidate(const Field& f, unsigned d, std::uint64_t index)
{
    std::vector<Elem> c(d + 1, 0);
    for (unsigned j = 0; j < d; ++j) {
        c[j] = static_cast<Elem>(index % f.order());
        index /= f.order();
    }
    c[d] = 1;
    return Poly(f, std::move(c));
}

IrreducibleStream::IrreducibleStream(Field f, unsigned d, std::uint64_t start, std::optional<std::uint64_t> end)
    : field_(std::move(f)), d_(d), pos_(start)
{
    if (d == 0)
        throw Error("irreducible stream: degree must be >= 1");
    long double total = 1;
    std::uint64_t n = 1;
    for (unsigned i = 0; i < d; ++i) {
        total *= static_cast<long double>(field_.order());
        n *= field_.order();
    }
    if (total >= 18446744073709551615.0L)
        throw BoundExceeded("candidate count overflows 64 bits");
    end_ = end ? std::min(*end, n) : n;
    if (detail::RabinKernel::applicable(field_, d))
        kernel_ = std::make_unique<detail::RabinKernel>(field_, d);
}

IrreducibleStream::~IrreducibleStream() = default;
IrreducibleStream::IrreducibleStream(IrreducibleStream&&) noexcept = default;
IrreducibleStream& IrreducibleStream::operator=(IrreducibleStream&&) noexcept = default;

std::optional<Poly> IrreducibleStream::next_poly()
{
    while (pos_ < end_) {
        const std::uint64_t idx = pos_++;
        if (kernel_) {
            std::uint64_t v = idx;
            for (unsigned j = 0; j < d_; ++j) {
                kernel_->f[j] = static_cast<Elem>(v % field_.order());
                v /= field_.order();
            }
            kernel_->f[d_] = 1;
            if (kernel_->test())
                return Poly(field_, kernel_->f);
        } else {
            Poly cand = monic_candidate(field_, d_, idx);
            if (cand.coeff(0) == 0 && d_ > 1)
                continue;
            if (rabin_generic(cand))
                return cand;
        }
    }
    return std::nullopt;
}

std::optional<PrimeContext> IrreducibleStream::next()
{
    auto p = next_poly();
    if (!p)
        return std::nullopt;
    return context_preverified(*p);
}

std::vector<PrimeContext> monic_irreducibles(const Field& f, unsigned d)
{
    std::vector<PrimeContext> out;
    IrreducibleStream s(f, d);
    while (auto c = s.next())
        out.push_back(std::move(*c));
    return out;
}

std::vector<Poly> monic_irreducible_polys(const Field& f, unsigned d)
{
    std::vector<Poly> out;
    IrreducibleStream s(f, d);
    while (auto c = s.next_poly())
        out.push_back(std::move(*c));
    return out;
}

} // namespace fqw

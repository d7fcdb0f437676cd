#include "fqw/gf2x.hpp"

#include <algorithm>
#include <array>
#include <bit>

#include "fqw/errors.hpp"

namespace fqw::gf2x {

namespace {

using u64 = std::uint64_t;

void basecase(const u64* a, std::size_t na, const u64* b, std::size_t nb, u64* r)
{
    for (std::size_t i = 0; i < na; ++i) {
        if (a[i] == 0)
            continue;
        for (std::size_t j = 0; j < nb; ++j) {
            u64 lo, hi;
            clmul64(a[i], b[j], lo, hi);
            r[i + j] ^= lo;
            r[i + j + 1] ^= hi;
        }
    }
}

// r[0, 2n) ^= a * b for operands of n words.
void kara(const u64* a, const u64* b, std::size_t n, u64* r)
{
    if (n < kKaratsubaWords) {
        basecase(a, n, b, n, r);
        return;
    }
    const std::size_t h = (n + 1) / 2;
    const std::size_t l = n - h;
    std::vector<u64> as(a, a + h), bs(b, b + h);
    for (std::size_t i = 0; i < l; ++i) {
        as[i] ^= a[h + i];
        bs[i] ^= b[h + i];
    }
    std::vector<u64> p0(2 * h, 0), p1(2 * h, 0), p2(2 * l, 0);
    kara(a, b, h, p0.data());
    kara(a + h, b + h, l, p2.data());
    kara(as.data(), bs.data(), h, p1.data());
    for (std::size_t i = 0; i < 2 * h; ++i)
        p1[i] ^= p0[i];
    for (std::size_t i = 0; i < 2 * l; ++i)
        p1[i] ^= p2[i];
    for (std::size_t i = 0; i < 2 * h; ++i)
        r[i] ^= p0[i];
    for (std::size_t i = 0; i < 2 * h; ++i)
        r[h + i] ^= p1[i];
    for (std::size_t i = 0; i < 2 * l; ++i)
        r[2 * h + i] ^= p2[i];
}

constexpr std::array<std::uint16_t, 256> make_spread_table()
{
    std::array<std::uint16_t, 256> t{};
    for (unsigned v = 0; v < 256; ++v) {
        std::uint16_t s = 0;
        for (unsigned b = 0; b < 8; ++b)
            if (v & (1u << b))
                s |= static_cast<std::uint16_t>(1u << (2 * b));
        t[v] = s;
    }
    return t;
}
constexpr auto kSpread = make_spread_table();

// a ^= m << shift, where a is long enough to hold the top bit of the result.
void xor_shifted(std::vector<u64>& a, std::span<const u64> m, std::size_t shift)
{
    const std::size_t ws = shift >> 6;
    const unsigned bs = shift & 63;
    if (bs == 0) {
        for (std::size_t k = 0; k < m.size(); ++k)
            a[k + ws] ^= m[k];
        return;
    }
    const std::size_t n = a.size();
    for (std::size_t k = 0; k < m.size(); ++k) {
        a[k + ws] ^= m[k] << bs;
        if (k + ws + 1 < n)
            a[k + ws + 1] ^= m[k] >> (64 - bs);
    }
}

} // namespace

void clmul64(std::uint64_t a, std::uint64_t b, std::uint64_t& lo, std::uint64_t& hi)
{
    u64 u[16];
    u[0] = 0;
    u[1] = a;
    u[2] = a << 1;
    u[3] = u[2] ^ a;
    u[4] = a << 2;
    u[5] = u[4] ^ a;
    u[6] = u[3] << 1;
    u[7] = u[6] ^ a;
    u[8] = a << 3;
    u[9] = u[8] ^ a;
    u[10] = u[5] << 1;
    u[11] = u[10] ^ a;
    u[12] = u[6] << 1;
    u[13] = u[12] ^ a;
    u[14] = u[7] << 1;
    u[15] = u[14] ^ a;
    u64 l = u[b & 15];
    u64 h = 0;
    for (unsigned i = 4; i < 64; i += 4) {
        const u64 g = u[(b >> i) & 15];
        l ^= g << i;
        h ^= g >> (64 - i);
    }
    // The table entries lost the top three bits of a.
    h ^= ((b & 0xEEEEEEEEEEEEEEEEULL) >> 1) & (0 - ((a >> 63) & 1));
    h ^= ((b & 0xCCCCCCCCCCCCCCCCULL) >> 2) & (0 - ((a >> 62) & 1));
    h ^= ((b & 0x8888888888888888ULL) >> 3) & (0 - ((a >> 61) & 1));
    lo = l;
    hi = h;
}

BitPoly::BitPoly(std::vector<std::uint64_t> words) : w_(std::move(words))
{
    normalize();
}

BitPoly BitPoly::monomial(std::size_t n)
{
    std::vector<u64> w(n / 64 + 1, 0);
    w[n >> 6] = u64{1} << (n & 63);
    return BitPoly(std::move(w));
}

void BitPoly::normalize()
{
    while (!w_.empty() && w_.back() == 0)
        w_.pop_back();
}

std::size_t BitPoly::bit_length() const
{
    if (w_.empty())
        return 0;
    return 64 * (w_.size() - 1) + (64 - static_cast<std::size_t>(std::countl_zero(w_.back())));
}

void BitPoly::flip(std::size_t i)
{
    if ((i >> 6) >= w_.size())
        w_.resize((i >> 6) + 1, 0);
    w_[i >> 6] ^= u64{1} << (i & 63);
    normalize();
}

BitPoly& BitPoly::operator^=(const BitPoly& o)
{
    if (o.w_.size() > w_.size())
        w_.resize(o.w_.size(), 0);
    for (std::size_t i = 0; i < o.w_.size(); ++i)
        w_[i] ^= o.w_[i];
    normalize();
    return *this;
}

BitPoly mul_basecase(const BitPoly& a, const BitPoly& b)
{
    if (a.is_zero() || b.is_zero())
        return {};
    auto aw = a.words();
    auto bw = b.words();
    std::vector<u64> r(aw.size() + bw.size(), 0);
    basecase(aw.data(), aw.size(), bw.data(), bw.size(), r.data());
    return BitPoly(std::move(r));
}

BitPoly mul(const BitPoly& a, const BitPoly& b)
{
    if (a.is_zero() || b.is_zero())
        return {};
    std::span<const u64> x = a.w_;
    std::span<const u64> y = b.w_;
    if (x.size() < y.size())
        std::swap(x, y);
    if (y.size() < kKaratsubaWords)
        return mul_basecase(a, b);
    // Cut the longer operand into blocks the size of the shorter one.
    const std::size_t n = y.size();
    std::vector<u64> r(x.size() + n + n, 0);
    std::vector<u64> block(n);
    for (std::size_t off = 0; off < x.size(); off += n) {
        const std::size_t len = std::min(n, x.size() - off);
        std::fill(block.begin(), block.end(), 0);
        std::copy_n(x.begin() + static_cast<std::ptrdiff_t>(off), len, block.begin());
        kara(block.data(), y.data(), n, r.data() + off);
    }
    return BitPoly(std::move(r));
}

BitPoly sqr(const BitPoly& a)
{
    std::vector<u64> r(2 * a.w_.size(), 0);
    for (std::size_t i = 0; i < a.w_.size(); ++i) {
        u64 w = a.w_[i];
        u64 lo = 0, hi = 0;
        for (unsigned b = 0; b < 4; ++b) {
            lo |= u64{kSpread[(w >> (8 * b)) & 0xff]} << (16 * b);
            hi |= u64{kSpread[(w >> (8 * b + 32)) & 0xff]} << (16 * b);
        }
        r[2 * i] = lo;
        r[2 * i + 1] = hi;
    }
    return BitPoly(std::move(r));
}

void rem_in_place(BitPoly& a, const BitPoly& m, BitPoly* quot)
{
    if (m.is_zero())
        throw DivisionByZero("gf2x: division by zero polynomial");
    const std::size_t mbits = m.bit_length();
    const std::size_t abits = a.bit_length();
    if (abits < mbits) {
        if (quot)
            *quot = BitPoly{};
        return;
    }
    const std::size_t dm = mbits - 1;
    std::vector<u64> q;
    if (quot)
        q.assign((abits - dm + 63) / 64, 0);
    auto& w = a.w_;
    for (std::size_t i = abits; i-- > dm;) {
        if (!((w[i >> 6] >> (i & 63)) & 1))
            continue;
        const std::size_t s = i - dm;
        xor_shifted(w, m.w_, s);
        if (quot)
            q[s >> 6] |= u64{1} << (s & 63);
    }
    a.normalize();
    if (quot)
        *quot = BitPoly(std::move(q));
}

BitPoly rem(BitPoly a, const BitPoly& m)
{
    rem_in_place(a, m);
    return a;
}

BitPoly gcd(BitPoly a, BitPoly b)
{
    while (!b.is_zero()) {
        rem_in_place(a, b);
        std::swap(a, b);
    }
    return a;
}

BitPoly mulmod(const BitPoly& a, const BitPoly& b, const BitPoly& m)
{
    return rem(mul(a, b), m);
}

BitPoly powmod(const BitPoly& a, const BigNat& e, const BitPoly& m)
{
    BitPoly base = rem(a, m);
    BitPoly result = rem(BitPoly::one(), m);
    if (e == 0)
        return result;
    const std::size_t top = boost::multiprecision::msb(e);
    for (std::size_t i = top + 1; i-- > 0;) {
        result = rem(sqr(result), m);
        if (boost::multiprecision::bit_test(e, static_cast<unsigned>(i)))
            result = mulmod(result, base, m);
    }
    return result;
}

} // namespace fqw::gf2x

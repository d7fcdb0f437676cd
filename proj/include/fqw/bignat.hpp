#pragma once

#include <cstdint>

#include <boost/multiprecision/cpp_int.hpp>

namespace fqw {

/// Arbitrary-size natural number, used for exponents such as (q^i - 1)/2.
using BigNat = boost::multiprecision::cpp_int;

inline BigNat big_pow(std::uint64_t base, unsigned exp)
{
    return boost::multiprecision::pow(BigNat(base), exp);
}

} // namespace fqw

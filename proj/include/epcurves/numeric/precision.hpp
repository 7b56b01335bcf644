#pragma once

#include <limits>
#include <string>

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include "epcurves/exactmath/types.hpp"

namespace epc {

constexpr unsigned digits10_for_bits(unsigned bits) { return bits * 30103u / 100000u + 2u; }

/// MPFR float with at least `Bits` bits of mantissa. The precision is part
/// of the type, so values never depend on global precision state.
template <unsigned Bits>
using BigFloat = boost::multiprecision::number<
    boost::multiprecision::mpfr_float_backend<digits10_for_bits(Bits)>, boost::multiprecision::et_off>;

using Real128 = BigFloat<128>;
using Real256 = BigFloat<256>;
using Real512 = BigFloat<512>;

template <class Real>
constexpr unsigned mantissa_bits() {
    return static_cast<unsigned>(std::numeric_limits<Real>::digits);
}

/// Supported working precisions; requests are rounded up to the next tier.
constexpr unsigned precision_tier(unsigned bits) {
    return bits <= 128 ? 128 : bits <= 256 ? 256 : bits <= 512 ? 512 : 0;
}

/// Invokes f.template operator()<Real>() with the BigFloat tier that covers
/// `bits`. All tiers must produce the same result type.
template <class F>
decltype(auto) with_precision(unsigned bits, F&& f) {
    switch (precision_tier(bits)) {
        case 128: return f.template operator()<Real128>();
        case 256: return f.template operator()<Real256>();
        case 512: return f.template operator()<Real512>();
        default: throw InputError("precision " + std::to_string(bits) + " bits exceeds the supported maximum of 512");
    }
}

template <class Real>
Real to_real(const Rational& q) {
    return Real(q);
}

template <class Real>
Real to_real(const Integer& z) {
    return Real(z);
}

/// 2^-e in the given type.
template <class Real>
Real pow2_neg(unsigned e) {
    return ldexp(Real(1), -static_cast<int>(e));
}

}  // namespace epc

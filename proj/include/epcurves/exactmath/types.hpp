#pragma once

#include <stdexcept>
#include <string>

#include <boost/multiprecision/gmp.hpp>

namespace epc {

using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

inline Integer numerator_of(const Rational& r) { return Integer(boost::multiprecision::numerator(r)); }
inline Integer denominator_of(const Rational& r) { return Integer(boost::multiprecision::denominator(r)); }

inline int sign(const Integer& v) { return v.sign(); }
inline int sign(const Rational& v) { return v.sign(); }

/// Nearest integer to a/b (b > 0), ties rounded up.
inline Integer round_div(const Integer& a, const Integer& b) {
    Integer twice = 2 * a + b;
    Integer den = 2 * b;
    Integer q = twice / den;
    if (twice % den != 0 && twice.sign() < 0) q -= 1;
    return q;
}

inline Integer floor_of(const Rational& r) {
    Integer n = numerator_of(r), d = denominator_of(r);
    Integer q = n / d;
    if (n % d != 0 && n.sign() < 0) q -= 1;
    return q;
}

inline Integer round_of(const Rational& r) { return round_div(numerator_of(r), denominator_of(r)); }

/// Malformed user input (files, polynomial strings, dimensions).
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A certificate failed to re-verify; indicates a bug, never bad input.
class ConsistencyError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace epc

#pragma once

#include <stdexcept>

#include "epcurves/numeric/dense.hpp"

namespace epc {

class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

template <class Real>
Real working_epsilon() {
    return pow2_neg<Real>(mantissa_bits<Real>() - 4);
}

/// Principal square root by the Denman-Beavers iteration. Requires no
/// eigenvalue on the closed negative real axis.
template <class Real>
CMatrix<Real> sqrtm(const CMatrix<Real>& a) {
    const std::size_t n = a.rows();
    CMatrix<Real> y = a, z = CMatrix<Real>::identity(n);
    const Real eps = working_epsilon<Real>();
    const Complex<Real> half(Real(1) / 2);
    for (int it = 0; it < 200; ++it) {
        const CMatrix<Real> yi = inverse(y), zi = inverse(z);
        CMatrix<Real> y2 = scaled<Real>(y + zi, half);
        z = scaled<Real>(z + yi, half);
        const Real change = frobenius<Real>(y2 - y);
        y = std::move(y2);
        if (change <= eps * frobenius(y)) return y;
    }
    throw ConvergenceError("sqrtm: Denman-Beavers iteration did not converge");
}

/// Principal logarithm by inverse scaling and squaring: take square roots
/// until the argument is within 1/4 of I, sum the log(1+E) series, scale
/// back by 2^s.
template <class Real>
CMatrix<Real> logm(const CMatrix<Real>& a) {
    const std::size_t n = a.rows();
    const CMatrix<Real> id = CMatrix<Real>::identity(n);
    CMatrix<Real> x = a;
    int s = 0;
    while (frobenius<Real>(x - id) > Real(1) / 4) {
        if (++s > 100) throw ConvergenceError("logm: square roots did not approach the identity");
        x = sqrtm(x);
    }
    const CMatrix<Real> e = x - id;
    const Real eps = working_epsilon<Real>();
    CMatrix<Real> power = e, sum = e;
    for (int j = 2; j < 10000; ++j) {
        power = power * e;
        const Real sgn = (j % 2 == 0) ? Real(-1) : Real(1);
        const CMatrix<Real> term = scaled<Real>(power, Complex<Real>(sgn / j));
        sum = sum + term;
        if (frobenius(term) <= eps * frobenius(sum)) break;
    }
    return scaled<Real>(sum, Complex<Real>(ldexp(Real(1), s)));
}

/// Exponential by scaling and squaring with a Taylor core.
template <class Real>
CMatrix<Real> expm(const CMatrix<Real>& a) {
    const std::size_t n = a.rows();
    int s = 0;
    Real nrm = frobenius(a);
    while (nrm > Real(1) / 2) {
        nrm /= 2;
        ++s;
    }
    const CMatrix<Real> b = scaled<Real>(a, Complex<Real>(ldexp(Real(1), -s)));
    const Real eps = working_epsilon<Real>();
    CMatrix<Real> term = CMatrix<Real>::identity(n), sum = term;
    for (int j = 1; j < 10000; ++j) {
        term = scaled<Real>(term * b, Complex<Real>(Real(1) / j));
        sum = sum + term;
        if (frobenius(term) <= eps * frobenius(sum)) break;
    }
    for (int i = 0; i < s; ++i) sum = sum * sum;
    return sum;
}

}  // namespace epc

#pragma once

#include <algorithm>
#include <vector>

#include "epcurves/exactmath/poly.hpp"
#include "epcurves/exactmath/sturm.hpp"
#include "epcurves/numeric/matfun.hpp"

namespace epc {

template <class Real>
Complex<Real> horner(const IntPoly& p, const Complex<Real>& z) {
    Complex<Real> acc;
    for (int i = p.degree(); i >= 0; --i) acc = acc * z + Complex<Real>(to_real<Real>(p.coeff(i)));
    return acc;
}

/// All complex roots of a squarefree polynomial: Durand-Kerner
/// (Weierstrass) iteration followed by Newton polishing.
template <class Real>
std::vector<Complex<Real>> polynomial_roots(const IntPoly& p) {
    using std::abs;
    const int d = p.degree();
    if (d < 1) return {};
    const IntPoly dp = p.derivative();
    const Real lead = to_real<Real>(p.lead());
    const Real bound = to_real<Real>(cauchy_bound(p));
    std::vector<Complex<Real>> z(d);
    const Complex<Real> seed(Real(4) / 10, Real(9) / 10);
    Complex<Real> g = seed;
    for (int i = 0; i < d; ++i) {
        z[i] = (bound / 2) * g;
        g = g * seed;
    }
    const Real eps = working_epsilon<Real>();
    bool converged = false;
    for (int it = 0; it < 20000 && !converged; ++it) {
        converged = true;
        for (int i = 0; i < d; ++i) {
            Complex<Real> den(lead);
            for (int j = 0; j < d; ++j)
                if (j != i) den = den * (z[i] - z[j]);
            if (den == Complex<Real>(0)) den = Complex<Real>(eps);
            const Complex<Real> step = horner(p, z[i]) / den;
            z[i] -= step;
            if (epc::abs(step) > eps * (Real(1) + epc::abs(z[i]))) converged = false;
        }
    }
    for (auto& r : z)
        for (int k = 0; k < 3; ++k) {
            const Complex<Real> dv = horner(dp, r);
            if (dv == Complex<Real>(0)) break;
            r -= horner(p, r) / dv;
        }
    if (!converged) throw ConvergenceError("polynomial_roots: iteration did not converge; retry at higher precision");
    return z;
}

template <class Real>
struct SplitRoots {
    std::vector<Real> real;
    std::vector<Complex<Real>> upper;
};

/// Roots of a squarefree p split using the exact real-root count: the
/// `real_count` roots nearest the real axis are returned as reals, the rest
/// as one representative (Im > 0) per conjugate pair.
template <class Real>
SplitRoots<Real> split_roots(const IntPoly& p) {
    const int real_count = sturm_count(p);
    auto z = polynomial_roots<Real>(p);
    std::sort(z.begin(), z.end(), [](const auto& a, const auto& b) { return abs(a.im) < abs(b.im); });
    SplitRoots<Real> out;
    for (int i = 0; i < static_cast<int>(z.size()); ++i) {
        if (i < real_count)
            out.real.push_back(z[i].re);
        else if (z[i].im > 0)
            out.upper.push_back(z[i]);
    }
    if (2 * out.upper.size() + out.real.size() != z.size())
        throw ConvergenceError("split_roots: numeric roots do not pair conjugately; retry at higher precision");
    std::sort(out.real.begin(), out.real.end());
    std::sort(out.upper.begin(), out.upper.end(), [](const auto& a, const auto& b) {
        return a.re != b.re ? a.re < b.re : a.im < b.im;
    });
    return out;
}

}  // namespace epc

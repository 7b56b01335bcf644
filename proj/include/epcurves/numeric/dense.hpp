#pragma once

#include <numeric>
#include <stdexcept>
#include <vector>

#include "epcurves/exactmath/matrix.hpp"
#include "epcurves/numeric/complex.hpp"
#include "epcurves/numeric/precision.hpp"

namespace epc {

template <class Real>
using CMatrix = Matrix<Complex<Real>>;
template <class Real>
using CVector = std::vector<Complex<Real>>;

template <class Real>
CMatrix<Real> to_complex(const IntMatrix& m) {
    CMatrix<Real> c(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) c(i, j) = Complex<Real>(to_real<Real>(m(i, j)));
    return c;
}

template <class Real>
Real norm(const CVector<Real>& v) {
    using std::sqrt;
    Real s = 0;
    for (const auto& z : v) s += z.norm2();
    return sqrt(s);
}

template <class Real>
Real frobenius(const CMatrix<Real>& a) {
    using std::sqrt;
    Real s = 0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j).norm2();
    return sqrt(s);
}

template <class Real>
Real max_abs(const CMatrix<Real>& a) {
    Real m = 0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const Real v = abs(a(i, j));
            if (v > m) m = v;
        }
    return m;
}

template <class Real>
Complex<Real> inner(const CVector<Real>& a, const CVector<Real>& b) {
    Complex<Real> s;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i].conj() * b[i];
    return s;
}

template <class Real>
CMatrix<Real> scaled(const CMatrix<Real>& a, const Complex<Real>& s) {
    CMatrix<Real> out = a;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = s * a(i, j);
    return out;
}

template <class Real>
CMatrix<Real> conj_transpose(const CMatrix<Real>& a) {
    CMatrix<Real> t(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j).conj();
    return t;
}

class SingularMatrixError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Solves A X = B by LU with partial pivoting.
template <class Real>
CMatrix<Real> lu_solve(CMatrix<Real> a, CMatrix<Real> b) {
    const std::size_t n = a.rows();
    if (!a.is_square() || b.rows() != n) throw std::invalid_argument("lu_solve: shape mismatch");
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        Real best = abs(a(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            const Real v = abs(a(i, k));
            if (v > best) {
                best = v;
                p = i;
            }
        }
        if (best == 0) throw SingularMatrixError("lu_solve: singular matrix");
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
            for (std::size_t j = 0; j < b.cols(); ++j) std::swap(b(k, j), b(p, j));
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            const Complex<Real> f = a(i, k) / a(k, k);
            if (f == Complex<Real>(0)) continue;
            for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
            for (std::size_t j = 0; j < b.cols(); ++j) b(i, j) -= f * b(k, j);
        }
    }
    CMatrix<Real> x(n, b.cols());
    for (std::size_t c = 0; c < b.cols(); ++c)
        for (std::size_t i = n; i-- > 0;) {
            Complex<Real> s = b(i, c);
            for (std::size_t j = i + 1; j < n; ++j) s -= a(i, j) * x(j, c);
            x(i, c) = s / a(i, i);
        }
    return x;
}

template <class Real>
CMatrix<Real> inverse(const CMatrix<Real>& a) {
    return lu_solve(a, CMatrix<Real>::identity(a.rows()));
}

template <class Real>
Complex<Real> determinant(CMatrix<Real> a) {
    const std::size_t n = a.rows();
    Complex<Real> det(1);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        Real best = abs(a(k, k));
        for (std::size_t i = k + 1; i < n; ++i)
            if (abs(a(i, k)) > best) {
                best = abs(a(i, k));
                p = i;
            }
        if (best == 0) return Complex<Real>(0);
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
            det = -det;
        }
        det = det * a(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const Complex<Real> f = a(i, k) / a(k, k);
            for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
        }
    }
    return det;
}

/// Gaussian elimination with complete pivoting; returns the pivot moduli in
/// elimination order (non-increasing up to rounding).
template <class Real>
std::vector<Real> complete_pivots(CMatrix<Real> a) {
    std::vector<Real> piv;
    const std::size_t rows = a.rows(), cols = a.cols();
    for (std::size_t k = 0; k < std::min(rows, cols); ++k) {
        std::size_t pr = k, pc = k;
        Real best = -1;
        for (std::size_t i = k; i < rows; ++i)
            for (std::size_t j = k; j < cols; ++j)
                if (abs(a(i, j)) > best) {
                    best = abs(a(i, j));
                    pr = i;
                    pc = j;
                }
        piv.push_back(best);
        if (best == 0) break;
        for (std::size_t j = 0; j < cols; ++j) std::swap(a(k, j), a(pr, j));
        for (std::size_t i = 0; i < rows; ++i) std::swap(a(i, k), a(i, pc));
        for (std::size_t i = k + 1; i < rows; ++i) {
            const Complex<Real> f = a(i, k) / a(k, k);
            for (std::size_t j = k; j < cols; ++j) a(i, j) -= f * a(k, j);
        }
    }
    return piv;
}

/// Numerical rank: number of complete-pivoting pivots above rel_tol times
/// the first pivot.
template <class Real>
std::size_t numeric_rank(const CMatrix<Real>& a, const Real& rel_tol) {
    const auto piv = complete_pivots(a);
    if (piv.empty() || piv[0] == 0) return 0;
    std::size_t r = 0;
    for (const auto& p : piv)
        if (p > rel_tol * piv[0]) ++r;
    return r;
}

/// Orthonormalises in place by modified Gram-Schmidt applied twice, against
/// an optional fixed orthonormal prefix. Drops vectors that vanish.
template <class Real>
std::vector<CVector<Real>> orthonormalize(std::vector<CVector<Real>> vs, const std::vector<CVector<Real>>& prefix = {},
                                          const Real& drop_tol = Real(0)) {
    std::vector<CVector<Real>> out;
    for (auto& v : vs) {
        const Real before = norm(v);
        auto project_out = [&v](const std::vector<CVector<Real>>& basis) {
            for (const auto& q : basis) {
                const Complex<Real> c = inner(q, v);
                for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * q[i];
            }
        };
        for (int pass = 0; pass < 2; ++pass) {
            project_out(prefix);
            project_out(out);
        }
        const Real nv = norm(v);
        if (nv == 0 || nv <= drop_tol * before) continue;
        for (auto& z : v) z = z / nv;
        out.push_back(std::move(v));
    }
    return out;
}

/// Orthonormal basis of a null space whose dimension is known to be `dim`:
/// complete pivoting eliminates cols - dim pivots, the remaining columns
/// are free.
template <class Real>
std::vector<CVector<Real>> null_space(CMatrix<Real> a, std::size_t dim) {
    const std::size_t rows = a.rows(), cols = a.cols();
    if (dim > cols) throw std::invalid_argument("null_space: dimension exceeds column count");
    const std::size_t r = cols - dim;
    if (r > rows) throw std::invalid_argument("null_space: rank exceeds row count");
    std::vector<std::size_t> colperm(cols);
    std::iota(colperm.begin(), colperm.end(), 0);
    for (std::size_t k = 0; k < r; ++k) {
        std::size_t pr = k, pc = k;
        Real best = -1;
        for (std::size_t i = k; i < rows; ++i)
            for (std::size_t j = k; j < cols; ++j)
                if (abs(a(i, j)) > best) {
                    best = abs(a(i, j));
                    pr = i;
                    pc = j;
                }
        if (best == 0) throw SingularMatrixError("null_space: rank lower than expected");
        for (std::size_t j = 0; j < cols; ++j) std::swap(a(k, j), a(pr, j));
        for (std::size_t i = 0; i < rows; ++i) std::swap(a(i, k), a(i, pc));
        std::swap(colperm[k], colperm[pc]);
        for (std::size_t i = k + 1; i < rows; ++i) {
            const Complex<Real> f = a(i, k) / a(k, k);
            for (std::size_t j = k; j < cols; ++j) a(i, j) -= f * a(k, j);
        }
    }
    std::vector<CVector<Real>> basis;
    for (std::size_t f = r; f < cols; ++f) {
        CVector<Real> y(cols);
        y[f] = Complex<Real>(1);
        for (std::size_t i = r; i-- > 0;) {
            Complex<Real> s = a(i, f);
            for (std::size_t j = i + 1; j < r; ++j) s += a(i, j) * y[j];
            y[i] = -s / a(i, i);
        }
        CVector<Real> x(cols);
        for (std::size_t j = 0; j < cols; ++j) x[colperm[j]] = y[j];
        basis.push_back(std::move(x));
    }
    return orthonormalize(std::move(basis));
}

template <class Real>
CMatrix<Real> matrix_power(const CMatrix<Real>& a, int e) {
    CMatrix<Real> base = e < 0 ? inverse(a) : a;
    CMatrix<Real> out = CMatrix<Real>::identity(a.rows());
    unsigned n = static_cast<unsigned>(e < 0 ? -e : e);
    while (n) {
        if (n & 1u) out = out * base;
        base = base * base;
        n >>= 1u;
    }
    return out;
}

}  // namespace epc

#pragma once

#include <cstddef>
#include <numeric>
#include <ostream>
#include <vector>

#include "epcurves/exactmath/poly.hpp"

namespace epc {

/// Dense row-major matrix.
template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    Matrix(std::size_t rows, std::size_t cols, std::vector<T> data)
        : rows_(rows), cols_(cols), data_(std::move(data)) {
        if (data_.size() != rows * cols) throw std::invalid_argument("Matrix: data size mismatch");
    }
    Matrix(std::initializer_list<std::initializer_list<T>> rows) {
        rows_ = rows.size();
        cols_ = rows_ ? rows.begin()->size() : 0;
        for (const auto& r : rows) {
            if (r.size() != cols_) throw std::invalid_argument("Matrix: ragged initializer");
            data_.insert(data_.end(), r.begin(), r.end());
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::vector<T> column(std::size_t j) const {
        std::vector<T> c(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
        return c;
    }
    std::vector<T> row(std::size_t i) const {
        return std::vector<T>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    /// Rows [r0, r0+nr) x columns [c0, c0+nc).
    Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
        Matrix b(nr, nc);
        for (std::size_t i = 0; i < nr; ++i)
            for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
        return b;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("Matrix multiply: shape mismatch");
        Matrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T& aik = a(i, k);
                if (aik == T(0)) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
            }
        return c;
    }
    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        Matrix c = a;
        for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] += b.data_[i];
        return c;
    }
    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        Matrix c = a;
        for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] -= b.data_[i];
        return c;
    }

    std::vector<T> operator*(const std::vector<T>& v) const {
        if (v.size() != cols_) throw std::invalid_argument("Matrix-vector multiply: shape mismatch");
        std::vector<T> r(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r[i] += (*this)(i, j) * v[j];
        return r;
    }

    T trace() const {
        T t = T(0);
        for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
        return t;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<T> data_;
};

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;
using RationalVector = std::vector<Rational>;
using IntVector = std::vector<Integer>;

inline RatMatrix to_rational(const IntMatrix& m) {
    RatMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rational(m(i, j));
    return r;
}

inline IntMatrix int_matrix(std::initializer_list<std::initializer_list<long>> rows) {
    std::vector<Integer> data;
    std::size_t cols = rows.size() ? rows.begin()->size() : 0;
    for (const auto& r : rows) {
        if (r.size() != cols) throw std::invalid_argument("int_matrix: ragged rows");
        for (long v : r) data.emplace_back(v);
    }
    return IntMatrix(rows.size(), cols, std::move(data));
}

inline std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? " " : "") << m(i, j);
        os << "\n";
    }
    return os;
}

/// Characteristic polynomial det(xI - M) together with the integer matrices
/// B_1..B_d of adj(xI - M) = sum_k B_k x^(d-k).
struct CharpolyExpansion {
    IntPoly poly;
    std::vector<IntMatrix> adjugate_coeffs;
};

/// Faddeev-LeVerrier recurrence over the integers:
/// B_1 = I, c_{d-k} = -tr(M B_k) / k, B_{k+1} = M B_k + c_{d-k} I.
/// The divisions by k are exact.
inline CharpolyExpansion charpoly_expansion(const IntMatrix& m) {
    if (!m.is_square()) throw std::invalid_argument("charpoly: matrix not square");
    const std::size_t d = m.rows();
    std::vector<Integer> c(d + 1);
    c[d] = 1;
    CharpolyExpansion out;
    IntMatrix b = IntMatrix::identity(d);
    for (std::size_t k = 1; k <= d; ++k) {
        out.adjugate_coeffs.push_back(b);
        IntMatrix mb = m * b;
        Integer tr = mb.trace();
        if (tr % Integer(static_cast<long>(k)) != 0)
            throw ConsistencyError("Faddeev-LeVerrier: inexact trace division");
        c[d - k] = -tr / Integer(static_cast<long>(k));
        b = mb;
        for (std::size_t i = 0; i < d; ++i) b(i, i) += c[d - k];
    }
    // b is now M B_d + c_0 I, which vanishes by Cayley-Hamilton
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            if (!b(i, j).is_zero()) throw ConsistencyError("Faddeev-LeVerrier: Cayley-Hamilton residue nonzero");
    out.poly = IntPoly(std::move(c));
    return out;
}

inline IntPoly charpoly(const IntMatrix& m) { return charpoly_expansion(m).poly; }

/// Determinant by Bareiss fraction-free elimination.
inline Integer determinant(IntMatrix a) {
    if (!a.is_square()) throw std::invalid_argument("determinant: matrix not square");
    const std::size_t n = a.rows();
    if (n == 0) return Integer(1);
    Integer prev = 1;
    int sgn = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k).is_zero()) {
            std::size_t p = k + 1;
            while (p < n && a(p, k).is_zero()) ++p;
            if (p == n) return Integer(0);
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
            sgn = -sgn;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
            a(i, k) = 0;
        }
        prev = a(k, k);
    }
    return sgn * a(n - 1, n - 1);
}

/// Rank by Bareiss elimination scanning pivots column-last-first, an
/// elimination order distinct from rational_kernel's.
inline std::size_t rank_fraction_free(const RatMatrix& m) {
    // clear denominators row by row
    IntMatrix a(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Integer l = 1;
        for (std::size_t j = 0; j < m.cols(); ++j) l = boost::multiprecision::lcm(l, denominator_of(m(i, j)));
        for (std::size_t j = 0; j < m.cols(); ++j) a(i, j) = numerator_of(m(i, j) * Rational(l));
    }
    const std::size_t rows = a.rows(), cols = a.cols();
    std::size_t r = 0;
    Integer prev = 1;
    for (std::size_t cc = 0; cc < cols && r < rows; ++cc) {
        const std::size_t col = cols - 1 - cc;
        std::size_t p = rows;
        for (std::size_t i = rows; i-- > r;)
            if (!a(i, col).is_zero()) {
                p = i;
                break;
            }
        if (p == rows) continue;
        if (p != r)
            for (std::size_t j = 0; j < cols; ++j) std::swap(a(r, j), a(p, j));
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = 0; j < cols; ++j) {
                if (j == col) continue;
                a(i, j) = (a(i, j) * a(r, col) - a(i, col) * a(r, j)) / prev;
            }
            a(i, col) = 0;
        }
        prev = a(r, col);
        ++r;
    }
    return r;
}

/// Reduced row echelon form over Q; returns pivot columns.
inline std::vector<std::size_t> rref(RatMatrix& a) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t col = 0; col < a.cols() && r < a.rows(); ++col) {
        std::size_t p = r;
        while (p < a.rows() && a(p, col).is_zero()) ++p;
        if (p == a.rows()) continue;
        if (p != r)
            for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(r, j), a(p, j));
        const Rational inv = 1 / a(r, col);
        for (std::size_t j = 0; j < a.cols(); ++j) a(r, j) *= inv;
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == r || a(i, col).is_zero()) continue;
            const Rational f = a(i, col);
            for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
        }
        pivots.push_back(col);
        ++r;
    }
    return pivots;
}

/// Basis of {v : A v = 0}, one vector per free column of the RREF, with a 1
/// in that free column. Empty iff A has full column rank.
inline std::vector<RationalVector> rational_kernel(const RatMatrix& m) {
    RatMatrix a = m;
    const auto pivots = rref(a);
    std::vector<bool> is_pivot(a.cols(), false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<RationalVector> basis;
    for (std::size_t f = 0; f < a.cols(); ++f) {
        if (is_pivot[f]) continue;
        RationalVector v(a.cols());
        v[f] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a(r, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

inline std::size_t rank(const RatMatrix& m) {
    RatMatrix a = m;
    return rref(a).size();
}

/// Exact inverse over Q; throws if singular.
inline RatMatrix inverse(const RatMatrix& m) {
    if (!m.is_square()) throw std::invalid_argument("inverse: matrix not square");
    const std::size_t n = m.rows();
    RatMatrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = 1;
    }
    auto piv = rref(aug);
    if (piv.size() < n || piv[n - 1] != n - 1) throw std::invalid_argument("inverse: singular matrix");
    return aug.block(0, n, n, n);
}

/// Inverse of a unimodular integer matrix; throws if det != +-1.
inline IntMatrix unimodular_inverse(const IntMatrix& m) {
    const RatMatrix inv = inverse(to_rational(m));
    IntMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (denominator_of(inv(i, j)) != 1) throw std::invalid_argument("unimodular_inverse: not unimodular");
            out(i, j) = numerator_of(inv(i, j));
        }
    return out;
}

/// Primitive integer vector on the same rational line (first nonzero > 0).
inline IntVector clear_denominators(const RationalVector& v) {
    Integer l = 1;
    for (const auto& x : v) l = boost::multiprecision::lcm(l, denominator_of(x));
    IntVector out(v.size());
    Integer g = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        out[i] = numerator_of(v[i] * Rational(l));
        g = boost::multiprecision::gcd(g, out[i]);
    }
    if (g.is_zero()) return out;
    for (const auto& x : out)
        if (!x.is_zero()) {
            if (x.sign() < 0) g = -g;
            break;
        }
    for (auto& x : out) x /= g;
    return out;
}

}  // namespace epc

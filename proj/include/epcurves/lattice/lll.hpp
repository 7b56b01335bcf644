#pragma once

#include <vector>

#include "epcurves/exactmath.hpp"

namespace epc {

/// Lattice basis given by row vectors, with the Lovasz parameter delta.
struct LatticeBasis {
    std::vector<IntVector> vectors;
    Rational delta{99, 100};
};

struct LllResult {
    LatticeBasis basis;
    /// Unimodular U with U * B_in = B_out (rows are basis vectors).
    IntMatrix transform;
};

class DependentBasisError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline Integer dot(const IntVector& a, const IntVector& b) {
    Integer s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

/// Integral LLL (Cohen, A Course in Computational Algebraic Number Theory,
/// Alg. 2.6.7): all Gram-Schmidt data is kept as integers
///   d_i = prod_{j<=i} |b*_j|^2,  lambda_{ij} = d_j mu_{ij},
/// so the reduction is exact without any rational arithmetic.
inline LllResult lll_reduce(const LatticeBasis& in) {
    const Rational& delta = in.delta;
    if (delta <= Rational(1, 4) || delta >= 1) throw std::invalid_argument("lll_reduce: delta must lie in (1/4, 1)");
    std::vector<IntVector> b = in.vectors;
    const std::size_t n = b.size();
    IntMatrix h = IntMatrix::identity(n);
    if (n == 0) return {in, h};
    const std::size_t dim = b[0].size();
    for (const auto& v : b)
        if (v.size() != dim) throw std::invalid_argument("lll_reduce: vectors of different length");

    const Integer dp = numerator_of(delta), dq = denominator_of(delta);
    // 1-based bookkeeping as in the reference algorithm
    std::vector<Integer> d(n + 1);
    std::vector<std::vector<Integer>> lam(n + 1, std::vector<Integer>(n + 1));
    d[0] = 1;
    d[1] = dot(b[0], b[0]);
    if (d[1].is_zero()) throw DependentBasisError("lll_reduce: zero vector in basis");

    auto swap_rows = [&](std::size_t r1, std::size_t r2) {
        std::swap(b[r1 - 1], b[r2 - 1]);
        for (std::size_t j = 0; j < n; ++j) std::swap(h(r1 - 1, j), h(r2 - 1, j));
    };
    auto red = [&](std::size_t k, std::size_t l) {
        if (2 * abs(lam[k][l]) <= d[l]) return;
        const Integer q = round_div(lam[k][l], d[l]);
        for (std::size_t i = 0; i < dim; ++i) b[k - 1][i] -= q * b[l - 1][i];
        for (std::size_t j = 0; j < n; ++j) h(k - 1, j) -= q * h(l - 1, j);
        lam[k][l] -= q * d[l];
        for (std::size_t i = 1; i < l; ++i) lam[k][i] -= q * lam[l][i];
    };

    std::size_t k = 2, kmax = 1;
    while (k <= n) {
        if (k > kmax) {
            kmax = k;
            for (std::size_t j = 1; j <= k; ++j) {
                Integer u = dot(b[k - 1], b[j - 1]);
                for (std::size_t i = 1; i < j; ++i) u = (d[i] * u - lam[k][i] * lam[j][i]) / d[i - 1];
                if (j < k)
                    lam[k][j] = u;
                else {
                    d[k] = u;
                    if (u.is_zero()) throw DependentBasisError("lll_reduce: basis vectors are linearly dependent");
                }
            }
        }
        while (true) {
            red(k, k - 1);
            // Lovasz: d_k d_{k-2} + lambda^2 >= delta d_{k-1}^2
            const Integer lhs = dq * (d[k] * d[k - 2] + lam[k][k - 1] * lam[k][k - 1]);
            const Integer rhs = dp * d[k - 1] * d[k - 1];
            if (lhs >= rhs) break;
            // SWAP(k)
            swap_rows(k, k - 1);
            for (std::size_t j = 1; j + 1 < k; ++j) std::swap(lam[k][j], lam[k - 1][j]);
            const Integer l = lam[k][k - 1];
            const Integer bb = (d[k - 2] * d[k] + l * l) / d[k - 1];
            for (std::size_t i = k + 1; i <= kmax; ++i) {
                const Integer t = lam[i][k];
                lam[i][k] = (d[k] * lam[i][k - 1] - l * t) / d[k - 1];
                lam[i][k - 1] = (bb * t + l * lam[i][k]) / d[k];
            }
            d[k - 1] = bb;
            if (k > 2) --k;
        }
        for (std::size_t l = k - 1; l-- > 1;) red(k, l);
        ++k;
    }
    return {LatticeBasis{std::move(b), delta}, std::move(h)};
}

/// Exact Gram-Schmidt data (mu and |b*|^2) for verifying reduction
/// independently of the integral bookkeeping above.
struct GramSchmidt {
    std::vector<std::vector<Rational>> mu;
    std::vector<Rational> norms;
};

inline GramSchmidt gram_schmidt(const std::vector<IntVector>& b) {
    const std::size_t n = b.size();
    GramSchmidt gs;
    gs.mu.assign(n, std::vector<Rational>(n));
    gs.norms.assign(n, Rational(0));
    std::vector<std::vector<Rational>> star(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Rational> v(b[i].begin(), b[i].end());
        for (std::size_t j = 0; j < i; ++j) {
            Rational num = 0;
            for (std::size_t t = 0; t < v.size(); ++t) num += Rational(b[i][t]) * star[j][t];
            gs.mu[i][j] = num / gs.norms[j];
            for (std::size_t t = 0; t < v.size(); ++t) v[t] -= gs.mu[i][j] * star[j][t];
        }
        Rational nn = 0;
        for (const auto& x : v) nn += x * x;
        gs.norms[i] = nn;
        star[i] = std::move(v);
    }
    return gs;
}

inline bool is_lll_reduced(const std::vector<IntVector>& b, const Rational& delta) {
    const GramSchmidt gs = gram_schmidt(b);
    for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (abs(gs.mu[i][j]) > Rational(1, 2)) return false;
    for (std::size_t i = 1; i < b.size(); ++i) {
        const Rational m = gs.mu[i][i - 1];
        if (gs.norms[i] < (delta - m * m) * gs.norms[i - 1]) return false;
    }
    return true;
}

/// The lattice {x in Z^cols : A x = 0}, LLL-reduced. The basis comes from
/// reducing rows (e_i | C * A^T e_i): once C is large, exactly the first
/// dim-ker(A) reduced vectors have zero tail and they span the whole
/// kernel lattice (the remaining tails are then independent).
inline std::vector<IntVector> integer_kernel(const IntMatrix& a, const Rational& delta = Rational(99, 100)) {
    const std::size_t cols = a.cols(), rows = a.rows();
    const std::size_t kdim = rational_kernel(to_rational(a)).size();
    if (kdim == 0) return {};
    if (rows == 0) {
        std::vector<IntVector> id;
        for (std::size_t i = 0; i < cols; ++i) {
            IntVector e(cols);
            e[i] = 1;
            id.push_back(std::move(e));
        }
        return id;
    }
    Integer scale = 1024;
    for (int attempt = 0; attempt < 64; ++attempt, scale *= scale) {
        LatticeBasis lb{{}, delta};
        for (std::size_t i = 0; i < cols; ++i) {
            IntVector v(cols + rows);
            v[i] = 1;
            for (std::size_t r = 0; r < rows; ++r) v[cols + r] = scale * a(r, i);
            lb.vectors.push_back(std::move(v));
        }
        const auto red = lll_reduce(lb);
        std::vector<IntVector> kernel;
        bool ok = true;
        for (std::size_t i = 0; i < kdim; ++i) {
            const auto& v = red.basis.vectors[i];
            for (std::size_t r = 0; r < rows; ++r)
                if (!v[cols + r].is_zero()) ok = false;
            kernel.emplace_back(v.begin(), v.begin() + cols);
        }
        if (ok) return kernel;
    }
    throw ConsistencyError("integer_kernel: embedding scale exhausted");
}

/// Small nonzero integer vector in the Q-span of `kernel`: the span is
/// saturated to its full integer lattice, LLL-reduced, and the reduced
/// vector of least Euclidean norm is returned (first nonzero entry > 0).
/// Size-reduced, not provably shortest.
inline IntVector shorten_witness(const std::vector<RationalVector>& kernel,
                                 const Rational& delta = Rational(99, 100)) {
    if (kernel.empty()) throw std::invalid_argument("shorten_witness: empty kernel");
    const std::size_t dim = kernel[0].size();
    // span(kernel) = ker(Q) where the rows of Q span the orthogonal complement
    RatMatrix kt(kernel.size(), dim);
    for (std::size_t i = 0; i < kernel.size(); ++i)
        for (std::size_t j = 0; j < dim; ++j) kt(i, j) = kernel[i][j];
    const auto complement = rational_kernel(kt);
    IntMatrix q(complement.size(), dim);
    for (std::size_t i = 0; i < complement.size(); ++i) {
        const IntVector row = clear_denominators(complement[i]);
        for (std::size_t j = 0; j < dim; ++j) q(i, j) = row[j];
    }
    const auto lattice = integer_kernel(q, delta);
    if (lattice.empty()) throw ConsistencyError("shorten_witness: kernel lattice unexpectedly trivial");
    const IntVector* best = &lattice[0];
    Integer best_norm = dot(lattice[0], lattice[0]);
    for (const auto& v : lattice) {
        const Integer nv = dot(v, v);
        if (nv < best_norm) {
            best_norm = nv;
            best = &v;
        }
    }
    IntVector w = *best;
    for (const auto& x : w)
        if (!x.is_zero()) {
            if (x.sign() < 0)
                for (auto& y : w) y = -y;
            break;
        }
    return w;
}

}  // namespace epc

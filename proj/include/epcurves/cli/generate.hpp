#pragma once

// Corpus generators: companion matrices, block assembly, unimodular
// conjugation.

#include <cstdint>
#include <random>

#include "epcurves/exactmath.hpp"

namespace epc::cli {

/// Companion matrix of a monic p = x^d + c_{d-1} x^{d-1} + ... + c_0: ones
/// on the superdiagonal, last row (-c_0, ..., -c_{d-1}). The eigenvector
/// for a root t is (1, t, ..., t^(d-1)); det = (-1)^d c_0, so -c_0 for odd d.
inline IntMatrix companion(const IntPoly& p) {
    const int d = p.degree();
    if (d < 1 || p.lead() != 1) throw InputError("companion: polynomial must be monic of positive degree");
    IntMatrix c(static_cast<std::size_t>(d), static_cast<std::size_t>(d));
    for (int i = 0; i + 1 < d; ++i) c(i, i + 1) = 1;
    for (int j = 0; j < d; ++j) c(d - 1, j) = -p.coeff(j);
    return c;
}

/// Companion matrix for the generator: odd degree >= 3, monic, constant
/// term -1 (so det = 1).
inline IntMatrix generate_companion(const IntPoly& p) {
    if (p.degree() < 3 || p.degree() % 2 == 0)
        throw InputError("generate companion: degree must be odd and at least 3 (got " + std::to_string(p.degree()) + ")");
    if (p.lead() != 1) throw InputError("generate companion: polynomial must be monic");
    if (p.coeff(0) != -1) throw InputError("generate companion: constant term must be -1 so that det = 1");
    return companion(p);
}

inline IntMatrix block_diagonal(const IntMatrix& n, const IntMatrix& p) {
    if (!n.is_square() || !p.is_square()) throw InputError("generate block: blocks must be square");
    if ((n.rows() + p.rows()) % 2 == 0) throw InputError("generate block: total dimension must be odd");
    if (n.rows() % 2 == 0) throw InputError("generate block: N block must have odd dimension");
    const std::size_t s = n.rows(), d = s + p.rows();
    IntMatrix m(d, d);
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = 0; j < s; ++j) m(i, j) = n(i, j);
    for (std::size_t i = 0; i < p.rows(); ++i)
        for (std::size_t j = 0; j < p.rows(); ++j) m(s + i, s + j) = p(i, j);
    return m;
}

struct Conjugation {
    IntMatrix matrix;
    /// U with matrix = U M U^-1, det U = 1.
    IntMatrix transform;
};

/// U M U^-1 for U a product of `steps` elementary matrices I + c e_ij
/// (i != j, c = +-1) drawn from a mt19937_64 stream seeded with `seed`.
/// Raw engine output is used so the result is the same on every platform.
inline Conjugation conjugate(const IntMatrix& m, std::uint64_t seed, int steps) {
    if (!m.is_square()) throw InputError("generate conjugate: matrix must be square");
    if (steps < 0) throw InputError("generate conjugate: steps must be nonnegative");
    const std::size_t d = m.rows();
    Conjugation out{m, IntMatrix::identity(d)};
    if (d < 2) return out;
    std::mt19937_64 rng(seed);
    for (int t = 0; t < steps; ++t) {
        const std::size_t i = rng() % d;
        std::size_t j = rng() % (d - 1);
        if (j >= i) ++j;
        const long c = (rng() & 1u) ? 1 : -1;
        // E M E^-1 with E = I + c e_ij: row_i += c row_j, then col_j -= c col_i
        for (std::size_t k = 0; k < d; ++k) out.matrix(i, k) += c * out.matrix(j, k);
        for (std::size_t k = 0; k < d; ++k) out.matrix(k, j) -= c * out.matrix(k, i);
        for (std::size_t k = 0; k < d; ++k) out.transform(i, k) += c * out.transform(j, k);
    }
    return out;
}

}  // namespace epc::cli

#pragma once

// Independent oracles and generators shared by the test binaries.

#include <algorithm>
#include <random>
#include <vector>

#include "epcurves/exactmath.hpp"

namespace epc::test {

/// Squared length of the shortest nonzero vector of a 2-D lattice by
/// enumerating coefficients in a box (large enough for small bases).
inline long shortest_norm2_2d(std::vector<std::vector<long>> b, long box = 60) {
    long best = -1;
    for (long x = -box; x <= box; ++x)
        for (long y = -box; y <= box; ++y) {
            if (x == 0 && y == 0) continue;
            const long u = x * b[0][0] + y * b[1][0], v = x * b[0][1] + y * b[1][1];
            const long n = u * u + v * v;
            if (best < 0 || n < best) best = n;
        }
    return best;
}

inline std::vector<IntVector> rows_times(const IntMatrix& u, const std::vector<IntVector>& b) {
    std::vector<IntVector> out(u.rows(), IntVector(b.empty() ? 0 : b[0].size()));
    for (std::size_t i = 0; i < u.rows(); ++i)
        for (std::size_t k = 0; k < u.cols(); ++k)
            for (std::size_t j = 0; j < out[i].size(); ++j) out[i][j] += u(i, k) * b[k][j];
    return out;
}

/// Rational-root test: true iff p (degree >= 1) has a rational root.
inline bool has_rational_root(const IntPoly& p) {
    auto divisors = [](Integer v) {
        v = abs(v);
        std::vector<Integer> ds;
        for (Integer d = 1; d * d <= v; ++d)
            if (v % d == 0) {
                ds.push_back(d);
                ds.push_back(v / d);
            }
        return ds;
    };
    if (p.coeff(0).is_zero()) return true;
    for (const auto& num : divisors(p.coeff(0)))
        for (const auto& den : divisors(p.lead()))
            for (int s : {1, -1})
                if (p.eval(Rational(s * num, den)).is_zero()) return true;
    return false;
}

/// Random primitive polynomial of degree 2 or 3 with a real root and no
/// rational root, hence irreducible over Q.
inline IntPoly random_irreducible_with_real_root(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> coef(-9, 9), degd(2, 3), lead(1, 3);
    while (true) {
        const int d = degd(rng);
        std::vector<Integer> c(d + 1);
        for (auto& v : c) v = coef(rng);
        c.back() = lead(rng);
        IntPoly p = IntPoly(c).primitive();
        if (p.degree() != d || has_rational_root(p)) continue;
        if (sturm_count(p) == 0) continue;
        return p;
    }
}

inline IntMatrix companion(const IntPoly& p) {
    const std::size_t d = p.degree();
    IntMatrix c(d, d);
    for (std::size_t i = 0; i + 1 < d; ++i) c(i, i + 1) = 1;
    for (std::size_t j = 0; j < d; ++j) c(d - 1, j) = -p.coeff(j);
    return c;
}

/// Rank of an integer matrix modulo a prime by plain Gaussian elimination.
inline std::size_t rank_mod_p(const IntMatrix& m, long prime) {
    std::vector<std::vector<long>> a(m.rows(), std::vector<long>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            Integer r = m(i, j) % prime;
            if (r.sign() < 0) r += prime;
            a[i][j] = r.convert_to<long>();
        }
    auto powmod = [prime](long b, long e) {
        long r = 1;
        b %= prime;
        while (e) {
            if (e & 1) r = static_cast<long>((__int128)r * b % prime);
            b = static_cast<long>((__int128)b * b % prime);
            e >>= 1;
        }
        return r;
    };
    std::size_t rank = 0;
    for (std::size_t col = 0; col < m.cols() && rank < m.rows(); ++col) {
        std::size_t p = rank;
        while (p < m.rows() && a[p][col] == 0) ++p;
        if (p == m.rows()) continue;
        std::swap(a[p], a[rank]);
        const long inv = powmod(a[rank][col], prime - 2);
        for (std::size_t i = rank + 1; i < m.rows(); ++i) {
            const long f = static_cast<long>((__int128)a[i][col] * inv % prime);
            for (std::size_t j = col; j < m.cols(); ++j)
                a[i][j] = static_cast<long>(((__int128)a[i][j] - (__int128)f * a[rank][j] % prime + prime) % prime);
        }
        ++rank;
    }
    return rank;
}

/// Remainder of a rational coefficient vector modulo a monic f, by
/// schoolbook long division.
inline RationalVector mod_monic(RationalVector c, const IntPoly& f) {
    const std::size_t d = f.degree();
    while (c.size() > d) {
        const Rational top = c.back();
        const std::size_t shift = c.size() - 1 - d;
        for (std::size_t i = 0; i <= d; ++i) c[shift + i] -= top * Rational(f.coeff(i));
        c.pop_back();
    }
    c.resize(d);
    return c;
}

inline RationalVector mul_mod(const RationalVector& a, const RationalVector& b, const IntPoly& f) {
    RationalVector c(a.size() + b.size(), Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return mod_monic(c, f);
}

inline RationalVector x_power_mod(std::size_t e, const IntPoly& f) {
    RationalVector c(e + 1, Rational(0));
    c[e] = 1;
    return mod_monic(c, f);
}

/// Exact check that the columns of `coords` (power-basis coefficients of
/// a_i in Q[x]/(f)) satisfy M a = x a and sum_i s_i a_i = 0.
inline bool eigen_relation_holds(const IntMatrix& m, const RatMatrix& coords, const IntPoly& f, const IntVector& s) {
    const std::size_t d = f.degree(), dim = m.rows();
    const RationalVector x = x_power_mod(1, f);
    for (std::size_t i = 0; i < dim; ++i) {
        RationalVector lhs(d, Rational(0));
        for (std::size_t l = 0; l < dim; ++l)
            for (std::size_t r = 0; r < d; ++r) lhs[r] += Rational(m(i, l)) * coords(r, l);
        if (lhs != mul_mod(x, coords.column(i), f)) return false;
    }
    for (std::size_t r = 0; r < d; ++r) {
        Rational acc = 0;
        for (std::size_t i = 0; i < dim; ++i) acc += Rational(s[i]) * coords(r, i);
        if (acc != 0) return false;
    }
    return true;
}

}  // namespace epc::test

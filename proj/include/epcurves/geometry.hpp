#pragma once

// Numeric realisation of the deck group on H x C^n and checks of its
// identities.

#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "epcurves/curvetest.hpp"
#include "epcurves/numeric/matfun.hpp"

namespace epc {

template <class Real>
struct Translation {
    Real w = 0;
    CVector<Real> z;
};

template <class Real>
struct EPData {
    IntMatrix M;
    std::size_t n = 0;
    Real alpha = 0;
    /// Real alpha-eigenvector, unit norm, first nonzero component positive.
    std::vector<Real> a;
    /// Basis of W; betas[j] is the eigenvalue of the chain b[j] belongs to.
    std::vector<CVector<Real>> b;
    std::vector<Complex<Real>> betas;
    /// M b_j = sum_l R(l, j) b_l.
    CMatrix<Real> R, Rt, Rt_inv, Delta;
    /// u[i-1] = (a^i, b_1^i, ..., b_n^i).
    std::vector<Translation<Real>> u;
    Real eigen_residual = 0, r_residual = 0, residual = 0;
    /// Set when the basis of W was assembled from the diagonal blocks
    /// [0, split) and [split, dim).
    std::optional<std::size_t> block_split;

    void set_R(CMatrix<Real> r) {
        R = std::move(r);
        Rt = R.transpose();
        Rt_inv = inverse(Rt);
        Delta = logm(Rt);
    }

    CMatrix<Real> rt_power(long m) const {
        if (m == 0) return CMatrix<Real>::identity(n);
        return matrix_power(m > 0 ? Rt : Rt_inv, static_cast<int>(m > 0 ? m : -m));
    }
};

namespace detail {

template <class Real>
CMatrix<Real> shifted(const CMatrix<Real>& m, const Complex<Real>& s) {
    CMatrix<Real> a = m;
    for (std::size_t i = 0; i < a.rows(); ++i) a(i, i) -= s;
    return a;
}

/// Basis of the generalised eigenspace of beta (algebraic multiplicity
/// mult) ordered along the flag ker A subset ker A^2 subset ..., A = m -
/// beta I, so that the matrix of m on it is upper triangular.
template <class Real>
std::vector<CVector<Real>> generalized_eigenbasis(const CMatrix<Real>& m, const Complex<Real>& beta, std::size_t mult) {
    const CMatrix<Real> a = shifted(m, beta);
    const Real tol = pow2_neg<Real>(mantissa_bits<Real>() / 2);
    std::vector<CVector<Real>> basis;
    CMatrix<Real> ap = a;
    for (std::size_t p = 1; p <= mult && basis.size() < mult; ++p) {
        std::size_t dim = p == mult ? mult : std::min(mult, a.cols() - numeric_rank(ap, tol));
        if (dim <= basis.size()) dim = std::min(mult, basis.size() + 1);
        std::vector<CVector<Real>> kernel;
        try {
            kernel = null_space(ap, dim);
        } catch (const SingularMatrixError&) {
            kernel = null_space(matrix_power(a, static_cast<int>(mult)), mult);
            dim = mult;
        }
        auto fresh = orthonormalize(std::move(kernel), basis, tol);
        for (std::size_t i = 0; i < fresh.size() && basis.size() < dim; ++i) basis.push_back(std::move(fresh[i]));
        ap = ap * a;
    }
    if (basis.size() != mult) throw ConvergenceError("generalized_eigenbasis: could not resolve the Jordan flag");
    return basis;
}

}  // namespace detail

/// Basis of W for an integer matrix: generalised eigenvectors of every
/// eigenvalue with Im > 0, ordered by eigenvalue then along the Jordan flag.
template <class Real>
std::pair<std::vector<CVector<Real>>, std::vector<Complex<Real>>> w_basis(const IntMatrix& m) {
    const CMatrix<Real> cm = to_complex<Real>(m);
    std::vector<CVector<Real>> basis;
    std::vector<Complex<Real>> betas;
    for (const auto& f : squarefree_factorization(charpoly(m))) {
        const auto roots = split_roots<Real>(f.factor);
        for (const auto& beta : roots.upper) {
            for (auto& v : detail::generalized_eigenbasis(cm, beta, static_cast<std::size_t>(f.multiplicity))) {
                basis.push_back(std::move(v));
                betas.push_back(beta);
            }
        }
    }
    return {basis, betas};
}

/// Assembles the construction data. With block_split set, the basis of W is
/// the basis for the upper-left block padded with zeros, followed by the
/// basis for the lower-right block; R is always read off from coordinates in
/// the full basis (a, b, conj b) of M itself.
template <class Real>
EPData<Real> build_ep_data(const IntMatrix& m, AdmissibilityReport& rep,
                           std::optional<std::size_t> block_split = std::nullopt) {
    if (!rep.admissible())
        throw AdmissibilityError(rep.reason, std::string("matrix not admissible: ") + reason_code(rep.reason));
    RealAlgebraic& alpha = *rep.alpha;
    if (!alpha.minpoly) minpoly_of_root(alpha);
    const std::size_t dim = m.rows();
    EPData<Real> d;
    d.M = m;
    d.n = (dim - 1) / 2;
    d.block_split = block_split;
    d.alpha = to_real<Real>(alpha.approximate(mantissa_bits<Real>() + 8));

    d.a = eigenvector_exact(m, alpha).evaluate(d.alpha);
    Real an = 0;
    for (const auto& x : d.a) an += x * x;
    an = sqrt(an);
    const Real sgn = [&] {
        for (const auto& x : d.a)
            if (x != 0) return x > 0 ? Real(1) : Real(-1);
        return Real(1);
    }();
    for (auto& x : d.a) x = sgn * x / an;

    if (block_split) {
        const std::size_t s = *block_split;
        if (s == 0 || s >= dim) throw std::invalid_argument("build_ep_data: block split out of range");
        auto [bn, betan] = w_basis<Real>(m.block(0, 0, s, s));
        auto [bp, betap] = w_basis<Real>(m.block(s, s, dim - s, dim - s));
        for (std::size_t j = 0; j < bn.size(); ++j) {
            CVector<Real> v(dim);
            std::copy(bn[j].begin(), bn[j].end(), v.begin());
            d.b.push_back(std::move(v));
            d.betas.push_back(betan[j]);
        }
        for (std::size_t j = 0; j < bp.size(); ++j) {
            CVector<Real> v(dim);
            std::copy(bp[j].begin(), bp[j].end(), v.begin() + static_cast<std::ptrdiff_t>(s));
            d.b.push_back(std::move(v));
            d.betas.push_back(betap[j]);
        }
    } else {
        std::tie(d.b, d.betas) = w_basis<Real>(m);
    }
    if (d.b.size() != d.n) throw ConsistencyError("build_ep_data: basis of W has the wrong size");

    const CMatrix<Real> cm = to_complex<Real>(m);
    CMatrix<Real> full(dim, dim), mb(dim, d.n);
    for (std::size_t i = 0; i < dim; ++i) full(i, 0) = Complex<Real>(d.a[i]);
    for (std::size_t j = 0; j < d.n; ++j) {
        const CVector<Real> img = cm * d.b[j];
        for (std::size_t i = 0; i < dim; ++i) {
            full(i, 1 + j) = d.b[j][i];
            full(i, 1 + d.n + j) = d.b[j][i].conj();
            mb(i, j) = img[i];
        }
    }
    const CMatrix<Real> x = lu_solve(full, mb);
    CMatrix<Real> r(d.n, d.n);
    for (std::size_t l = 0; l < d.n; ++l)
        for (std::size_t j = 0; j < d.n; ++j) r(l, j) = x(1 + l, j);

    CVector<Real> av(dim);
    for (std::size_t i = 0; i < dim; ++i) av[i] = Complex<Real>(d.a[i]);
    CVector<Real> ma = cm * av;
    for (std::size_t i = 0; i < dim; ++i) ma[i] -= Complex<Real>(d.alpha * d.a[i]);
    d.eigen_residual = norm(ma);
    for (std::size_t j = 0; j < d.n; ++j) {
        CVector<Real> res = cm * d.b[j];
        for (std::size_t l = 0; l < d.n; ++l)
            for (std::size_t i = 0; i < dim; ++i) res[i] -= r(l, j) * d.b[l][i];
        const Real rel = norm(res) / norm(d.b[j]);
        if (rel > d.r_residual) d.r_residual = rel;
    }
    d.residual = d.eigen_residual > d.r_residual ? d.eigen_residual : d.r_residual;
    d.set_R(std::move(r));

    for (std::size_t i = 0; i < dim; ++i) {
        Translation<Real> t;
        t.w = d.a[i];
        for (std::size_t j = 0; j < d.n; ++j) t.z.push_back(d.b[j][i]);
        d.u.push_back(std::move(t));
    }
    return d;
}

template <class Real>
struct Point {
    Complex<Real> w;
    CVector<Real> z;
};

template <class Real>
struct TangentVector {
    /// H-direction, Z = X + iY.
    Complex<Real> Z;
    /// C^n-direction.
    CVector<Real> A;
};

/// (w, z) -> (alpha^m w + t_w, (R^T)^m z + t_z).
template <class Real>
struct AffineAut {
    long m = 0;
    Real t_w = 0;
    CVector<Real> t_z;

    static AffineAut identity(std::size_t n) { return {0, Real(0), CVector<Real>(n)}; }
};

template <class Real>
Real alpha_power(const EPData<Real>& d, long m) {
    using std::pow;
    return pow(d.alpha, Real(m));
}

template <class Real>
Point<Real> apply(const EPData<Real>& d, const AffineAut<Real>& f, const Point<Real>& p) {
    Point<Real> q;
    q.w = Complex<Real>(alpha_power(d, f.m)) * p.w + Complex<Real>(f.t_w);
    q.z = d.rt_power(f.m) * p.z;
    for (std::size_t i = 0; i < q.z.size(); ++i) q.z[i] += f.t_z[i];
    return q;
}

/// The derivative of f acting on a tangent vector.
template <class Real>
TangentVector<Real> push_forward(const EPData<Real>& d, const AffineAut<Real>& f, const TangentVector<Real>& v) {
    return {Complex<Real>(alpha_power(d, f.m)) * v.Z, d.rt_power(f.m) * v.A};
}

/// f o g.
template <class Real>
AffineAut<Real> compose(const EPData<Real>& d, const AffineAut<Real>& f, const AffineAut<Real>& g) {
    AffineAut<Real> h;
    h.m = f.m + g.m;
    h.t_w = alpha_power(d, f.m) * g.t_w + f.t_w;
    h.t_z = d.rt_power(f.m) * g.t_z;
    for (std::size_t i = 0; i < h.t_z.size(); ++i) h.t_z[i] += f.t_z[i];
    return h;
}

/// g_index^power; index 0 is g0 = (alpha w, R^T z), index i >= 1 the
/// translation by u_i.
template <class Real>
AffineAut<Real> generator(const EPData<Real>& d, std::size_t index, long power = 1) {
    AffineAut<Real> g = AffineAut<Real>::identity(d.n);
    if (index == 0) {
        g.m = power;
        return g;
    }
    if (index > d.u.size()) throw std::out_of_range("generator index out of range");
    const Translation<Real>& u = d.u[index - 1];
    const Real p(power);
    g.t_w = p * u.w;
    for (std::size_t i = 0; i < d.n; ++i) g.t_z[i] = Complex<Real>(p) * u.z[i];
    return g;
}

enum class WordOrder {
    /// The first factor acts first: g0^s0 is applied before g1^s1, giving
    /// w -> alpha^s0 w + sum s_i a^i for (s0, s1, ...).
    LeftToRightApplication,
    /// Ordinary composition: the last factor acts first.
    Composition,
};

template <class Real>
AffineAut<Real> word_to_affine(const EPData<Real>& d, const DeckWord& word,
                               WordOrder order = WordOrder::LeftToRightApplication) {
    AffineAut<Real> acc = AffineAut<Real>::identity(d.n);
    for (const auto& [index, power] : word.factors) {
        const AffineAut<Real> g = generator(d, index, power);
        acc = order == WordOrder::LeftToRightApplication ? compose(d, g, acc) : compose(d, acc, g);
    }
    return acc;
}

template <class Real>
AffineAut<Real> word_to_affine(const EPData<Real>& d, const std::vector<long>& exponents,
                               WordOrder order = WordOrder::LeftToRightApplication) {
    return word_to_affine(d, DeckWord::from_exponents(exponents), order);
}

/// Half the Poincare form on (V, JV): (2 / (4 Im(w)^2)) (|X|^2 + |Y|^2)
/// with Z = X + iY. Leaf directions (Z = 0) are null.
template <class Real>
Real omega_tilde(const Complex<Real>& w, const TangentVector<Real>& v) {
    if (!(w.im > 0)) throw InputError("omega_tilde: Im w must be positive");
    return Real(2) / (4 * w.im * w.im) * (v.Z.re * v.Z.re + v.Z.im * v.Z.im);
}

struct GeometryCheck {
    std::string name;
    bool passed = false;
    double deviation = 0;
    double tolerance = 0;
    std::string detail;
};

namespace detail {

template <class Real>
struct Sampler {
    std::mt19937_64 rng;
    explicit Sampler(std::uint64_t seed) : rng(seed) {}

    Real uniform(double lo, double hi) { return Real(std::uniform_real_distribution<double>(lo, hi)(rng)); }
    Complex<Real> complex(double r) { return {uniform(-r, r), uniform(-r, r)}; }
    CVector<Real> vec(std::size_t n, double r) {
        CVector<Real> v(n);
        for (auto& z : v) z = complex(r);
        return v;
    }
    Point<Real> point(std::size_t n) { return {Complex<Real>(uniform(-2, 2), uniform(0.1, 3)), vec(n, 2)}; }
};

template <class Real>
Real point_distance(const Point<Real>& p, const Point<Real>& q) {
    Real s = (p.w - q.w).norm2();
    for (std::size_t i = 0; i < p.z.size(); ++i) s += (p.z[i] - q.z[i]).norm2();
    return sqrt(s);
}

template <class Real>
Real point_scale(const Point<Real>& p) {
    Real s = p.w.norm2();
    for (const auto& z : p.z) s += z.norm2();
    return Real(1) + sqrt(s);
}

template <class Real>
Real affine_distance(const AffineAut<Real>& f, const AffineAut<Real>& g) {
    if (f.m != g.m) return std::numeric_limits<Real>::infinity();
    Real s = (f.t_w - g.t_w) * (f.t_w - g.t_w);
    for (std::size_t i = 0; i < f.t_z.size(); ++i) s += (f.t_z[i] - g.t_z[i]).norm2();
    return sqrt(s);
}

inline GeometryCheck make_check(std::string name, double dev, double tol, std::string detail = {}) {
    return {std::move(name), dev <= tol, dev, tol, std::move(detail)};
}

template <class Real>
double to_double(const Real& x) {
    return static_cast<double>(x);
}

}  // namespace detail

/// g0 g_j g0^-1 against the translation by sum_k M_jk u_k, both as affine
/// maps and at `points` random points.
template <class Real>
GeometryCheck check_conjugation_relations(const EPData<Real>& d, double tol, int points = 10, std::uint64_t seed = 1) {
    detail::Sampler<Real> smp(seed);
    const std::size_t dim = d.M.rows();
    const AffineAut<Real> g0 = generator(d, 0, 1), g0inv = generator(d, 0, -1);
    std::vector<Point<Real>> pts;
    for (int i = 0; i < points; ++i) pts.push_back(smp.point(d.n));
    Real worst = 0;
    for (std::size_t j = 1; j <= dim; ++j) {
        const AffineAut<Real> lhs = compose(d, g0, compose(d, generator(d, j), g0inv));
        AffineAut<Real> rhs = AffineAut<Real>::identity(d.n);
        for (std::size_t k = 0; k < dim; ++k) {
            if (d.M(j - 1, k) == 0) continue;
            const Real c = to_real<Real>(d.M(j - 1, k));
            rhs.t_w += c * d.u[k].w;
            for (std::size_t i = 0; i < d.n; ++i) rhs.t_z[i] += Complex<Real>(c) * d.u[k].z[i];
        }
        Real dev = detail::affine_distance(lhs, rhs);
        for (const auto& p : pts) {
            const Real e = detail::point_distance(apply(d, lhs, p), apply(d, rhs, p)) / detail::point_scale(p);
            if (e > dev) dev = e;
        }
        if (dev > worst) worst = dev;
    }
    return detail::make_check("conjugation_relations", detail::to_double(worst), tol,
                              "g0 g_j g0^-1 = translation by sum_k M_jk u_k for every j");
}

template <class Real>
GeometryCheck check_determinant_identity(const EPData<Real>& d, double tol) {
    const Real v = d.alpha * determinant(d.R).norm2();
    return detail::make_check("alpha_det_R_squared", detail::to_double(abs(v - Real(1))), tol, "alpha |det R|^2 = 1");
}

template <class Real>
GeometryCheck check_exp_log(const EPData<Real>& d, double tol) {
    const Real dev = frobenius<Real>(expm(d.Delta) - d.Rt) / frobenius(d.Rt);
    return detail::make_check("exp_Delta_equals_Rt", detail::to_double(dev), tol, "exp(Delta) = R^T, Delta principal log");
}

/// Relative change of omega_tilde under every generator and its inverse at
/// `samples` random (point, tangent) pairs; every tenth sample has Z = 0.
template <class Real>
GeometryCheck check_omega_invariance(const EPData<Real>& d, int samples, double tol, std::uint64_t seed = 2) {
    detail::Sampler<Real> smp(seed);
    const std::size_t dim = d.M.rows();
    std::vector<AffineAut<Real>> gens{generator(d, 0, 1), generator(d, 0, -1)};
    for (std::size_t j = 1; j <= dim; ++j) gens.push_back(generator(d, j));
    Real worst = 0;
    for (int s = 0; s < samples; ++s) {
        const Point<Real> p = smp.point(d.n);
        TangentVector<Real> v{smp.complex(1), smp.vec(d.n, 1)};
        if (s % 10 == 9) v.Z = Complex<Real>(0);
        const Real base = omega_tilde(p.w, v);
        for (const auto& g : gens) {
            const Real moved = omega_tilde(apply(d, g, p).w, push_forward(d, g, v));
            const Real dev = base == 0 ? abs(moved) : abs(moved - base) / base;
            if (dev > worst) worst = dev;
        }
    }
    return detail::make_check("omega_invariance", detail::to_double(worst), tol,
                              std::to_string(samples) + " samples, all generators and g0^-1");
}

/// omega_tilde(V, JV) >= 0 everywhere, below `zero_threshold` exactly on the
/// Z = 0 samples and above it otherwise.
template <class Real>
GeometryCheck check_omega_semipositive(const EPData<Real>& d, int samples, double zero_threshold, std::uint64_t seed = 3) {
    detail::Sampler<Real> smp(seed);
    bool ok = true;
    Real most_negative = 0;
    for (int s = 0; s < samples; ++s) {
        const Point<Real> p = smp.point(d.n);
        TangentVector<Real> v{smp.complex(1), smp.vec(d.n, 1)};
        const bool null_direction = s % 2 == 1;
        if (null_direction) v.Z = Complex<Real>(0);
        const Real val = omega_tilde(p.w, v);
        if (val < most_negative) most_negative = val;
        const bool zero = detail::to_double(val) <= zero_threshold;
        if (val < 0 || zero != null_direction) ok = false;
    }
    GeometryCheck c = detail::make_check("omega_semipositive", most_negative < 0 ? detail::to_double(-most_negative) : 0.0, 0.0,
                                         "nonnegative; zero exactly on Z = 0 samples");
    c.passed = ok;
    c.tolerance = zero_threshold;
    return c;
}

/// Real rank of the u_i in R x C^n = R^(2n+1) with a pivot-ratio guard.
template <class Real>
GeometryCheck check_u_independence(const EPData<Real>& d) {
    const std::size_t dim = d.M.rows();
    CMatrix<Real> u(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
        u(i, 0) = Complex<Real>(d.u[i].w);
        for (std::size_t j = 0; j < d.n; ++j) {
            u(i, 1 + 2 * j) = Complex<Real>(d.u[i].z[j].re);
            u(i, 2 + 2 * j) = Complex<Real>(d.u[i].z[j].im);
        }
    }
    const auto piv = complete_pivots(u);
    const Real ratio = piv.back() / piv.front();
    const Real guard = pow2_neg<Real>(mantissa_bits<Real>() / 2);
    const std::size_t rank = numeric_rank(u, guard);
    GeometryCheck c = detail::make_check("u_real_independence", detail::to_double(ratio), detail::to_double(guard),
                                         "numeric rank " + std::to_string(rank) + " of " + std::to_string(dim));
    c.passed = rank == dim && ratio > guard;
    return c;
}

/// word(w1 ++ w2) against the composition of word(w1) and word(w2) in the
/// given order, on random words at `points` random points.
template <class Real>
GeometryCheck check_composition(const EPData<Real>& d, double tol, int points = 10, std::uint64_t seed = 4,
                                WordOrder order = WordOrder::LeftToRightApplication) {
    detail::Sampler<Real> smp(seed);
    std::uniform_int_distribution<std::size_t> gen(0, d.M.rows());
    std::uniform_int_distribution<long> pw(-2, 2);
    std::uniform_int_distribution<int> len(1, 5);
    Real worst = 0;
    for (int t = 0; t < points; ++t) {
        DeckWord w1, w2;
        for (int i = len(smp.rng); i > 0; --i) w1.factors.emplace_back(gen(smp.rng), pw(smp.rng));
        for (int i = len(smp.rng); i > 0; --i) w2.factors.emplace_back(gen(smp.rng), pw(smp.rng));
        DeckWord both = w1;
        both.factors.insert(both.factors.end(), w2.factors.begin(), w2.factors.end());
        const AffineAut<Real> f1 = word_to_affine(d, w1, order), f2 = word_to_affine(d, w2, order);
        const AffineAut<Real> expect = order == WordOrder::LeftToRightApplication ? compose(d, f2, f1) : compose(d, f1, f2);
        const AffineAut<Real> got = word_to_affine(d, both, order);
        const Point<Real> p = smp.point(d.n);
        const Real dev = detail::point_distance(apply(d, got, p), apply(d, expect, p)) / detail::point_scale(apply(d, expect, p));
        if (dev > worst) worst = dev;
    }
    return detail::make_check("composition_consistency", detail::to_double(worst), tol,
                              std::to_string(points) + " random word pairs");
}

template <class Real>
GeometryCheck check_construction_residual(const EPData<Real>& d) {
    const Real bound = pow2_neg<Real>(mantissa_bits<Real>() / 2);
    return detail::make_check("construction_residual", detail::to_double(d.residual), detail::to_double(bound),
                              "|M a - alpha a| and |M b_j - sum R_lj b_l| / |b_j|");
}

struct GeometryOptions {
    double tol_relations = 1e-8;
    double tol_identities = 1e-10;
    int samples = 100;
    int points = 10;
    double zero_threshold = 1e-14;
    std::uint64_t seed = 20250813;
};

template <class Real>
std::vector<GeometryCheck> run_geometry_checks(const EPData<Real>& d, const GeometryOptions& o = {}) {
    return {
        check_construction_residual(d),
        check_conjugation_relations(d, o.tol_relations, o.points, o.seed),
        check_determinant_identity(d, o.tol_identities),
        check_exp_log(d, o.tol_identities),
        check_omega_invariance(d, o.samples, o.tol_identities, o.seed + 1),
        check_omega_semipositive(d, o.samples, o.zero_threshold, o.seed + 2),
        check_u_independence(d),
        check_composition(d, o.tol_identities, o.points, o.seed + 3),
    };
}

}  // namespace epc

#pragma once

// Admissibility of integer matrices and their spectra.

#include <optional>
#include <string>
#include <vector>

#include "epcurves/exactmath.hpp"
#include "epcurves/lattice.hpp"
#include "epcurves/numeric/roots.hpp"

namespace epc {

enum class Reason {
    Admissible,
    NotSquare,
    EvenDimension,
    DimensionTooSmall,
    NotUnimodular,
    RealRootCount,
    AlphaIsOne,
    AlphaNotPositive,
    AlphaNotSimple,
};

inline const char* reason_code(Reason r) {
    switch (r) {
        case Reason::Admissible: return "admissible";
        case Reason::NotSquare: return "not_square";
        case Reason::EvenDimension: return "even_dimension";
        case Reason::DimensionTooSmall: return "dimension_too_small";
        case Reason::NotUnimodular: return "det_not_one";
        case Reason::RealRootCount: return "real_root_count_not_one";
        case Reason::AlphaIsOne: return "alpha_equals_one";
        case Reason::AlphaNotPositive: return "alpha_not_positive";
        case Reason::AlphaNotSimple: return "alpha_not_simple";
    }
    return "unknown";
}

/// Shape errors: the matrix cannot even be examined.
class AdmissibilityError : public InputError {
public:
    AdmissibilityError(Reason r, const std::string& what) : InputError(what), reason(r) {}
    Reason reason;
};

/// Throws AdmissibilityError unless m is square of odd dimension >= 3.
inline void check_shape(const IntMatrix& m) {
    if (!m.is_square())
        throw AdmissibilityError(Reason::NotSquare, "matrix is not square (" + std::to_string(m.rows()) + "x" +
                                                        std::to_string(m.cols()) + ")");
    if (m.rows() % 2 == 0)
        throw AdmissibilityError(Reason::EvenDimension, "even dimension " + std::to_string(m.rows()));
    if (m.rows() < 3) throw AdmissibilityError(Reason::DimensionTooSmall, "dimension must be at least 3");
}

struct AdmissibilityReport {
    std::size_t dim = 0;
    std::size_t n = 0;
    Integer det;
    bool is_unimodular = false;
    IntPoly charpoly;
    int real_root_count = 0;
    /// Present iff real_root_count == 1; interval width below 2^-32 then.
    std::optional<RealAlgebraic> alpha;
    int alpha_multiplicity = 0;
    bool alpha_simple = false;
    bool alpha_positive = false;
    bool alpha_not_one = false;
    Reason reason = Reason::Admissible;
    std::string note;

    bool admissible() const { return reason == Reason::Admissible; }
};

inline constexpr unsigned kAlphaIntervalBits = 33;

inline AdmissibilityReport verify_admissible(const IntMatrix& m) {
    check_shape(m);
    AdmissibilityReport r;
    r.dim = m.rows();
    r.n = (r.dim - 1) / 2;
    r.det = determinant(m);
    r.is_unimodular = r.det == 1;
    r.charpoly = charpoly(m);
    const IntPoly sqf = squarefree_part(r.charpoly);
    r.real_root_count = sturm_count(sqf);
    if (r.real_root_count == 1) {
        const auto roots = isolate_real_roots(sqf);
        RealAlgebraic a{sqf, roots.front(), std::nullopt};
        a.refine(kAlphaIntervalBits);
        // one copy of every root is removed per division by the squarefree part
        IntPoly rest = r.charpoly;
        while (rest.degree() > 0 && sturm_count(squarefree_part(rest), a.iv) == 1) {
            ++r.alpha_multiplicity;
            rest = exact_quotient_primitive(rest, squarefree_part(rest));
        }
        r.alpha_simple = r.alpha_multiplicity == 1;
        r.alpha_not_one = r.charpoly.eval(Integer(1)) != 0;
        r.alpha_positive = sturm_count(sqf, Interval{Rational(0), cauchy_bound(sqf)}) == 1;
        r.alpha = std::move(a);
    }
    if (!r.is_unimodular)
        r.reason = Reason::NotUnimodular;
    else if (r.real_root_count != 1)
        r.reason = Reason::RealRootCount;
    else if (!r.alpha_not_one)
        r.reason = Reason::AlphaIsOne;
    else if (!r.alpha_positive)
        r.reason = Reason::AlphaNotPositive;
    else if (!r.alpha_simple)
        r.reason = Reason::AlphaNotSimple;
    r.note =
        "The characteristic polynomial has integer coefficients, so its non-real roots come in conjugate pairs; "
        "with exactly one real root every other eigenvalue has a representative with positive imaginary part.";
    return r;
}

template <class Real>
struct SpectralEntry {
    Complex<Real> value;
    /// Algebraic multiplicity in the characteristic polynomial.
    int multiplicity = 1;
    bool is_alpha = false;
    CVector<Real> eigenvector;
    /// |(M - value I) v| / |v|.
    Real residual = 0;
};

template <class Real>
struct NumericSpectrum {
    /// alpha first, then one representative with Im > 0 per conjugate pair,
    /// ordered by (factor multiplicity, real part, imaginary part).
    std::vector<SpectralEntry<Real>> entries;
    Real max_residual = 0;

    const SpectralEntry<Real>& alpha() const { return entries.front(); }
};

/// Eigenvector for a numerically computed eigenvalue: the null space of
/// M - lambda I at the numerically determined nullity.
template <class Real>
std::pair<CVector<Real>, Real> numeric_eigenvector(const CMatrix<Real>& m, const Complex<Real>& lambda) {
    CMatrix<Real> a = m;
    for (std::size_t i = 0; i < a.rows(); ++i) a(i, i) -= lambda;
    const Real tol = pow2_neg<Real>(mantissa_bits<Real>() / 2);
    const std::size_t r = numeric_rank(a, tol);
    const std::size_t nullity = std::max<std::size_t>(1, a.cols() - r);
    auto basis = null_space(a, nullity);
    if (basis.empty()) throw ConvergenceError("numeric_eigenvector: empty null space");
    CVector<Real> v = basis.front();
    return {v, norm<Real>(a * v) / norm(v)};
}

/// Approximate spectrum; the real root alpha comes from the exact isolating
/// interval, the non-real roots from the squarefree factors of the
/// characteristic polynomial (each a simple root of its factor).
template <class Real>
NumericSpectrum<Real> numeric_spectrum(const IntMatrix& m, const AdmissibilityReport& rep) {
    if (!rep.admissible()) throw InputError(std::string("numeric_spectrum: matrix not admissible (") +
                                            reason_code(rep.reason) + ")");
    const CMatrix<Real> cm = to_complex<Real>(m);
    NumericSpectrum<Real> out;
    SpectralEntry<Real> alpha;
    alpha.value = Complex<Real>(to_real<Real>(rep.alpha->approximate(mantissa_bits<Real>() + 8)));
    alpha.is_alpha = true;
    out.entries.push_back(alpha);
    for (const auto& f : squarefree_factorization(rep.charpoly)) {
        const auto roots = split_roots<Real>(f.factor);
        if (!roots.real.empty() && f.multiplicity != 1)
            throw ConsistencyError("numeric_spectrum: real root in a repeated factor of an admissible matrix");
        for (const auto& z : roots.upper) {
            SpectralEntry<Real> e;
            e.value = z;
            e.multiplicity = f.multiplicity;
            out.entries.push_back(e);
        }
    }
    for (auto& e : out.entries) {
        std::tie(e.eigenvector, e.residual) = numeric_eigenvector(cm, e.value);
        if (e.residual > out.max_residual) out.max_residual = e.residual;
    }
    if (out.max_residual > pow2_neg<Real>(mantissa_bits<Real>() / 2))
        throw ConvergenceError("numeric_spectrum: eigenvector residual above 2^-(precision/2); retry at higher precision");
    return out;
}

}  // namespace epc

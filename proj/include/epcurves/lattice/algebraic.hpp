#pragma once

#include <optional>
#include <string>

#include "epcurves/exactmath.hpp"
#include "epcurves/lattice/lll.hpp"

namespace epc {

/// A real algebraic number: the unique root of a squarefree integer
/// polynomial inside a half-open rational interval.
struct RealAlgebraic {
    IntPoly defining;
    Interval iv;
    /// Filled in by minpoly_of_root. Recomputation yields the same polynomial.
    std::optional<IntPoly> minpoly;

    bool valid() const {
        if (defining.degree() < 1 || !is_squarefree(defining)) return false;
        if (sturm_count(defining, iv) != 1) return false;
        if (minpoly) {
            if (!divides(*minpoly, defining)) return false;
            if (sturm_count(gcd(*minpoly, defining), iv) != 1) return false;
        }
        return true;
    }

    /// Rational within 2^-bits of the root.
    Rational approximate(unsigned bits) const { return refine_root_bits(defining, iv, bits + 1).midpoint(); }

    void refine(unsigned bits) { iv = refine_root_bits(defining, iv, bits); }
};

struct MinpolySearchOptions {
    unsigned start_bits = 64;
    unsigned max_bits = 8192;
    Rational delta{99, 100};
};

struct MinpolySearchResult {
    IntPoly minpoly;
    unsigned bits_used = 0;
    /// Number of (precision, degree) lattices reduced.
    int lattices_tried = 0;
    /// Precision levels at which the search ran; > 1 means doubling occurred.
    int precision_rounds = 0;
};

class PrecisionExhaustedError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline unsigned log2_ceil(const Rational& r) {
    unsigned k = 0;
    Rational p = 1;
    while (p < r) {
        p *= 2;
        ++k;
    }
    return k;
}

inline bool verify_minpoly_candidate(const IntPoly& candidate, const RealAlgebraic& alpha) {
    if (candidate.degree() < 1) return false;
    if (!divides(candidate, alpha.defining)) return false;
    return sturm_count(gcd(candidate, alpha.defining), alpha.iv) == 1;
}

}  // namespace detail

/// Minimal polynomial of alpha by integer-relation search on
/// (1, a, ..., a^d) for d = 1, 2, ..., deg(defining), each candidate
/// verified exactly: it must divide `defining` and keep alpha as a root
/// (Sturm count 1 on alpha's interval). Every degree below the returned one
/// was tried at the successful precision and failed. Precision doubles from
/// start_bits until max_bits.
inline MinpolySearchResult minpoly_search(RealAlgebraic& alpha, const MinpolySearchOptions& opt = {}) {
    if (!alpha.valid()) throw std::invalid_argument("minpoly_search: invalid algebraic number");
    const int deg = alpha.defining.degree();
    // |alpha| < 2^bound_bits
    const unsigned bound_bits = detail::log2_ceil(cauchy_bound(alpha.defining));
    MinpolySearchResult res;
    for (unsigned bits = std::max(1u, opt.start_bits); bits <= opt.max_bits; bits *= 2) {
        ++res.precision_rounds;
        const unsigned guard = static_cast<unsigned>(deg) * (bound_bits + 1) + 16;
        const Rational x = alpha.approximate(bits + guard);
        Rational scale = 1;
        for (unsigned i = 0; i < bits; ++i) scale *= 2;
        std::vector<Integer> scaled_powers;
        Rational pw = 1;
        for (int i = 0; i <= deg; ++i) {
            scaled_powers.push_back(round_of(scale * pw));
            pw *= x;
        }
        for (int d = 1; d <= deg; ++d) {
            LatticeBasis lb{{}, opt.delta};
            for (int i = 0; i <= d; ++i) {
                IntVector v(d + 2);
                v[i] = 1;
                v[d + 1] = scaled_powers[i];
                lb.vectors.push_back(std::move(v));
            }
            ++res.lattices_tried;
            const auto red = lll_reduce(lb);
            for (const auto& v : red.basis.vectors) {
                IntPoly cand(std::vector<Integer>(v.begin(), v.begin() + d + 1));
                if (detail::verify_minpoly_candidate(cand, alpha)) {
                    res.minpoly = gcd(cand, alpha.defining);
                    res.bits_used = bits;
                    alpha.minpoly = res.minpoly;
                    return res;
                }
            }
        }
        if (bits > opt.max_bits / 2) break;
    }
    throw PrecisionExhaustedError("minpoly_of_root: no verified relation found up to " +
                                  std::to_string(opt.max_bits) + " bits for root of " +
                                  alpha.defining.to_string() + "; raise the precision cap");
}

inline IntPoly minpoly_of_root(RealAlgebraic& alpha, unsigned start_bits = 64) {
    if (alpha.minpoly) return *alpha.minpoly;
    MinpolySearchOptions opt;
    opt.start_bits = start_bits;
    return minpoly_search(alpha, opt).minpoly;
}

}  // namespace epc

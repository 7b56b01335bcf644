#pragma once

#include <vector>

#include "epcurves/exactmath/poly.hpp"

namespace epc {

/// Half-open rational interval (lo, hi]. Root counts never include lo.
struct Interval {
    Rational lo;
    Rational hi;

    Rational width() const { return hi - lo; }
    Rational midpoint() const { return (lo + hi) / 2; }
    bool contains(const Rational& x) const { return lo < x && x <= hi; }
    friend bool operator==(const Interval&, const Interval&) = default;
};

/// Power of two strictly exceeding the modulus of every complex root
/// (Cauchy: 1 + max |c_i / c_d|).
inline Rational cauchy_bound(const IntPoly& p) {
    if (p.degree() < 1) return Rational(1);
    Rational m = 0;
    const Integer lead_abs = abs(p.lead());
    for (int i = 0; i < p.degree(); ++i) {
        Rational q(abs(p.coeffs()[i]), lead_abs);
        if (q > m) m = q;
    }
    Rational bound = 1 + m;
    Rational pow2 = 1;
    while (pow2 <= bound) pow2 *= 2;
    return pow2;
}

/// Sturm chain p0 = p, p1 = p', p_{i+1} = -rem(p_{i-1}, p_i), kept primitive
/// by positive rescaling so that signs are those of the classical chain.
class SturmSequence {
public:
    explicit SturmSequence(const IntPoly& p) {
        if (p.is_zero()) throw std::invalid_argument("SturmSequence: zero polynomial");
        if (!is_squarefree(p)) throw std::invalid_argument("SturmSequence: polynomial is not squarefree");
        chain_.push_back(p);
        if (p.degree() < 1) return;
        chain_.push_back(p.derivative());
        while (chain_.back().degree() > 0) {
            const IntPoly& a = chain_[chain_.size() - 2];
            const IntPoly& b = chain_.back();
            IntPoly r = pseudo_divmod(a, b).second;
            if (r.is_zero()) break;
            // prem = lc(b)^(delta+1) * rem; flip when that factor is negative
            const int power = a.degree() - b.degree() + 1;
            bool negative_factor = b.lead().sign() < 0 && power % 2 == 1;
            Integer c = r.content();
            if (!negative_factor) c = -c;
            std::vector<Integer> rc = r.coeffs();
            for (auto& v : rc) v /= c;
            chain_.emplace_back(std::move(rc));
        }
    }

    const std::vector<IntPoly>& chain() const { return chain_; }

    int variations_at(const Rational& x) const {
        int count = 0, last = 0;
        for (const auto& q : chain_) {
            const int s = q.sign_at(x);
            if (s == 0) continue;
            if (last != 0 && s != last) ++count;
            last = s;
        }
        return count;
    }

    /// Number of distinct real roots in (lo, hi].
    int count(const Interval& iv) const {
        if (iv.hi < iv.lo) throw std::invalid_argument("SturmSequence::count: lo > hi");
        return variations_at(iv.lo) - variations_at(iv.hi);
    }

    const IntPoly& poly() const { return chain_.front(); }

private:
    std::vector<IntPoly> chain_;
};

inline int sturm_count(const IntPoly& p, const Interval& iv) { return SturmSequence(p).count(iv); }

/// All real roots: counted on (-B, B] with B the Cauchy bound.
inline int sturm_count(const IntPoly& p) {
    const Rational b = cauchy_bound(p);
    return SturmSequence(p).count({-b, b});
}

/// Pairwise disjoint half-open intervals each holding exactly one real root,
/// in increasing order. Endpoints are dyadic rationals.
inline std::vector<Interval> isolate_real_roots(const IntPoly& p) {
    SturmSequence seq(p);
    std::vector<Interval> out;
    if (p.degree() < 1) return out;
    const Rational b = cauchy_bound(p);
    std::vector<Interval> stack{{-b, b}};
    while (!stack.empty()) {
        Interval iv = stack.back();
        stack.pop_back();
        const int c = seq.count(iv);
        if (c == 0) continue;
        if (c == 1) {
            out.push_back(iv);
            continue;
        }
        const Rational mid = iv.midpoint();
        stack.push_back({mid, iv.hi});
        stack.push_back({iv.lo, mid});
    }
    std::sort(out.begin(), out.end(), [](const Interval& x, const Interval& y) { return x.lo < y.lo; });
    return out;
}

/// Shrinks an isolating interval of a squarefree p until its width is at
/// most `width`, keeping exactly one root inside (lo, hi].
inline Interval refine_root(const IntPoly& p, Interval iv, const Rational& width) {
    if (width.sign() <= 0) throw std::invalid_argument("refine_root: width must be positive");
    int shi = p.sign_at(iv.hi);
    while (iv.width() > width) {
        const Rational mid = iv.midpoint();
        const int sm = p.sign_at(mid);
        if (sm == 0) {
            iv.hi = mid;
            shi = 0;
        } else if (shi == 0 || sm != shi) {
            iv.lo = mid;
        } else {
            iv.hi = mid;
            shi = sm;
        }
    }
    return iv;
}

/// Shrinks iv by bisection using only signs of p; requires exactly one
/// simple root of p in (lo, hi].
inline Interval refine_root_bits(const IntPoly& p, const Interval& iv, unsigned bits) {
    Rational w = 1;
    for (unsigned i = 0; i < bits; ++i) w /= 2;
    return refine_root(p, iv, w);
}

}  // namespace epc

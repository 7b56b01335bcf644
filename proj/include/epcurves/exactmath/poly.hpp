#pragma once

#include <algorithm>
#include <cctype>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "epcurves/exactmath/types.hpp"

namespace epc {

/// Dense univariate polynomial over the integers, coefficients in ascending
/// degree order. The zero polynomial has no coefficients.
class IntPoly {
public:
    IntPoly() = default;
    explicit IntPoly(std::vector<Integer> coeffs) : c_(std::move(coeffs)) { trim(); }
    IntPoly(std::initializer_list<long> coeffs) {
        for (long v : coeffs) c_.emplace_back(v);
        trim();
    }

    static IntPoly monomial(const Integer& coeff, std::size_t degree) {
        std::vector<Integer> c(degree + 1);
        c[degree] = coeff;
        return IntPoly(std::move(c));
    }
    static IntPoly constant(const Integer& v) { return IntPoly(std::vector<Integer>{v}); }
    /// x - r
    static IntPoly linear_root(const Integer& r) { return IntPoly(std::vector<Integer>{-r, Integer(1)}); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const Integer& lead() const { return c_.back(); }
    const std::vector<Integer>& coeffs() const { return c_; }
    Integer coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Integer(0); }

    friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.c_ == b.c_; }

    friend IntPoly operator+(const IntPoly& a, const IntPoly& b) {
        std::vector<Integer> r(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(i) + b.coeff(i);
        return IntPoly(std::move(r));
    }
    friend IntPoly operator-(const IntPoly& a, const IntPoly& b) {
        std::vector<Integer> r(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(i) - b.coeff(i);
        return IntPoly(std::move(r));
    }
    friend IntPoly operator-(const IntPoly& a) {
        std::vector<Integer> r = a.c_;
        for (auto& v : r) v = -v;
        return IntPoly(std::move(r));
    }
    friend IntPoly operator*(const IntPoly& a, const IntPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Integer> r(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        return IntPoly(std::move(r));
    }
    friend IntPoly operator*(const Integer& s, const IntPoly& a) {
        std::vector<Integer> r = a.c_;
        for (auto& v : r) v *= s;
        return IntPoly(std::move(r));
    }

    IntPoly derivative() const {
        if (c_.size() <= 1) return {};
        std::vector<Integer> r(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * Integer(static_cast<long>(i));
        return IntPoly(std::move(r));
    }

    Integer eval(const Integer& x) const {
        Integer acc = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }
    Rational eval(const Rational& x) const {
        Rational acc = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + Rational(*it);
        return acc;
    }
    /// Sign of p(x) without forming rationals: evaluates the homogenised form
    /// sum c_i a^i b^(deg-i) for x = a/b, b > 0.
    int sign_at(const Rational& x) const {
        if (is_zero()) return 0;
        const Integer a = numerator_of(x), b = denominator_of(x);
        Integer acc = 0, bpow = 1;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
            acc = acc * a + *it * bpow;
            bpow *= b;
        }
        // acc = b^deg * p(x)
        return acc.sign();
    }

    Integer content() const {
        Integer g = 0;
        for (const auto& v : c_) g = gcd(g, v);
        return g;
    }
    /// Primitive part with positive leading coefficient.
    IntPoly primitive() const {
        if (is_zero()) return {};
        Integer g = content();
        if (lead().sign() < 0) g = -g;
        std::vector<Integer> r = c_;
        for (auto& v : r) v /= g;
        return IntPoly(std::move(r));
    }

    std::string to_string(std::string_view var = "x") const;

private:
    static Integer gcd(const Integer& a, const Integer& b) { return boost::multiprecision::gcd(a, b); }
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    std::vector<Integer> c_;
};

/// Pseudo-division: lead(b)^(deg a - deg b + 1) * a = q*b + r, deg r < deg b.
inline std::pair<IntPoly, IntPoly> pseudo_divmod(const IntPoly& a, const IntPoly& b) {
    if (b.is_zero()) throw std::invalid_argument("pseudo_divmod: division by zero polynomial");
    if (a.degree() < b.degree()) return {IntPoly{}, a};
    const int db = b.degree();
    std::vector<Integer> r = a.coeffs();
    std::vector<Integer> q(a.degree() - db + 1);
    const Integer& lb = b.lead();
    for (int k = a.degree() - db; k >= 0; --k) {
        const Integer t = r[k + db];
        for (auto& v : q) v *= lb;
        q[k] += t;
        for (auto& v : r) v *= lb;
        for (int i = 0; i <= db; ++i) r[k + i] -= t * b.coeffs()[i];
    }
    r.resize(db);
    return {IntPoly(std::move(q)), IntPoly(std::move(r))};
}

/// True iff b divides a in Q[x].
inline bool divides(const IntPoly& b, const IntPoly& a) {
    if (b.is_zero()) return a.is_zero();
    return pseudo_divmod(a, b).second.is_zero();
}

/// Exact quotient a / b in Q[x], returned as its primitive integer multiple.
inline IntPoly exact_quotient_primitive(const IntPoly& a, const IntPoly& b) {
    auto [q, r] = pseudo_divmod(a, b);
    if (!r.is_zero()) throw std::invalid_argument("exact_quotient_primitive: b does not divide a");
    return q.primitive();
}

/// Exact quotient a / b when it has integer coefficients, nullopt otherwise.
inline std::optional<IntPoly> exact_quotient(const IntPoly& a, const IntPoly& b) {
    if (b.is_zero()) throw std::invalid_argument("exact_quotient: division by zero polynomial");
    if (a.degree() < b.degree()) return a.is_zero() ? std::optional<IntPoly>(IntPoly{}) : std::nullopt;
    std::vector<Integer> r = a.coeffs();
    std::vector<Integer> q(a.degree() - b.degree() + 1);
    const int db = b.degree();
    for (int k = a.degree() - db; k >= 0; --k) {
        if (r[k + db] % b.lead() != 0) return std::nullopt;
        q[k] = r[k + db] / b.lead();
        for (int i = 0; i <= db; ++i) r[k + i] -= q[k] * b.coeffs()[i];
    }
    for (const auto& v : r)
        if (!v.is_zero()) return std::nullopt;
    return IntPoly(std::move(q));
}

/// gcd over Z[x] by the subresultant remainder sequence; primitive with
/// positive leading coefficient (zero iff both inputs are zero).
inline IntPoly gcd(IntPoly a, IntPoly b) {
    if (a.is_zero()) return b.primitive();
    if (b.is_zero()) return a.primitive();
    if (a.degree() < b.degree()) std::swap(a, b);
    a = a.primitive();
    b = b.primitive();
    Integer g = 1, h = 1;
    while (true) {
        const int delta = a.degree() - b.degree();
        IntPoly r = pseudo_divmod(a, b).second;
        if (r.is_zero()) break;
        if (r.degree() == 0) {
            b = IntPoly{1};
            break;
        }
        Integer hpow = 1;
        for (int i = 0; i < delta; ++i) hpow *= h;
        const Integer divisor = g * hpow;
        std::vector<Integer> rc = r.coeffs();
        for (auto& v : rc) v /= divisor;
        a = std::move(b);
        b = IntPoly(std::move(rc));
        g = a.lead();
        // h <- g^delta / h^(delta-1)
        Integer gpow = 1;
        for (int i = 0; i < delta; ++i) gpow *= g;
        Integer hden = 1;
        for (int i = 0; i + 1 < delta; ++i) hden *= h;
        h = gpow / hden;
    }
    return b.primitive();
}

/// p / gcd(p, p'), primitive. Same complex roots as p, each simple.
inline IntPoly squarefree_part(const IntPoly& p) {
    if (p.is_zero()) throw std::invalid_argument("squarefree_part: zero polynomial");
    if (p.degree() <= 0) return IntPoly{1};
    IntPoly g = gcd(p, p.derivative());
    return exact_quotient_primitive(p, g);
}

inline bool is_squarefree(const IntPoly& p) {
    if (p.degree() <= 0) return !p.is_zero();
    return gcd(p, p.derivative()).degree() == 0;
}

struct SquarefreeFactor {
    IntPoly factor;
    int multiplicity;
};

/// p = c * prod f_i^i with f_i squarefree, pairwise coprime and primitive.
/// S_j = squarefree part of p / (S_1 ... S_{j-1}) collects the roots of
/// multiplicity >= j, so f_j = S_j / S_{j+1}. Factors of degree zero are omitted.
inline std::vector<SquarefreeFactor> squarefree_factorization(const IntPoly& p) {
    if (p.is_zero()) throw std::invalid_argument("squarefree_factorization: zero polynomial");
    std::vector<IntPoly> layers;
    IntPoly rest = p.primitive();
    while (rest.degree() > 0) {
        IntPoly s = squarefree_part(rest);
        layers.push_back(s);
        rest = exact_quotient_primitive(rest, s);
    }
    std::vector<SquarefreeFactor> out;
    for (std::size_t j = 0; j < layers.size(); ++j) {
        IntPoly f = j + 1 < layers.size() ? exact_quotient_primitive(layers[j], layers[j + 1]) : layers[j];
        if (f.degree() > 0) out.push_back({f, static_cast<int>(j + 1)});
    }
    return out;
}

/// Parses "x^5 - x - 1", "3*x^2+2x-7", "-x^3 + 3 x - 1". Integer coefficients only.
inline IntPoly parse_poly(std::string_view text, char var = 'x') {
    std::vector<Integer> coeffs;
    auto add = [&](const Integer& c, std::size_t e) {
        if (coeffs.size() <= e) coeffs.resize(e + 1);
        coeffs[e] += c;
    };
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    auto fail = [&](const std::string& why) -> IntPoly {
        throw InputError("cannot parse polynomial '" + std::string(text) + "': " + why);
    };
    skip_ws();
    if (i == text.size()) fail("empty");
    bool first = true;
    while (true) {
        skip_ws();
        if (i == text.size()) break;
        int sgn = 1;
        if (text[i] == '+' || text[i] == '-') {
            sgn = text[i] == '-' ? -1 : 1;
            ++i;
            skip_ws();
        } else if (!first) {
            fail("expected '+' or '-' at position " + std::to_string(i));
        }
        first = false;
        std::string digits;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) digits += text[i++];
        skip_ws();
        Integer coef = digits.empty() ? Integer(1) : Integer(digits);
        bool has_var = false;
        if (i < text.size() && text[i] == '*') {
            if (digits.empty()) fail("dangling '*'");
            ++i;
            skip_ws();
            if (i == text.size() || text[i] != var) fail("expected variable after '*'");
        }
        std::size_t exponent = 0;
        if (i < text.size() && text[i] == var) {
            has_var = true;
            ++i;
            skip_ws();
            exponent = 1;
            if (i < text.size() && text[i] == '^') {
                ++i;
                skip_ws();
                std::string e;
                while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) e += text[i++];
                if (e.empty()) fail("missing exponent");
                exponent = std::stoul(e);
            }
        }
        if (digits.empty() && !has_var) fail("empty term at position " + std::to_string(i));
        add(sgn * coef, exponent);
    }
    return IntPoly(std::move(coeffs));
}

inline std::string IntPoly::to_string(std::string_view var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int e = degree(); e >= 0; --e) {
        const Integer& v = c_[e];
        if (v.is_zero()) continue;
        Integer mag = abs(v);
        if (first) {
            if (v.sign() < 0) os << "-";
        } else {
            os << (v.sign() < 0 ? " - " : " + ");
        }
        first = false;
        if (e == 0) {
            os << mag;
            continue;
        }
        if (mag != 1) os << mag << "*";
        os << var;
        if (e > 1) os << "^" << e;
    }
    return os.str();
}

}  // namespace epc

#pragma once

#include <cmath>
#include <ostream>

namespace epc {

/// Minimal complex number over an arbitrary real type (std::complex is only
/// specified for the built-in floating types).
template <class Real>
struct Complex {
    Real re{0};
    Real im{0};

    Complex() = default;
    Complex(int r) : re(r), im(0) {}
    Complex(const Real& r) : re(r), im(0) {}
    Complex(const Real& r, const Real& i) : re(r), im(i) {}

    Complex conj() const { return {re, -im}; }
    Real norm2() const { return re * re + im * im; }

    Complex& operator+=(const Complex& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    Complex& operator-=(const Complex& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    Complex operator/(const Real& s) const { return {re / s, im / s}; }

    Complex& operator*=(const Complex& o) { return *this = *this * o; }
    Complex& operator/=(const Complex& o) { return *this = *this / o; }

    friend Complex operator+(Complex a, const Complex& b) { return a += b; }
    friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
    friend Complex operator-(const Complex& a) { return {-a.re, -a.im}; }
    friend Complex operator*(const Complex& a, const Complex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend Complex operator*(const Real& s, const Complex& a) { return {s * a.re, s * a.im}; }
    friend Complex operator/(const Complex& a, const Complex& b) {
        const Real d = b.norm2();
        return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
    }
    friend bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }

    friend std::ostream& operator<<(std::ostream& os, const Complex& z) {
        return os << "(" << z.re << (z.im < 0 ? " - " : " + ") << abs(z.im) << "i)";
    }
};

template <class Real>
Real abs(const Complex<Real>& z) {
    using std::sqrt;
    return sqrt(z.norm2());
}

template <class Real>
Real arg(const Complex<Real>& z) {
    using std::atan2;
    return atan2(z.im, z.re);
}

template <class Real>
Complex<Real> exp(const Complex<Real>& z) {
    using std::cos;
    using std::exp;
    using std::sin;
    const Real m = exp(z.re);
    return {m * cos(z.im), m * sin(z.im)};
}

/// Principal logarithm, imaginary part in (-pi, pi].
template <class Real>
Complex<Real> log(const Complex<Real>& z) {
    using std::log;
    return {log(abs(z)), arg(z)};
}

/// Principal square root (non-negative real part).
template <class Real>
Complex<Real> sqrt(const Complex<Real>& z) {
    using std::sqrt;
    const Real r = abs(z);
    if (r == 0) return {};
    const Real t = sqrt((r + abs(z.re)) / 2);
    if (z.re >= 0) return {t, z.im / (2 * t)};
    return {abs(z.im) / (2 * t), z.im >= 0 ? t : Real(-t)};
}

template <class Real>
Complex<Real> pow(const Complex<Real>& z, int e) {
    Complex<Real> base = e < 0 ? Complex<Real>(1) / z : z, out(1);
    unsigned n = static_cast<unsigned>(e < 0 ? -e : e);
    while (n) {
        if (n & 1u) out = out * base;
        base = base * base;
        n >>= 1u;
    }
    return out;
}

}  // namespace epc

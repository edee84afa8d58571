#pragma once

// Order-2 truncated Taylor scalar: carries f, df/du, d2f/du2 through
// arithmetic. Used to differentiate characteristic-polynomial coefficients
// along a counting-tilt axis without finite-difference roundoff.

namespace fqt {

struct Jet2 {
    double v{0.0};  // value
    double d{0.0};  // first derivative
    double s{0.0};  // second derivative

    constexpr Jet2() = default;
    constexpr Jet2(double value) : v(value) {}
    constexpr Jet2(double value, double d1, double d2) : v(value), d(d1), s(d2) {}

    // seed for f(u) = c * exp(k*u) evaluated at u = 0
    static constexpr Jet2 scaled_exp(double c, double k) { return {c, c * k, c * k * k}; }

    constexpr Jet2 operator-() const { return {-v, -d, -s}; }

    constexpr Jet2& operator+=(const Jet2& o) {
        v += o.v; d += o.d; s += o.s;
        return *this;
    }
    constexpr Jet2& operator-=(const Jet2& o) {
        v -= o.v; d -= o.d; s -= o.s;
        return *this;
    }

    friend constexpr Jet2 operator+(Jet2 a, const Jet2& b) { return a += b; }
    friend constexpr Jet2 operator-(Jet2 a, const Jet2& b) { return a -= b; }
    friend constexpr Jet2 operator*(const Jet2& a, const Jet2& b) {
        return {a.v * b.v, a.d * b.v + a.v * b.d, a.s * b.v + 2.0 * a.d * b.d + a.v * b.s};
    }
    friend constexpr Jet2 operator*(const Jet2& a, double c) { return {a.v * c, a.d * c, a.s * c}; }
    friend constexpr Jet2 operator*(double c, const Jet2& a) { return a * c; }
};

}  // namespace fqt

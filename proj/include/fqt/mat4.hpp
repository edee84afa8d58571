#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "fqt/jet.hpp"

// Fixed-size 4x4 / 4-vector linear algebra over double, complex<double> or
// Jet2. Everything the population dynamics needs: products, traces,
// characteristic polynomial (Leverrier-Faddeev), pivoted solves.

namespace fqt {

template <class T>
struct Mat4 {
    std::array<T, 16> a{};

    T& operator()(int r, int c) { return a[static_cast<size_t>(4 * r + c)]; }
    const T& operator()(int r, int c) const { return a[static_cast<size_t>(4 * r + c)]; }

    static Mat4 identity() {
        Mat4 m;
        for (int i = 0; i < 4; ++i) m(i, i) = T(1.0);
        return m;
    }

    Mat4& operator+=(const Mat4& o) {
        for (int i = 0; i < 16; ++i) a[i] += o.a[i];
        return *this;
    }
    friend Mat4 operator+(Mat4 x, const Mat4& y) { return x += y; }

    friend Mat4 operator*(const Mat4& x, double c) {
        Mat4 r;
        for (int i = 0; i < 16; ++i) r.a[i] = x.a[i] * c;
        return r;
    }

    T trace() const { return a[0] + a[5] + a[10] + a[15]; }
};

using Mat4d = Mat4<double>;
using Mat4c = Mat4<std::complex<double>>;
using Mat4j = Mat4<Jet2>;
using Vec4 = std::array<double, 4>;

namespace detail {
// generic row-by-column product; the double specialization may be routed
// through the SIMD kernels by callers that care (see kernels.hpp)
template <class T>
inline Mat4<T> mul_generic(const Mat4<T>& x, const Mat4<T>& y) {
    Mat4<T> r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            T s = x(i, 0) * y(0, j);
            s += x(i, 1) * y(1, j);
            s += x(i, 2) * y(2, j);
            s += x(i, 3) * y(3, j);
            r(i, j) = s;
        }
    return r;
}
}  // namespace detail

template <class T>
inline Mat4<T> operator*(const Mat4<T>& x, const Mat4<T>& y) {
    return detail::mul_generic(x, y);
}

// double products go through the runtime-dispatched kernel (kernels.hpp)
template <>
Mat4<double> operator*(const Mat4<double>& x, const Mat4<double>& y);

// Coefficients of det(L - zI) = A[0] + A[1] z + A[2] z^2 + A[3] z^3 + A[4] z^4
// (monic for even dimension). Leverrier-Faddeev: trace recursion only, no
// factorization, exact in exact arithmetic.
template <class T>
inline std::array<T, 5> char_poly(const Mat4<T>& L) {
    std::array<T, 5> A;
    A[4] = T(1.0);
    Mat4<T> N = L;
    T c = -N.trace();
    A[3] = c;
    for (int k = 2; k <= 4; ++k) {
        Mat4<T> M = N;
        for (int i = 0; i < 4; ++i) M(i, i) += c;
        N = L * M;
        c = N.trace() * (-1.0 / k);
        A[static_cast<size_t>(4 - k)] = c;
    }
    return A;
}

// Solve a 4x4 dense system by Gaussian elimination with partial pivoting.
template <class T>
inline std::array<T, 4> solve4(Mat4<T> m, std::array<T, 4> b) {
    for (int col = 0; col < 4; ++col) {
        int piv = col;
        double best = std::abs(m(col, col));
        for (int r = col + 1; r < 4; ++r) {
            double v = std::abs(m(r, col));
            if (v > best) { best = v; piv = r; }
        }
        if (!(best > 0.0)) throw std::runtime_error("solve4: singular matrix");
        if (piv != col) {
            for (int c = 0; c < 4; ++c) std::swap(m(piv, c), m(col, c));
            std::swap(b[static_cast<size_t>(piv)], b[static_cast<size_t>(col)]);
        }
        T inv = T(1.0) / m(col, col);
        for (int r = col + 1; r < 4; ++r) {
            T f = m(r, col) * inv;
            m(r, col) = T(0.0);
            for (int c = col + 1; c < 4; ++c) m(r, c) -= f * m(col, c);
            b[static_cast<size_t>(r)] -= f * b[static_cast<size_t>(col)];
        }
    }
    std::array<T, 4> x{};
    for (int r = 3; r >= 0; --r) {
        T s = b[static_cast<size_t>(r)];
        for (int c = r + 1; c < 4; ++c) s -= m(r, c) * x[static_cast<size_t>(c)];
        x[static_cast<size_t>(r)] = s / m(r, r);
    }
    return x;
}

// Least squares for a tall 5x4 system via Householder QR (used for the
// rank-3 stationary-state solve with the normalization row appended).
std::array<double, 4> lstsq_5x4(const std::array<std::array<double, 4>, 5>& A,
                                const std::array<double, 5>& b);

// Inverse via Gauss-Jordan with partial pivoting (Pade solver helper).
Mat4d inverse(const Mat4d& m);

double max_abs(const Mat4d& m);
double one_norm(const Mat4d& m);  // max column sum of |entries|

}  // namespace fqt

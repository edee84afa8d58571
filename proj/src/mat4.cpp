#include "fqt/mat4.hpp"

#include <algorithm>

namespace fqt {

std::array<double, 4> lstsq_5x4(const std::array<std::array<double, 4>, 5>& A0,
                                const std::array<double, 5>& b0) {
    // Householder QR on the 5x4 system, then back substitution on R x = Q^T b.
    std::array<std::array<double, 4>, 5> A = A0;
    std::array<double, 5> b = b0;
    for (int col = 0; col < 4; ++col) {
        double norm = 0.0;
        for (int r = col; r < 5; ++r) norm += A[r][col] * A[r][col];
        norm = std::sqrt(norm);
        if (!(norm > 0.0)) throw std::runtime_error("lstsq_5x4: rank-deficient system");
        double alpha = (A[col][col] > 0.0) ? -norm : norm;
        std::array<double, 5> v{};
        v[col] = A[col][col] - alpha;
        for (int r = col + 1; r < 5; ++r) v[r] = A[r][col];
        double vtv = 0.0;
        for (int r = col; r < 5; ++r) vtv += v[r] * v[r];
        if (vtv > 0.0) {
            for (int c = col; c < 4; ++c) {
                double dot = 0.0;
                for (int r = col; r < 5; ++r) dot += v[r] * A[r][c];
                double f = 2.0 * dot / vtv;
                for (int r = col; r < 5; ++r) A[r][c] -= f * v[r];
            }
            double dotb = 0.0;
            for (int r = col; r < 5; ++r) dotb += v[r] * b[r];
            double fb = 2.0 * dotb / vtv;
            for (int r = col; r < 5; ++r) b[r] -= fb * v[r];
        }
    }
    std::array<double, 4> x{};
    for (int r = 3; r >= 0; --r) {
        double s = b[r];
        for (int c = r + 1; c < 4; ++c) s -= A[r][c] * x[static_cast<size_t>(c)];
        if (A[r][r] == 0.0) throw std::runtime_error("lstsq_5x4: zero pivot");
        x[static_cast<size_t>(r)] = s / A[r][r];
    }
    return x;
}

Mat4d inverse(const Mat4d& m0) {
    Mat4d m = m0;
    Mat4d inv = Mat4d::identity();
    for (int col = 0; col < 4; ++col) {
        int piv = col;
        double best = std::abs(m(col, col));
        for (int r = col + 1; r < 4; ++r)
            if (std::abs(m(r, col)) > best) { best = std::abs(m(r, col)); piv = r; }
        if (!(best > 0.0)) throw std::runtime_error("inverse: singular matrix");
        if (piv != col)
            for (int c = 0; c < 4; ++c) {
                std::swap(m(piv, c), m(col, c));
                std::swap(inv(piv, c), inv(col, c));
            }
        double f = 1.0 / m(col, col);
        for (int c = 0; c < 4; ++c) { m(col, c) *= f; inv(col, c) *= f; }
        for (int r = 0; r < 4; ++r) {
            if (r == col) continue;
            double g = m(r, col);
            if (g == 0.0) continue;
            for (int c = 0; c < 4; ++c) {
                m(r, c) -= g * m(col, c);
                inv(r, c) -= g * inv(col, c);
            }
        }
    }
    return inv;
}

double max_abs(const Mat4d& m) {
    double v = 0.0;
    for (double x : m.a) v = std::max(v, std::abs(x));
    return v;
}

double one_norm(const Mat4d& m) {
    double v = 0.0;
    for (int c = 0; c < 4; ++c) {
        double s = 0.0;
        for (int r = 0; r < 4; ++r) s += std::abs(m(r, c));
        v = std::max(v, s);
    }
    return v;
}

}  // namespace fqt

#pragma once

// Reference Bessel J_n by its power series. Validation oracle for the
// waveform quadrature (sinusoidal frequency modulation has weights J_q^2);
// the quadrature path itself never calls this.

namespace fqt {

inline double bessel_j(int n, double x) {
    if (n < 0) {
        double v = bessel_j(-n, x);
        return (-n) % 2 == 0 ? v : -v;
    }
    const double half = 0.5 * x;
    double term = 1.0;
    for (int k = 1; k <= n; ++k) term *= half / k;
    double sum = term;
    const double h2 = half * half;
    for (int m = 1; m < 60; ++m) {
        term *= -h2 / (m * (m + n));
        sum += term;
        if (term == 0.0) break;
    }
    return sum;
}

}  // namespace fqt

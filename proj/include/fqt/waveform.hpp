#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "fqt/spectrum.hpp"

// Periodic control waveforms for the base-qubit frequency and the quadrature
// that turns an arbitrary waveform into Floquet harmonic weights.

namespace fqt {

struct CrabWaveform {
    double omega0{0.0};
    double mu{1.0};               // overall amplitude, in [0, 1]
    std::vector<double> a;        // cosine coefficients, each in [-1, 1]
    std::vector<double> b;        // sine coefficients, each in [-1, 1]
    double tau{1.0};              // period
    double envelope_fraction{0.05};  // ramp width as a fraction of the period

    int n_modes() const { return static_cast<int>(a.size()); }
    void validate() const;
};

// Instantaneous frequency at time t in [0, tau]: omega0 plus the truncated
// Fourier sum scaled by mu/(2N) and a smoothstep ramp envelope that pins
// omega(0) = omega(tau) = omega0 and equals 1 on the interior plateau.
double crab_frequency(const CrabWaveform& w, double t);

// Deviation omega(t) - omega0 (no domain clamp; periodic extension).
double crab_deviation(const CrabWaveform& w, double t);

struct QuadratureError : std::runtime_error {
    double deficit;
    QuadratureError(const std::string& msg, double d) : std::runtime_error(msg), deficit(d) {}
};

struct WeightsOptions {
    int base_points{256};     // starting grid, doubled until converged
    double tol{1e-10};        // per-weight absolute change between doublings
    long max_points{1 << 21}; // refinement cap
};

struct WeightsResult {
    HarmonicSpectrum spectrum;
    long grid_points{0};
    double mean_deviation{0.0};  // residual mean of the deviation, projected out
};

// Harmonic weights P_q = |eta(q)|^2 for |q| <= q_max, where eta(q) is the
// Fourier coefficient of exp(-i Phi(t)) against exp(i q nu t) and
// Phi(t) = int_0^t deviation(s) ds after removal of the secular mean.
// Grid refinement doubles until every retained weight is stable to tol.
WeightsResult weights_from_deviation(const std::function<double(double)>& deviation,
                                     double tau, int q_max, const WeightsOptions& opts = {});

WeightsResult weights_from_waveform(const CrabWaveform& w, int q_max,
                                    const WeightsOptions& opts = {});

}  // namespace fqt

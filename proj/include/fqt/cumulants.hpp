#pragma once

#include <array>
#include <complex>

#include "fqt/liouvillian.hpp"

// Steady-state populations and heat-current cumulants extracted from the
// tilted generator through its characteristic polynomial
//   P(z) = det(L - zI) = A0 + A1 z + A2 z^2 + A3 z^3 + z^4.
// With lam(u) the dominant root along a real tilt axis u of one bath:
//   mean     J = lam'(0)  = -A0'/A1
//   variance V = lam''(0) = -(A0'' + 2 A1' J + 2 A2 J^2)/A1
// Derivatives of the coefficients are taken either exactly (order-2 jets,
// default) or by Richardson-extrapolated central differences.

namespace fqt {

struct PolyCoeffs {
    std::array<std::complex<double>, 5> a;  // A0..A4, A4 = 1
};

PolyCoeffs char_poly_coeffs(const TiltedGenerator& g);

enum class DerivativeScheme { Jet, FiniteDifference };

struct DerivativeOptions {
    DerivativeScheme scheme{DerivativeScheme::Jet};
    double fd_mean_step{1e-2};      // in units of 1/delta
    double fd_variance_step{1e-2};  // in units of 1/delta
    bool richardson{true};
    bool low_t_builder{false};      // use the Boltzmann-factor generator
};

struct BathCumulants {
    double mean;
    double variance;
};

// Mean heat current and variance for one bath. Sign convention: positive
// mean = the system absorbs heat from that bath.
BathCumulants mean_and_variance(const SystemParams& p, const HarmonicSpectrum& s, Bath bath,
                                const DerivativeOptions& opts = {});

inline double mean_current(const SystemParams& p, const HarmonicSpectrum& s, Bath bath,
                           const DerivativeOptions& opts = {}) {
    return mean_and_variance(p, s, bath, opts).mean;
}
inline double variance(const SystemParams& p, const HarmonicSpectrum& s, Bath bath,
                       const DerivativeOptions& opts = {}) {
    return mean_and_variance(p, s, bath, opts).variance;
}

// Normalized null vector of the untilted generator: solves the rank-3 system
// with the normalization row appended (least squares, no silent clamping).
Vec4 steady_state(const Mat4d& generator);
Vec4 steady_state(const SystemParams& p, const HarmonicSpectrum& s,
                  bool low_t_builder = false);

// Eigenvalue of maximal real part via the characteristic polynomial
// (Durand-Kerner root finding with Newton polish).
std::complex<double> dominant_eigenvalue(const TiltedGenerator& g);
double dominant_eigenvalue(const Mat4d& m);
std::array<std::complex<double>, 4> eigenvalues(const Mat4c& m);

// Matrix exponential of a real 4x4 (Pade-13 with scaling and squaring).
Mat4d expm(const Mat4d& m);

// ln of the summed components of e^{L t} rho0 (the finite-time cumulant
// generating function along a real tilt).
double finite_time_cgf(const Mat4d& generator, const Vec4& rho0, double t);

struct CumulantSet {
    Vec4 populations;      // steady-state populations (I..IV)
    double mean[3];        // per bath, order E, B, C
    double variance[3];
    double fano[3];        // signed variance/mean; NaN when flagged undefined
    bool fano_defined[3];
    double conservation;   // |sum of means| / max |mean|
};

// Everything at one parameter point: populations, three means/variances,
// Fano ratios (undefined flag below mean_floor * delta^2 * kappa).
CumulantSet cumulant_set(const SystemParams& p, const HarmonicSpectrum& s,
                         const DerivativeOptions& opts = {}, double mean_floor = 1e-12);

}  // namespace fqt

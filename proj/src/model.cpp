#include "fqt/model.hpp"

#include <cmath>

namespace fqt {

double thermal_occupancy(double omega, double t) {
    if (omega == 0.0) throw std::domain_error("thermal_occupancy: omega = 0 diverges");
    if (!(t > 0.0)) throw std::domain_error("thermal_occupancy: temperature must be > 0");
    double x = omega / t;
    if (x > 700.0) return std::exp(-x);          // tail below double resolution of 1/(e^x-1)
    if (x < -700.0) return -1.0 - std::exp(x);   // n(-|w|) = -(1 + n(|w|))
    return 1.0 / std::expm1(x);
}

double spectral_function(double omega, double t, double kappa) {
    if (!(t > 0.0)) throw std::domain_error("spectral_function: temperature must be > 0");
    if (omega == 0.0) return kappa * t;  // Ohmic zero-frequency limit w*n(w) -> t
    return kappa * omega * (1.0 + thermal_occupancy(omega, t));
}

double spectral_function_zero_t(double omega, double kappa) {
    return omega > 0.0 ? kappa * omega : 0.0;
}

}  // namespace fqt

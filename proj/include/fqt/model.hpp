#pragma once

#include <stdexcept>

// Physical parameters and bath spectral functions of the three-qubit
// transistor. Natural units hbar = k_B = 1; energies and temperatures in
// units of the qubit-qubit interaction scale when delta = 1.

namespace fqt {

struct SystemParams {
    double delta{1.0};   // interaction scale; both couplings equal it
    double omega0{0.0};  // mean base frequency
    double t_e{0.2};     // emitter bath temperature
    double t_b{0.1};     // base bath temperature
    double t_c{0.02};    // collector bath temperature
    double kappa{1.0};   // Ohmic slope, shared by all three baths
    bool zero_tb{false}; // treat the base bath as T_B -> 0 analytically

    void validate() const {
        if (!(delta > 0.0)) throw std::domain_error("SystemParams: delta must be > 0");
        if (!(kappa > 0.0)) throw std::domain_error("SystemParams: kappa must be > 0");
        if (!(t_e > 0.0) || !(t_c > 0.0))
            throw std::domain_error("SystemParams: emitter/collector temperatures must be > 0");
        if (!zero_tb && !(t_b > 0.0))
            throw std::domain_error("SystemParams: t_b must be > 0 unless the zero_tb flag is set");
    }
};

// Bose occupancy 1/(e^{w/t} - 1). Negative w gives the identity
// n(-w) = -(1 + n(w)). Guarded against exp overflow for |w/t| > 700.
double thermal_occupancy(double omega, double t);

// Ohmic spectral function G(w) = kappa * w * (1 + n(w, t)); G(0) = kappa*t.
// KMS holds: G(-w) = e^{-w/t} G(w). At t -> 0: kappa*w for w > 0, else 0.
double spectral_function(double omega, double t, double kappa);
double spectral_function_zero_t(double omega, double kappa);

}  // namespace fqt

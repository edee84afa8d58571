#pragma once

#include <vector>

#include "fqt/cumulants.hpp"

// Closed-form low-temperature currents, amplification factors, Fano factors
// and the coth entropy bound. The exact low-temperature forms below are the
// implicit-differentiation currents of the trace-preserving low-temperature
// generator in the g = e^{-delta/T_C} -> 0 limit; they conserve energy
// identically (the three numerators sum to zero algebraically).

namespace fqt {

struct ClosedFormInputs {
    double m;        // e^{-delta/T_E}
    double g_c;      // e^{-delta/T_C}
    double h;        // e^{-delta/T_B}
    AuxRates aux;
    double delta;
    bool regime_ok;  // g_c << m << 1 (warning-level, never throws)
};

ClosedFormInputs closed_form_inputs(const SystemParams& p, const HarmonicSpectrum& s);

struct Currents {
    double e, b, c;
    double sum() const { return e + b + c; }
};

// Exact low-temperature currents (g -> 0), X-normalized.
Currents currents_exact_lowT(const ClosedFormInputs& in);
// Leading-order approximation with the compact normalization Y1.
Currents currents_approx(const ClosedFormInputs& in);
// Static-modulation reference forms (printed normalization 1 + T_B - T_B^2).
Currents currents_unmodulated(double t_e, double t_b, double t_c, double delta);
// T_B -> 0 limit with the h-suppressed terms dropped (Y3 normalization).
Currents currents_zero_TB(double t_e, double nu, double p1, const HarmonicSpectrum& s,
                          double delta);

struct BetaPoint {
    double beta_plus;
    double beta_minus;
    bool diverged;  // base-current slope below threshold or sign change
};

struct SweepSample {
    double var;  // swept variable (T_B or nu)
    double j_e, j_b, j_c;
};

// Central-difference amplification along a sorted sweep. Endpoints carry NaN
// betas. A point is divergent when |dJ_B| < threshold * max(|dJ_C|, |dJ_E|)
// or when dJ_B changes sign across it (divergence bracketing).
std::vector<BetaPoint> amplification_numeric(const std::vector<SweepSample>& sweep,
                                             double threshold = 1e-6);

// Asymptotic amplification at nu -> 0 as a function of m = e^{-delta/T_E}
// and the retained weight r0.
BetaPoint amplification_analytic(double m, double r0);

struct FanoValue {
    double value;   // signed variance/mean
    bool defined;
};

FanoValue fano(const CumulantSet& c, Bath alpha);

struct FanoTriple {
    double e, b, c;
};

// Closed-form Fano factors with the shared rational correction factor.
FanoTriple fano_closed_form(const ClosedFormInputs& in, const Currents& j);

enum class SigmaConvention { SumOverT, NegativeSumOverT };

// Entropy flux Sum_a J_a / T_a (reported as-is; the operating regime makes it
// negative under this convention; the conventional sign is available).
double entropy_rate(const Currents& j, double t_e, double t_b, double t_c,
                    SigmaConvention conv = SigmaConvention::SumOverT);

// coth bound on the Fano factor: Omega_a coth(Omega_a sigma_ep / (2 J_a)) with
// sigma_ep = |Sum J/T| and signed J_a; Omega_B = 2 delta, Omega_{E,C} = delta.
// Compared as F_a >= bound_a (signed). NaN when the current vanishes.
double fano_bound(const Currents& j, double t_e, double t_b, double t_c, double delta,
                  Bath alpha);

struct TransistorReport {
    double beta_plus, beta_minus;
    double fano_e, fano_b, fano_c;
    double bound_e, bound_b, bound_c;
    double sigma;  // entropy flux in the reported convention
};

// Assemble the per-point report from the cumulant set and the sweep-level
// amplification pair. Where both betas are finite they satisfy
// beta_plus + beta_minus = -1 up to the numeric conservation residual.
TransistorReport make_report(const CumulantSet& c, const BetaPoint& beta, double t_e,
                             double t_b, double t_c, double delta,
                             SigmaConvention conv = SigmaConvention::SumOverT);

}  // namespace fqt

#pragma once

#include <complex>

#include "fqt/mat4.hpp"
#include "fqt/model.hpp"
#include "fqt/spectrum.hpp"

// Counting-field-tilted 4x4 generator of the reduced population dynamics.
// Basis order is (I, II, III, IV) = ({1,8}, {2,7}, {3,6}, {4,5}) with level
// energies (+Delta, 0, -Delta, 0). Channels:
//   emitter   I<->IV, II<->III   (quantum Delta)
//   collector I<->II, III<->IV   (quantum Delta; II and IV are the upper states
//                                 of their pairs)
//   base      I<->III            (quantum 2*Delta + q*nu sidebands)
//             II<->IV            (zero-quantum, nu sidebands, uncounted)
// Matrix element (r, c) is the rate c -> r for r != c; diagonals balance the
// columns so populations are conserved.

namespace fqt {

enum class Bath { Emitter = 0, Base = 1, Collector = 2 };

inline const char* bath_name(Bath b) {
    switch (b) {
        case Bath::Emitter: return "E";
        case Bath::Base: return "B";
        default: return "C";
    }
}

struct CountingField {
    double chi_e{0.0};
    double chi_b{0.0};
    double chi_c{0.0};
    // When set, the three values are real tilts u = i*chi and the generator
    // is real with factors e^{+-Omega u}.
    bool real_tilt{false};
};

struct AuxRates {
    double f_rate;   // nu P1 coth(nu / 2 T_B)
    double b_rate;   // P0 T_B + f_rate
    double r_of_nu;  // P0 + P1 (1 + nu/2D) e^{-nu/T_B} + P1 (1 - nu/2D) e^{+nu/T_B}
    double r_of_0;   // P0 + 2 P1 (retained weight)
    double q_diag;   // -2 Delta (1 + r_of_0)
};

struct TiltedGenerator {
    Mat4c matrix;
    SystemParams params;
    HarmonicSpectrum spectrum;
    CountingField chi;
};

// Per-channel transition rates of the occupancy-based generator; also used in
// the low-temperature form with Boltzmann-factor rates.
struct RateSet {
    double e_up, e_dn;    // emitter absorption / emission
    double c_up, c_dn;    // collector absorption / emission
    double b_up, b_dn;    // base two-quantum absorption / emission (summed sidebands)
    double z_fw, z_bw;    // base zero-quantum II->IV / IV->II
};

// Auxiliary quantities of the low-temperature generator. Requires harmonic
// support within |q| <= 1; richer spectra must use the full builder.
AuxRates aux_rates(const SystemParams& p, const HarmonicSpectrum& s);

RateSet full_rates(const SystemParams& p, const HarmonicSpectrum& s);
RateSet low_t_rates(const SystemParams& p, const HarmonicSpectrum& s);

// Full occupancy-based builder, valid at any temperature; counting phases
// e^{+-i Delta chi} on single-quantum jumps and e^{+-2i Delta chi_B} on the
// base two-quantum channel (sideband phases folded onto the carrier unless
// exact_base_phases is set). The zero-quantum channel carries no phase.
TiltedGenerator build_full(const SystemParams& p, const HarmonicSpectrum& s,
                           const CountingField& chi, bool exact_base_phases = false);

// Low-temperature form with Boltzmann-factor rates, verbatim matrix of the
// regime {T_E, T_B, T_C} << Delta; diagonals balance the columns exactly.
TiltedGenerator build_low_t(const SystemParams& p, const HarmonicSpectrum& s,
                            const CountingField& chi);

// Real-tilt assemblies used by the cumulant pipeline (u = i*chi on one bath).
Mat4d assemble_real(const RateSet& r, double delta, double u_e, double u_b, double u_c);
// Order-2 jet along the tilt axis of one bath, evaluated at zero tilt.
Mat4j assemble_jet(const RateSet& r, double delta, Bath bath);

inline Mat4d assemble_untilted(const RateSet& r, double delta) {
    return assemble_real(r, delta, 0.0, 0.0, 0.0);
}

double max_column_sum(const Mat4c& m);  // |column sums|, conservation check
double max_column_sum(const Mat4d& m);

}  // namespace fqt

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "fqt/analysis.hpp"
#include "fqt/waveform.hpp"

// Derivative-free optimization of the base-frequency waveform: multi-start
// Nelder-Mead over the Fourier coefficients (a_n, b_n) and the amplitude mu,
// with box constraints handled by clamping plus a quadratic excursion
// penalty. Deterministic for a fixed master seed.

namespace fqt {

enum class Objective { MaximizeBetaPlus, MinimizeFanoE };

struct CrabConfig {
    int n_modes{3};
    int restarts{8};
    int max_evals{500};
    double tolerance{1e-6};      // relative objective spread of the simplex
    std::uint64_t master_seed{1};
    Objective objective{Objective::MaximizeBetaPlus};
    double beta_probe{1e-3};     // T_B step for the local amplification ratio
    int q_max{3};
    double envelope_fraction{0.05};
    double penalty{10.0};        // per unit squared clamped excursion
    WeightsOptions quadrature{};
};

struct Evaluation {
    int restart;
    int eval;
    double objective;   // +-inf marks divergent / failed evaluations
    bool divergent;
    double mu;
    std::vector<double> a, b;
};

struct SideQuantities {
    double j_e, j_b, j_c;
    double fano_e;
    bool fano_e_defined;
};

struct OptResult {
    CrabWaveform best;
    double best_objective;
    bool best_divergent;
    HarmonicSpectrum spectrum;       // achieved weights at the optimum
    SideQuantities at_optimum;
    std::vector<Evaluation> log;     // all evaluations, restart-major order
    int failed_evals;
};

// Amplification objective: dJ_C/dJ_B by a central T_B probe on the cumulant
// pipeline, with the waveform's harmonic weights. Divergent slope ratios are
// reported as +inf and flagged.
double objective_beta_plus(const CrabWaveform& w, const SystemParams& p, double t_b,
                           double probe, int q_max, const WeightsOptions& qopts,
                           bool* divergent = nullptr);

// Emitter Fano objective (signed ratio; nonpositive emitter current counts as
// an evaluation failure).
double objective_fano_e(const CrabWaveform& w, const SystemParams& p, int q_max,
                        const WeightsOptions& qopts);

// Multi-start optimization at one sweep point; nu fixes the waveform period.
// Restarts may run concurrently; aggregation is deterministic by index.
OptResult optimize(const CrabConfig& cfg, const SystemParams& p, double nu, int threads = 1);

}  // namespace fqt

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fqt/analysis.hpp"
#include "fqt/config.hpp"

// Parameter-sweep engine: evaluates the cumulant pipeline on a grid of T_B or
// nu values with a worker pool; rows aggregate in grid order regardless of
// scheduling, so output is deterministic.

namespace fqt {

struct SweepRow {
    double var{0.0};
    bool ok{false};
    std::string error;
    CumulantSet cums{};
    double bound[3]{};  // coth bounds per bath; NaN where undefined
};

struct SweepResult {
    std::vector<SweepRow> rows;
    std::vector<BetaPoint> betas;
    int failed{0};
    double max_conservation{0.0};  // worst |sum J| / max |J| over ok rows
    HarmonicSpectrum spectrum;     // protocol weights at the representative nu
};

// Spectrum for a protocol at modulation frequency nu. CRAB protocols carry an
// explicit waveform whose period is retuned to 2 pi / nu.
HarmonicSpectrum protocol_spectrum(const ProtocolSpec& protocol, double nu,
                                   const CrabConfig& crab,
                                   const std::optional<CrabWaveform>& waveform);

SweepResult run_sweep(const RunConfig& cfg);

std::vector<double> grid_points(const GridSpec& g);

}  // namespace fqt

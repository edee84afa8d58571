#pragma once

#include <string>
#include <vector>

#include "fqt/optimizer.hpp"
#include "fqt/sweep.hpp"

// File emission: canonical CSV (12 significant digits, byte-stable for a
// fixed config and seed), JSON run records, and bare-bones SVG line charts.

namespace fqt {

// One value formatted as %.11e (12 significant digits); nan/inf spelled out.
std::string format_float(double v);

// Exact header:
// var,J_E,J_B,J_C,var_E,var_B,var_C,fano_E,fano_B,fano_C,
// bound_E,bound_B,bound_C,beta_plus,beta_minus,diverged
extern const char* kSweepCsvHeader;

void write_sweep_csv(const std::string& path, const SweepResult& result);

// Full run record: config echo, spectrum deficit, summary, version, timestamp.
void write_sweep_json(const std::string& path, const RunConfig& cfg, const SweepResult& result);

struct OptimizePoint {
    double var;  // swept variable (T_B or nu)
    OptResult result;
    double baseline_objective;
    SideQuantities baseline;
    std::string baseline_kind;
};

void write_optimize_json(const std::string& path, const RunConfig& cfg,
                         const std::vector<OptimizePoint>& points);
// Trace CSV: restart,eval,objective,mu,a1..aN,b1..bN (all grid points
// concatenated with a leading var column).
void write_optimize_trace_csv(const std::string& path, const std::vector<OptimizePoint>& points,
                              int n_modes);
// Per-point summary: var,objective,baseline,J_E,J_B,J_C,fano_E.
void write_optimize_summary_csv(const std::string& path,
                                const std::vector<OptimizePoint>& points);

struct SvgSeries {
    std::string name;
    std::vector<std::pair<double, double>> points;
};

void write_svg_chart(const std::string& path, const std::string& title,
                     const std::string& x_label, const std::vector<SvgSeries>& series);

// Sweep chart: the three mean currents against the swept variable.
void write_sweep_svg(const std::string& path, const RunConfig& cfg, const SweepResult& result);

}  // namespace fqt

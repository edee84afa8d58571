#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fqt/config.hpp"

// Self-contained invariant suite behind `fqt validate`: trace preservation,
// conservation, the three-route cumulant cross-check, closed-form agreement,
// coth-bound checks and the quadrature oracle. Prints one pass/fail line per
// invariant; gating checks decide the exit status.

namespace fqt {

struct ValidationCheck {
    std::string name;
    bool passed;
    bool gating;
    std::string detail;
};

std::vector<ValidationCheck> run_validation(const RunConfig& cfg);

// Pretty-print and return true when every gating check passed.
bool report_validation(const std::vector<ValidationCheck>& checks, std::ostream& out);

// JSON dump of a generator matrix (entries as [re, im]) for --dump-matrix.
std::string dump_matrix_json(const RunConfig& cfg);

}  // namespace fqt

#pragma once

#include <cstdlib>
#include <stdexcept>
#include <vector>

// Floquet harmonic weights P_q of the periodically modulated base qubit.
// A spectrum is a finite map q -> P_q plus the modulation frequency nu;
// truncated spectra record their normalization deficit 1 - sum P_q.

namespace fqt {

struct HarmonicSpectrum {
    struct Entry {
        int q;
        double p;
    };
    std::vector<Entry> weights;  // sorted by q, strictly increasing
    double nu{0.0};              // modulation frequency 2*pi/tau
    double deficit{0.0};         // 1 - sum of retained weights

    double p(int q) const {
        for (const auto& e : weights)
            if (e.q == q) return e.p;
        return 0.0;
    }
    double sum() const {
        double s = 0.0;
        for (const auto& e : weights) s += e.p;
        return s;
    }
    int max_abs_q() const {
        int m = 0;
        for (const auto& e : weights)
            if (e.p != 0.0) m = std::max(m, std::abs(e.q));
        return m;
    }
    bool symmetric(double tol = 1e-12) const {
        for (const auto& e : weights)
            if (std::abs(e.p - p(-e.q)) > tol) return false;
        return true;
    }
};

// Static modulation: all weight in the carrier, P_q = delta_{q,0}.
HarmonicSpectrum weights_unmodulated();

// Weak sinusoidal frequency modulation with index lambda in [0, 1]:
// P_0 = 1 - lambda^2/2, P_{+-1} = lambda^2/4 (exactly normalized).
HarmonicSpectrum weights_sinusoidal(double lambda, double nu);

// Pi-flip modulation truncated to its two dominant harmonics:
// P_0 = 0, P_{+-1} = (2/pi)^2; the truncation deficit 1 - 8/pi^2 is recorded
// and deliberately not renormalized (the closed-form benchmarks assume it).
HarmonicSpectrum weights_pi_flip(double nu);

// Construct from explicit entries (validates non-negativity and ordering).
HarmonicSpectrum make_spectrum(std::vector<HarmonicSpectrum::Entry> entries, double nu);

}  // namespace fqt

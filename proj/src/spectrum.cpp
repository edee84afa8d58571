#include "fqt/spectrum.hpp"

#include <algorithm>
#include <cmath>

namespace fqt {

HarmonicSpectrum weights_unmodulated() {
    HarmonicSpectrum s;
    s.weights = {{0, 1.0}};
    s.nu = 0.0;
    s.deficit = 0.0;
    return s;
}

HarmonicSpectrum weights_sinusoidal(double lambda, double nu) {
    if (!(lambda >= 0.0) || lambda > 1.0)
        throw std::domain_error("weights_sinusoidal: lambda must lie in [0, 1]");
    HarmonicSpectrum s;
    if (lambda == 0.0) {
        s.weights = {{0, 1.0}};
    } else {
        double p1 = lambda * lambda / 4.0;
        s.weights = {{-1, p1}, {0, 1.0 - lambda * lambda / 2.0}, {1, p1}};
    }
    s.nu = nu;
    s.deficit = 0.0;
    return s;
}

HarmonicSpectrum weights_pi_flip(double nu) {
    HarmonicSpectrum s;
    double p1 = 4.0 / (M_PI * M_PI);
    s.weights = {{-1, p1}, {1, p1}};
    s.nu = nu;
    s.deficit = 1.0 - 2.0 * p1;
    return s;
}

HarmonicSpectrum make_spectrum(std::vector<HarmonicSpectrum::Entry> entries, double nu) {
    std::sort(entries.begin(), entries.end(),
              [](const auto& a, const auto& b) { return a.q < b.q; });
    double sum = 0.0;
    for (size_t i = 0; i < entries.size(); ++i) {
        if (i > 0 && entries[i].q == entries[i - 1].q)
            throw std::domain_error("make_spectrum: duplicate harmonic index");
        if (!(entries[i].p >= 0.0))
            throw std::domain_error("make_spectrum: weights must be non-negative");
        sum += entries[i].p;
    }
    if (sum > 1.0 + 1e-10) throw std::domain_error("make_spectrum: weights sum above 1");
    HarmonicSpectrum s;
    s.weights = std::move(entries);
    s.nu = nu;
    s.deficit = 1.0 - sum;
    return s;
}

}  // namespace fqt

#include "fqt/waveform.hpp"

#include <cmath>

#include "fqt/kernels.hpp"

namespace fqt {

void CrabWaveform::validate() const {
    if (!(tau > 0.0)) throw std::domain_error("CrabWaveform: tau must be > 0");
    if (a.size() != b.size() || a.empty())
        throw std::domain_error("CrabWaveform: need matching, non-empty coefficient lists");
    if (!(mu >= 0.0) || mu > 1.0) throw std::domain_error("CrabWaveform: mu must lie in [0, 1]");
    if (!(envelope_fraction > 0.0) || !(envelope_fraction < 0.5))
        throw std::domain_error("CrabWaveform: envelope_fraction must lie in (0, 0.5)");
    for (size_t i = 0; i < a.size(); ++i)
        if (std::abs(a[i]) > 1.0 || std::abs(b[i]) > 1.0)
            throw std::domain_error("CrabWaveform: coefficients must lie in [-1, 1]");
}

namespace {
// smoothstep ramp: 0 at the period edges, 1 on the plateau
double envelope(double x, double eps) {
    double y;
    if (x < eps)
        y = x / eps;
    else if (x > 1.0 - eps)
        y = (1.0 - x) / eps;
    else
        return 1.0;
    return y * y * (3.0 - 2.0 * y);
}
}  // namespace

double crab_deviation(const CrabWaveform& w, double t) {
    double x = t / w.tau;
    x -= std::floor(x);
    double s = 0.0;
    const int n_modes = w.n_modes();
    for (int n = 1; n <= n_modes; ++n) {
        double ph = 2.0 * M_PI * n * x;
        s += w.a[static_cast<size_t>(n - 1)] * std::cos(ph) +
             w.b[static_cast<size_t>(n - 1)] * std::sin(ph);
    }
    return w.mu / (2.0 * n_modes) * envelope(x, w.envelope_fraction) * s;
}

double crab_frequency(const CrabWaveform& w, double t) {
    if (t < 0.0 || t > w.tau)
        throw std::domain_error("crab_frequency: t must lie in [0, tau]");
    return w.omega0 + crab_deviation(w, t);
}

WeightsResult weights_from_deviation(const std::function<double(double)>& deviation,
                                     double tau, int q_max, const WeightsOptions& opts) {
    if (q_max < 1) throw std::domain_error("weights_from_deviation: q_max must be >= 1");
    if (!(tau > 0.0)) throw std::domain_error("weights_from_deviation: tau must be > 0");

    const auto& ker = kernels::ops();
    std::vector<double> prev;
    double last_deficit = 1.0;
    double mean_dev = 0.0;

    for (long n = opts.base_points; n <= opts.max_points; n *= 2) {
        const auto nn = static_cast<size_t>(n);
        const double dt = tau / static_cast<double>(n);

        // node and midpoint samples of the deviation
        std::vector<double> f(nn + 1), fm(nn);
        for (size_t k = 0; k <= nn; ++k) f[k] = deviation(static_cast<double>(k) * dt);
        for (size_t k = 0; k < nn; ++k) fm[k] = deviation((static_cast<double>(k) + 0.5) * dt);

        // cumulative phase by composite Simpson steps; the secular mean is
        // projected out so Phi is exactly periodic
        std::vector<double> step(nn);
        double total = 0.0;
        for (size_t k = 0; k < nn; ++k) {
            step[k] = dt / 6.0 * (f[k] + 4.0 * fm[k] + f[k + 1]);
            total += step[k];
        }
        mean_dev = total / tau;
        std::vector<double> wr(nn), wi(nn);
        double phi = 0.0;
        for (size_t k = 0; k < nn; ++k) {
            wr[k] = std::cos(phi);
            wi[k] = -std::sin(phi);
            phi += step[k] - mean_dev * dt;
        }

        // roots of unity e^{i q nu t_k} = e^{2 pi i q k / n}
        std::vector<double> zr(nn), zi(nn);
        for (size_t k = 0; k < nn; ++k) {
            double ph = 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(n);
            zr[k] = std::cos(ph);
            zi[k] = std::sin(ph);
        }

        std::vector<double> pq(static_cast<size_t>(2 * q_max + 1));
        auto put = [&](int q, double re, double im) {
            double inv = 1.0 / static_cast<double>(n);
            re *= inv;
            im *= inv;
            pq[static_cast<size_t>(q + q_max)] = re * re + im * im;
        };
        double sre = 0.0, sim = 0.0;
        ker.csum(wr.data(), wi.data(), nn, &sre, &sim);
        put(0, sre, sim);

        std::vector<double> vr = wr, vi = wi;
        for (int q = 1; q <= q_max; ++q) {
            ker.cmul_inplace_sum(vr.data(), vi.data(), zr.data(), zi.data(), nn, &sre, &sim);
            put(q, sre, sim);
        }
        for (size_t k = 0; k < nn; ++k) zi[k] = -zi[k];
        vr = wr;
        vi = wi;
        for (int q = 1; q <= q_max; ++q) {
            ker.cmul_inplace_sum(vr.data(), vi.data(), zr.data(), zi.data(), nn, &sre, &sim);
            put(-q, sre, sim);
        }

        double sum = 0.0;
        for (double p : pq) sum += p;
        last_deficit = 1.0 - sum;

        bool converged = !prev.empty();
        if (converged)
            for (size_t k = 0; k < pq.size(); ++k)
                if (std::abs(pq[k] - prev[k]) >= opts.tol) {
                    converged = false;
                    break;
                }
        if (converged) {
            WeightsResult res;
            std::vector<HarmonicSpectrum::Entry> entries;
            entries.reserve(pq.size());
            for (int q = -q_max; q <= q_max; ++q)
                entries.push_back({q, pq[static_cast<size_t>(q + q_max)]});
            res.spectrum = make_spectrum(std::move(entries), 2.0 * M_PI / tau);
            res.grid_points = n;
            res.mean_deviation = mean_dev;
            return res;
        }
        prev = std::move(pq);
    }
    throw QuadratureError("weights_from_deviation: no convergence within the grid cap",
                          last_deficit);
}

WeightsResult weights_from_waveform(const CrabWaveform& w, int q_max,
                                    const WeightsOptions& opts) {
    w.validate();
    return weights_from_deviation([&w](double t) { return crab_deviation(w, t); }, w.tau, q_max,
                                  opts);
}

}  // namespace fqt

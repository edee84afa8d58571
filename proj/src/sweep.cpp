#include "fqt/sweep.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

namespace fqt {

std::vector<double> grid_points(const GridSpec& g) {
    if (g.steps < 2) throw std::invalid_argument("grid: sweeps need at least 2 steps");
    if (!(g.stop > g.start)) throw std::invalid_argument("grid: stop must exceed start");
    std::vector<double> v(static_cast<size_t>(g.steps));
    for (int i = 0; i < g.steps; ++i)
        v[static_cast<size_t>(i)] =
            g.start + (g.stop - g.start) * static_cast<double>(i) / (g.steps - 1);
    return v;
}

HarmonicSpectrum protocol_spectrum(const ProtocolSpec& protocol, double nu,
                                   const CrabConfig& crab,
                                   const std::optional<CrabWaveform>& waveform) {
    if (protocol.kind == "unmodulated") {
        HarmonicSpectrum s = weights_unmodulated();
        s.nu = nu;
        return s;
    }
    if (protocol.kind == "sinusoidal") return weights_sinusoidal(protocol.lambda, nu);
    if (protocol.kind == "pi-flip") return weights_pi_flip(nu);
    if (protocol.kind == "crab") {
        if (!waveform.has_value())
            throw std::invalid_argument("protocol 'crab' needs a waveform file");
        CrabWaveform w = *waveform;
        if (nu > 0.0) w.tau = 2.0 * M_PI / nu;
        return weights_from_waveform(w, crab.q_max, crab.quadrature).spectrum;
    }
    throw std::invalid_argument("unknown protocol kind: " + protocol.kind);
}

namespace {

SweepRow evaluate_point(const RunConfig& cfg, bool sweep_tb, double var,
                        const std::optional<CrabWaveform>& waveform) {
    SweepRow row;
    row.var = var;
    try {
        SystemParams p = cfg.params;
        double nu = cfg.nu;
        if (sweep_tb)
            p.t_b = var;
        else
            nu = var;
        const HarmonicSpectrum spec = protocol_spectrum(cfg.protocol, nu, cfg.crab, waveform);
        row.cums = cumulant_set(p, spec, cfg.derivatives);
        const double t_b_eff = p.zero_tb ? std::numeric_limits<double>::infinity() : p.t_b;
        const TransistorReport rep =
            make_report(row.cums, BetaPoint{}, p.t_e, t_b_eff, p.t_c, p.delta);
        row.bound[0] = rep.bound_e;
        row.bound[1] = rep.bound_b;
        row.bound[2] = rep.bound_c;
        row.ok = true;
    } catch (const std::exception& e) {
        row.ok = false;
        row.error = e.what();
    }
    return row;
}

}  // namespace

SweepResult run_sweep(const RunConfig& cfg) {
    const bool sweep_tb = cfg.mode == "sweep-tb";
    if (!sweep_tb && cfg.mode != "sweep-nu")
        throw std::invalid_argument("run_sweep: mode must be sweep-tb or sweep-nu");
    cfg.params.validate();

    const std::vector<double> grid = grid_points(cfg.grid);
    std::optional<CrabWaveform> waveform;
    if (cfg.protocol.kind == "crab") waveform = load_waveform(cfg.protocol.crab_file);

    SweepResult res;
    res.rows.resize(grid.size());

    std::atomic<size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const size_t i = next.fetch_add(1);
            if (i >= grid.size()) return;
            res.rows[i] = evaluate_point(cfg, sweep_tb, grid[i], waveform);
        }
    };
    const int nt = std::max(1, std::min<int>(resolve_threads(cfg), static_cast<int>(grid.size())));
    if (nt == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(nt));
        for (int i = 0; i < nt; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    std::vector<SweepSample> samples;
    samples.reserve(res.rows.size());
    for (const auto& r : res.rows) {
        if (r.ok) {
            samples.push_back({r.var, r.cums.mean[0], r.cums.mean[1], r.cums.mean[2]});
            res.max_conservation = std::max(res.max_conservation, r.cums.conservation);
        } else {
            samples.push_back({r.var, nan, nan, nan});
            ++res.failed;
        }
    }
    res.betas = amplification_numeric(samples);

    // representative spectrum (protocol-level metadata for the run record)
    try {
        const double nu0 = sweep_tb ? cfg.nu : grid.front();
        res.spectrum = protocol_spectrum(cfg.protocol, nu0, cfg.crab, waveform);
    } catch (const std::exception&) {
        res.spectrum = HarmonicSpectrum{};
        res.spectrum.deficit = std::numeric_limits<double>::quiet_NaN();
    }
    return res;
}

}  // namespace fqt

#include "fqt/optimizer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "fqt/rng.hpp"

namespace fqt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

SystemParams with_tb(SystemParams p, double t_b) {
    p.t_b = t_b;
    return p;
}

}  // namespace

double objective_beta_plus(const CrabWaveform& w, const SystemParams& p, double t_b,
                           double probe, int q_max, const WeightsOptions& qopts,
                           bool* divergent) {
    if (divergent != nullptr) *divergent = false;
    const HarmonicSpectrum spec = weights_from_waveform(w, q_max, qopts).spectrum;
    DerivativeOptions d;
    const double jbp = mean_current(with_tb(p, t_b + probe), spec, Bath::Base, d);
    const double jbm = mean_current(with_tb(p, t_b - probe), spec, Bath::Base, d);
    const double jcp = mean_current(with_tb(p, t_b + probe), spec, Bath::Collector, d);
    const double jcm = mean_current(with_tb(p, t_b - probe), spec, Bath::Collector, d);
    const double jep = mean_current(with_tb(p, t_b + probe), spec, Bath::Emitter, d);
    const double jem = mean_current(with_tb(p, t_b - probe), spec, Bath::Emitter, d);
    const double db = jbp - jbm, dc = jcp - jcm, de = jep - jem;
    if (std::abs(db) < 1e-6 * std::max(std::abs(dc), std::abs(de))) {
        if (divergent != nullptr) *divergent = true;
        return kInf;
    }
    return dc / db;
}

double objective_fano_e(const CrabWaveform& w, const SystemParams& p, int q_max,
                        const WeightsOptions& qopts) {
    const HarmonicSpectrum spec = weights_from_waveform(w, q_max, qopts).spectrum;
    const BathCumulants bc = mean_and_variance(p, spec, Bath::Emitter);
    if (!(bc.mean > 0.0))
        throw std::runtime_error("objective_fano_e: emitter current not positive");
    return bc.variance / bc.mean;
}

namespace {

struct BoxSpec {
    int n_modes;
    int dim() const { return 2 * n_modes + 1; }
    // x layout: a_1..a_N, b_1..b_N, mu
    double lo(int i) const { return i == 2 * n_modes ? 0.0 : -1.0; }
    double hi(int) const { return 1.0; }
};

CrabWaveform to_waveform(const std::vector<double>& x, const BoxSpec& box, double nu,
                         double omega0, double envelope_fraction) {
    CrabWaveform w;
    w.omega0 = omega0;
    w.tau = 2.0 * M_PI / nu;
    w.envelope_fraction = envelope_fraction;
    w.a.assign(x.begin(), x.begin() + box.n_modes);
    w.b.assign(x.begin() + box.n_modes, x.begin() + 2 * box.n_modes);
    w.mu = x[static_cast<size_t>(2 * box.n_modes)];
    return w;
}

struct RestartOutcome {
    std::vector<Evaluation> log;
    int best_idx{-1};          // index into log of best non-divergent eval
    int best_any_idx{-1};      // best including divergent ones
    int failed{0};
};

// Nelder-Mead with standard coefficients; maximization is handled by
// negating the raw objective. Returns the evaluation log.
RestartOutcome run_restart(int restart_index, const CrabConfig& cfg, const SystemParams& p,
                           double nu, double t_b) {
    const BoxSpec box{cfg.n_modes};
    const int n = box.dim();
    SplitMix64 rng(derive_seed(cfg.master_seed, static_cast<std::uint64_t>(restart_index)));

    RestartOutcome out;
    const bool maximize = cfg.objective == Objective::MaximizeBetaPlus;

    double best_score = kInf;       // minimized score of best non-divergent
    double best_any_score = kInf;

    // raw-objective evaluation with clamping and excursion penalty; returns
    // the minimized score
    auto evaluate = [&](const std::vector<double>& x_raw) {
        std::vector<double> x(x_raw);
        double excess = 0.0;
        for (int i = 0; i < n; ++i) {
            double c = std::clamp(x[static_cast<size_t>(i)], box.lo(i), box.hi(i));
            excess += (x[static_cast<size_t>(i)] - c) * (x[static_cast<size_t>(i)] - c);
            x[static_cast<size_t>(i)] = c;
        }
        CrabWaveform w = to_waveform(x, box, nu, p.omega0, cfg.envelope_fraction);
        Evaluation ev;
        ev.restart = restart_index;
        ev.eval = static_cast<int>(out.log.size());
        ev.mu = w.mu;
        ev.a = w.a;
        ev.b = w.b;
        ev.divergent = false;
        double raw;
        bool failed = false;
        try {
            if (cfg.objective == Objective::MaximizeBetaPlus)
                raw = objective_beta_plus(w, p, t_b, cfg.beta_probe, cfg.q_max, cfg.quadrature,
                                          &ev.divergent);
            else
                raw = objective_fano_e(w, p, cfg.q_max, cfg.quadrature);
        } catch (const std::exception&) {
            failed = true;
            raw = maximize ? -kInf : kInf;
        }
        ev.objective = raw;
        out.log.push_back(ev);
        if (failed) ++out.failed;

        double score = maximize ? -raw : raw;
        if (std::isfinite(raw) || ev.divergent) {
            if (score < best_any_score) {
                best_any_score = score;
                out.best_any_idx = ev.eval;
            }
            if (!ev.divergent && std::isfinite(raw) && score < best_score) {
                best_score = score;
                out.best_idx = ev.eval;
            }
        }
        score += cfg.penalty * excess;
        return score;
    };

    // initial simplex: random point plus coordinate steps kept inside the box
    std::vector<std::vector<double>> xs(static_cast<size_t>(n + 1),
                                        std::vector<double>(static_cast<size_t>(n)));
    for (int i = 0; i < n; ++i) xs[0][static_cast<size_t>(i)] = rng.uniform(box.lo(i), box.hi(i));
    for (int v = 1; v <= n; ++v) {
        xs[static_cast<size_t>(v)] = xs[0];
        const int i = v - 1;
        const double step = 0.25 * (box.hi(i) - box.lo(i));
        double& xi = xs[static_cast<size_t>(v)][static_cast<size_t>(i)];
        xi = (xi + step <= box.hi(i)) ? xi + step : xi - step;
    }
    std::vector<double> fs(static_cast<size_t>(n + 1));
    for (int v = 0; v <= n; ++v) {
        if (static_cast<int>(out.log.size()) >= cfg.max_evals) return out;
        fs[static_cast<size_t>(v)] = evaluate(xs[static_cast<size_t>(v)]);
    }

    const double alpha = 1.0, gamma = 2.0, rho = 0.5, shrink = 0.5;
    while (static_cast<int>(out.log.size()) < cfg.max_evals) {
        std::vector<int> order(static_cast<size_t>(n + 1));
        for (int i = 0; i <= n; ++i) order[static_cast<size_t>(i)] = i;
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            return fs[static_cast<size_t>(a)] < fs[static_cast<size_t>(b)];
        });
        const int ibest = order[0], iworst = order[static_cast<size_t>(n)],
                  isecond = order[static_cast<size_t>(n - 1)];

        const double fb = fs[static_cast<size_t>(ibest)];
        const double fw = fs[static_cast<size_t>(iworst)];
        if (std::isfinite(fb) && std::isfinite(fw)) {
            const double spread = std::abs(fw - fb);
            if (spread <= cfg.tolerance * std::max(1e-30, std::abs(fb))) break;
        }

        std::vector<double> centroid(static_cast<size_t>(n), 0.0);
        for (int v = 0; v <= n; ++v) {
            if (v == iworst) continue;
            for (int i = 0; i < n; ++i)
                centroid[static_cast<size_t>(i)] +=
                    xs[static_cast<size_t>(v)][static_cast<size_t>(i)] / n;
        }
        auto blend = [&](double c) {
            std::vector<double> x(static_cast<size_t>(n));
            for (int i = 0; i < n; ++i)
                x[static_cast<size_t>(i)] =
                    centroid[static_cast<size_t>(i)] +
                    c * (centroid[static_cast<size_t>(i)] -
                         xs[static_cast<size_t>(iworst)][static_cast<size_t>(i)]);
            return x;
        };

        auto xr = blend(alpha);
        const double fr = evaluate(xr);
        if (static_cast<int>(out.log.size()) >= cfg.max_evals) break;
        if (fr < fs[static_cast<size_t>(ibest)]) {
            auto xe = blend(gamma);
            const double fe = evaluate(xe);
            if (fe < fr) {
                xs[static_cast<size_t>(iworst)] = xe;
                fs[static_cast<size_t>(iworst)] = fe;
            } else {
                xs[static_cast<size_t>(iworst)] = xr;
                fs[static_cast<size_t>(iworst)] = fr;
            }
        } else if (fr < fs[static_cast<size_t>(isecond)]) {
            xs[static_cast<size_t>(iworst)] = xr;
            fs[static_cast<size_t>(iworst)] = fr;
        } else {
            auto xc = blend(-rho);
            const double fc = evaluate(xc);
            if (fc < fs[static_cast<size_t>(iworst)]) {
                xs[static_cast<size_t>(iworst)] = xc;
                fs[static_cast<size_t>(iworst)] = fc;
            } else {
                for (int v = 0; v <= n; ++v) {
                    if (v == ibest) continue;
                    for (int i = 0; i < n; ++i)
                        xs[static_cast<size_t>(v)][static_cast<size_t>(i)] =
                            xs[static_cast<size_t>(ibest)][static_cast<size_t>(i)] +
                            shrink * (xs[static_cast<size_t>(v)][static_cast<size_t>(i)] -
                                      xs[static_cast<size_t>(ibest)][static_cast<size_t>(i)]);
                    if (static_cast<int>(out.log.size()) >= cfg.max_evals) return out;
                    fs[static_cast<size_t>(v)] = evaluate(xs[static_cast<size_t>(v)]);
                }
            }
        }
    }
    return out;
}

}  // namespace

OptResult optimize(const CrabConfig& cfg, const SystemParams& p, double nu, int threads) {
    if (cfg.restarts < 1) throw std::domain_error("optimize: restarts must be >= 1");
    if (cfg.n_modes < 1) throw std::domain_error("optimize: n_modes must be >= 1");
    if (!(nu > 0.0)) throw std::domain_error("optimize: nu must be > 0");

    std::vector<RestartOutcome> outcomes(static_cast<size_t>(cfg.restarts));
    std::atomic<int> next{0};
    auto worker = [&]() {
        for (;;) {
            const int r = next.fetch_add(1);
            if (r >= cfg.restarts) return;
            outcomes[static_cast<size_t>(r)] = run_restart(r, cfg, p, nu, p.t_b);
        }
    };
    const int nt = std::max(1, std::min(threads, cfg.restarts));
    if (nt == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(nt));
        for (int i = 0; i < nt; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    const bool maximize = cfg.objective == Objective::MaximizeBetaPlus;
    auto better = [&](double a, double b) { return maximize ? a > b : a < b; };

    OptResult res;
    res.failed_evals = 0;
    const Evaluation* best = nullptr;
    const Evaluation* best_any = nullptr;
    for (const auto& oc : outcomes) {
        res.failed_evals += oc.failed;
        if (oc.best_idx >= 0) {
            const Evaluation& e = oc.log[static_cast<size_t>(oc.best_idx)];
            if (best == nullptr || better(e.objective, best->objective)) best = &e;
        }
        if (oc.best_any_idx >= 0) {
            const Evaluation& e = oc.log[static_cast<size_t>(oc.best_any_idx)];
            if (best_any == nullptr || better(e.objective, best_any->objective)) best_any = &e;
        }
    }
    // divergent evaluations only win when nothing else produced a value
    const Evaluation* chosen = best != nullptr ? best : best_any;
    if (chosen == nullptr)
        throw std::runtime_error("optimize: no restart produced a finite objective");

    CrabWaveform w;
    w.omega0 = p.omega0;
    w.tau = 2.0 * M_PI / nu;
    w.envelope_fraction = cfg.envelope_fraction;
    w.a = chosen->a;
    w.b = chosen->b;
    w.mu = chosen->mu;
    res.best = w;
    res.best_objective = chosen->objective;
    res.best_divergent = chosen->divergent;
    res.spectrum = weights_from_waveform(w, cfg.q_max, cfg.quadrature).spectrum;

    const CumulantSet cs = cumulant_set(p, res.spectrum);
    res.at_optimum.j_e = cs.mean[0];
    res.at_optimum.j_b = cs.mean[1];
    res.at_optimum.j_c = cs.mean[2];
    res.at_optimum.fano_e = cs.fano[0];
    res.at_optimum.fano_e_defined = cs.fano_defined[0];

    for (const auto& oc : outcomes)
        res.log.insert(res.log.end(), oc.log.begin(), oc.log.end());
    return res;
}

}  // namespace fqt

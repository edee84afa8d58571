#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>

#include "fqt/optimizer.hpp"

using namespace fqt;

namespace {
SystemParams fig_params(double t_b) {
    SystemParams p;
    p.delta = 1.0;
    p.t_e = 0.2;
    p.t_b = t_b;
    p.t_c = 0.02;
    p.kappa = 1.0;
    return p;
}

CrabConfig quick_config(Objective obj) {
    CrabConfig c;
    c.n_modes = 2;
    c.restarts = 3;
    c.max_evals = 60;
    c.master_seed = 314;
    c.objective = obj;
    return c;
}
}  // namespace

TEST_CASE("zero coefficients reduce to the static amplification") {
    const SystemParams p = fig_params(0.08);
    const double nu = 0.05;
    CrabWaveform w;
    w.tau = 2.0 * M_PI / nu;
    w.mu = 0.0;
    w.a = {0.0, 0.0};
    w.b = {0.0, 0.0};
    bool div = false;
    const double beta_w = objective_beta_plus(w, p, p.t_b, 1e-3, 3, {}, &div);
    CHECK_FALSE(div);

    const HarmonicSpectrum un = weights_unmodulated();
    auto current = [&](double tb, Bath b) {
        SystemParams q = p;
        q.t_b = tb;
        return mean_current(q, un, b);
    };
    const double db = current(p.t_b + 1e-3, Bath::Base) - current(p.t_b - 1e-3, Bath::Base);
    const double dc =
        current(p.t_b + 1e-3, Bath::Collector) - current(p.t_b - 1e-3, Bath::Collector);
    CHECK(beta_w == doctest::Approx(dc / db).epsilon(1e-6));
}

TEST_CASE("fano objective at zero coefficients equals the static ratio") {
    const SystemParams p = fig_params(0.1);
    CrabWaveform w;
    w.tau = 2.0 * M_PI / 0.1;
    w.mu = 0.0;
    w.a = {0.0};
    w.b = {0.0};
    const double fw = objective_fano_e(w, p, 3, {});
    const CumulantSet c = cumulant_set(p, weights_unmodulated());
    CHECK(fw == doctest::Approx(c.fano[0]).epsilon(1e-6));
}

TEST_CASE("optimization is deterministic for a fixed master seed") {
    const SystemParams p = fig_params(0.1);
    const CrabConfig cfg = quick_config(Objective::MinimizeFanoE);
    const OptResult r1 = optimize(cfg, p, 0.1, 1);
    const OptResult r2 = optimize(cfg, p, 0.1, 1);
    const OptResult r3 = optimize(cfg, p, 0.1, 2);  // thread count must not matter
    CHECK(std::memcmp(&r1.best_objective, &r2.best_objective, sizeof(double)) == 0);
    CHECK(std::memcmp(&r1.best_objective, &r3.best_objective, sizeof(double)) == 0);
    REQUIRE(r1.log.size() == r2.log.size());
    REQUIRE(r1.log.size() == r3.log.size());
    for (size_t i = 0; i < r1.log.size(); i += 7) {
        CHECK(r1.log[i].objective == r3.log[i].objective);
        CHECK(r1.log[i].mu == r3.log[i].mu);
    }
    CHECK(r1.best.mu == r3.best.mu);
    CHECK(r1.best.a == r3.best.a);
}

TEST_CASE("bookkeeping: the reported best is the running extremum of the log") {
    const SystemParams p = fig_params(0.1);
    const OptResult r = optimize(quick_config(Objective::MinimizeFanoE), p, 0.1, 2);
    double best = std::numeric_limits<double>::infinity();
    for (const auto& ev : r.log)
        if (!ev.divergent && std::isfinite(ev.objective)) best = std::min(best, ev.objective);
    CHECK(r.best_objective == doctest::Approx(best));
    CHECK_FALSE(r.best_divergent);
}

TEST_CASE("every logged evaluation stays inside the box") {
    const SystemParams p = fig_params(0.09);
    CrabConfig cfg = quick_config(Objective::MaximizeBetaPlus);
    cfg.max_evals = 50;
    const OptResult r = optimize(cfg, p, 0.02, 2);
    for (const auto& ev : r.log) {
        CHECK(ev.mu >= 0.0);
        CHECK(ev.mu <= 1.0);
        for (double v : ev.a) {
            CHECK(v >= -1.0);
            CHECK(v <= 1.0);
        }
        for (double v : ev.b) {
            CHECK(v >= -1.0);
            CHECK(v <= 1.0);
        }
    }
    CHECK(r.log.size() <= static_cast<size_t>(cfg.restarts * cfg.max_evals));
}

TEST_CASE("fano minimization beats the random start and grows the base current") {
    const SystemParams p = fig_params(0.1);
    CrabConfig cfg = quick_config(Objective::MinimizeFanoE);
    cfg.n_modes = 3;
    cfg.restarts = 4;
    cfg.max_evals = 120;
    const OptResult r = optimize(cfg, p, 0.1, 2);
    const CumulantSet base = cumulant_set(p, weights_unmodulated());
    CHECK(r.best_objective < base.fano[0]);
    CHECK(std::abs(r.at_optimum.j_b) > std::abs(base.mean[1]));
    CHECK(r.at_optimum.fano_e == doctest::Approx(r.best_objective).epsilon(1e-9));
}

TEST_CASE("configuration guards") {
    const SystemParams p = fig_params(0.1);
    CrabConfig cfg = quick_config(Objective::MinimizeFanoE);
    cfg.restarts = 0;
    CHECK_THROWS_AS(optimize(cfg, p, 0.1, 1), std::domain_error);
    cfg = quick_config(Objective::MinimizeFanoE);
    cfg.n_modes = 0;
    CHECK_THROWS_AS(optimize(cfg, p, 0.1, 1), std::domain_error);
    CHECK_THROWS_AS(optimize(quick_config(Objective::MinimizeFanoE), p, 0.0, 1),
                    std::domain_error);
}

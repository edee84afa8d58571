#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fqt/analysis.hpp"
#include "fqt/cumulants.hpp"
#include "fqt/rng.hpp"

using namespace fqt;

namespace {
SystemParams fig_params(double t_b = 0.1) {
    SystemParams p;
    p.delta = 1.0;
    p.t_e = 0.2;
    p.t_b = t_b;
    p.t_c = 0.02;
    p.kappa = 1.0;
    return p;
}

double dominant_real(const RateSet& r, double delta, Bath bath, double u) {
    const double ue = bath == Bath::Emitter ? u : 0.0;
    const double ub = bath == Bath::Base ? u : 0.0;
    const double uc = bath == Bath::Collector ? u : 0.0;
    return dominant_eigenvalue(assemble_real(r, delta, ue, ub, uc));
}
}  // namespace

TEST_CASE("characteristic polynomial of a known diagonal") {
    Mat4d m;
    m(0, 0) = -1.0;
    m(1, 1) = -2.0;
    m(2, 2) = -3.0;
    m(3, 3) = 0.0;
    const auto a = char_poly(m);
    // z (z+1)(z+2)(z+3) = z^4 + 6 z^3 + 11 z^2 + 6 z
    CHECK(a[0] == doctest::Approx(0.0));
    CHECK(a[1] == doctest::Approx(6.0));
    CHECK(a[2] == doctest::Approx(11.0));
    CHECK(a[3] == doctest::Approx(6.0));
    CHECK(a[4] == doctest::Approx(1.0));
}

TEST_CASE("untilted generator has a zero mode in its coefficients") {
    const auto g = build_full(fig_params(), weights_sinusoidal(0.8, 0.2), {});
    const auto pc = char_poly_coeffs(g);
    CHECK(std::abs(pc.a[4]) == doctest::Approx(1.0));
    CHECK(std::abs(pc.a[0]) < 1e-10);
    CHECK(std::abs(pc.a[1]) > 1.0);  // single zero mode only
}

TEST_CASE("steady state normalizes and balances detailed rates") {
    SystemParams p = fig_params();
    p.t_e = p.t_b = p.t_c = 0.15;  // common bath temperature
    const Vec4 rho = steady_state(p, weights_unmodulated());
    double sum = 0.0;
    for (double x : rho) {
        CHECK(x >= -1e-12);
        sum += x;
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-10));
    // each channel balances: population ratio follows the rate ratio
    const RateSet r = full_rates(p, weights_unmodulated());
    CHECK(rho[0] / rho[3] == doctest::Approx(r.e_up / r.e_dn).epsilon(1e-8));
    CHECK(rho[0] / rho[1] == doctest::Approx(r.c_up / r.c_dn).epsilon(1e-8));
    CHECK(rho[0] / rho[2] == doctest::Approx(r.b_up / r.b_dn).epsilon(1e-8));
}

TEST_CASE("steady state agrees with long-time propagation") {
    const SystemParams p = fig_params(0.1);
    const Mat4d L = assemble_untilted(full_rates(p, weights_unmodulated()), p.delta);
    const Vec4 rho = steady_state(L);
    const Mat4d E = expm(L * 1e4);
    const Vec4 rho0{1.0, 0.0, 0.0, 0.0};
    for (int r = 0; r < 4; ++r) {
        double v = 0.0;
        for (int c = 0; c < 4; ++c) v += E(r, c) * rho0[c];
        CHECK(v == doctest::Approx(rho[r]).epsilon(1e-8));
    }
}

TEST_CASE("steady state rejects an extra zero mode") {
    Mat4d zero{};
    CHECK_THROWS_AS(steady_state(zero), std::runtime_error);
}

TEST_CASE("equilibrium currents vanish, noise does not") {
    SystemParams p = fig_params();
    p.t_e = p.t_b = p.t_c = 0.1;
    for (Bath b : {Bath::Emitter, Bath::Base, Bath::Collector}) {
        const auto mv = mean_and_variance(p, weights_unmodulated(), b);
        CHECK(std::abs(mv.mean) < 1e-12 * p.delta * p.delta);
        CHECK(mv.variance > 0.0);
    }
}

TEST_CASE("means conserve energy and match the closed form") {
    const SystemParams p = fig_params(0.1);
    const auto s = weights_unmodulated();
    const CumulantSet c = cumulant_set(p, s);
    CHECK(c.conservation < 1e-8);
    const Currents ref = currents_exact_lowT(closed_form_inputs(p, s));
    CHECK(c.mean[0] == doctest::Approx(ref.e).epsilon(5e-2));
    CHECK(c.mean[0] == doctest::Approx(ref.e).epsilon(1e-2));  // measured 6e-3
    CHECK(c.mean[1] == doctest::Approx(ref.b).epsilon(1e-2));
    CHECK(c.mean[2] == doctest::Approx(ref.c).epsilon(1e-2));
}

TEST_CASE("variance ratios near the cold operating point") {
    const SystemParams p = fig_params(0.1);
    const CumulantSet c = cumulant_set(p, weights_unmodulated());
    CHECK(std::abs(c.fano[0]) == doctest::Approx(1.0).epsilon(5e-2));
    CHECK(std::abs(c.fano[1]) == doctest::Approx(2.0).epsilon(5e-2));
    CHECK(std::abs(c.fano[2]) == doctest::Approx(1.0).epsilon(5e-2));
}

TEST_CASE("variance matches the eigenvalue oracle") {
    const SystemParams p = fig_params(0.1);
    const auto s = weights_unmodulated();
    const RateSet r = full_rates(p, s);
    for (Bath b : {Bath::Emitter, Bath::Base, Bath::Collector}) {
        const auto mv = mean_and_variance(p, s, b);
        auto d2 = [&](double h) {
            return (dominant_real(r, p.delta, b, h) - 2.0 * dominant_real(r, p.delta, b, 0.0) +
                    dominant_real(r, p.delta, b, -h)) /
                   (h * h);
        };
        const double h = 0.04;
        const double v1 = (4.0 * d2(h / 2) - d2(h)) / 3.0;
        const double v2 = (4.0 * d2(h / 4) - d2(h / 2)) / 3.0;
        const double var_eig = (16.0 * v2 - v1) / 15.0;
        CHECK(mv.variance == doctest::Approx(var_eig).epsilon(1e-6));
    }
}

TEST_CASE("finite-difference scheme reproduces the exact derivatives") {
    const SystemParams p = fig_params(0.1);
    const auto s = weights_sinusoidal(0.8, 0.2);
    DerivativeOptions fd;
    fd.scheme = DerivativeScheme::FiniteDifference;
    for (Bath b : {Bath::Emitter, Bath::Base, Bath::Collector}) {
        const auto jet = mean_and_variance(p, s, b);
        const auto num = mean_and_variance(p, s, b, fd);
        CHECK(num.mean == doctest::Approx(jet.mean).epsilon(1e-7));
        CHECK(num.variance == doctest::Approx(jet.variance).epsilon(1e-4));
    }
    // halving the mean step leaves the mean unchanged at the stated level
    DerivativeOptions half = fd;
    half.fd_mean_step /= 2.0;
    const double j1 = mean_current(p, s, Bath::Emitter, fd);
    const double j2 = mean_current(p, s, Bath::Emitter, half);
    CHECK(j1 == doctest::Approx(j2).epsilon(1e-7));
}

TEST_CASE("dominant eigenvalue at zero tilt and its expansion") {
    const SystemParams p = fig_params(0.1);
    const auto s = weights_sinusoidal(0.8, 0.2);
    const TiltedGenerator g = build_full(p, s, {});
    const auto lam0 = dominant_eigenvalue(g);
    double mx = 0.0;
    for (const auto& z : g.matrix.a) mx = std::max(mx, std::abs(z));
    CHECK(std::abs(lam0) < 1e-10 * mx);
    for (const auto& ev : eigenvalues(g.matrix)) CHECK(ev.real() < 1e-10 * mx);

    // slope of lam(u) (Richardson) equals the mean current
    const RateSet r = full_rates(p, s);
    for (Bath b : {Bath::Emitter, Bath::Collector}) {
        auto slope = [&](double u) {
            return (dominant_real(r, p.delta, b, u) - dominant_real(r, p.delta, b, -u)) /
                   (2.0 * u);
        };
        const double sr = (4.0 * slope(0.005) - slope(0.01)) / 3.0;
        CHECK(sr == doctest::Approx(mean_current(p, s, b)).epsilon(1e-6));
    }
}

TEST_CASE("implicit differentiation identities hold") {
    const SystemParams p = fig_params(0.1);
    const auto s = weights_sinusoidal(0.8, 0.2);
    const RateSet r = full_rates(p, s);
    const Bath b = Bath::Emitter;
    auto coeff = [&](double u, int idx) {
        return char_poly(assemble_real(r, p.delta, u, 0.0, 0.0))[idx];
    };
    const double h = 0.02;
    auto d1 = [&](int idx) {
        const double c1 = (coeff(h, idx) - coeff(-h, idx)) / (2.0 * h);
        const double c2 = (coeff(h / 2, idx) - coeff(-h / 2, idx)) / h;
        return (4.0 * c2 - c1) / 3.0;
    };
    auto d2_0 = [&]() {
        auto dd = [&](double hh) {
            return (coeff(hh, 0) - 2.0 * coeff(0.0, 0) + coeff(-hh, 0)) / (hh * hh);
        };
        return (4.0 * dd(h / 2) - dd(h)) / 3.0;
    };
    const double a0_1 = d1(0), a1_1 = d1(1);
    const double a0_2 = d2_0();
    const double a1_0 = coeff(0.0, 1), a2_0 = coeff(0.0, 2);
    const auto mv = mean_and_variance(p, s, b);
    const double scale = std::abs(a1_0);
    CHECK(std::abs(a0_1 + a1_0 * mv.mean) < 1e-8 * scale);
    CHECK(std::abs(a0_2 + 2.0 * a1_1 * mv.mean + a1_0 * mv.variance +
                   2.0 * a2_0 * mv.mean * mv.mean) < 1e-8 * scale);
}

TEST_CASE("finite-time generating function") {
    const SystemParams p = fig_params(0.118);
    const auto s = weights_sinusoidal(0.8, 0.2);
    const RateSet r = full_rates(p, s);
    const Vec4 uniform{0.25, 0.25, 0.25, 0.25};

    const Mat4d L0 = assemble_untilted(r, p.delta);
    CHECK(finite_time_cgf(L0, uniform, 0.0) == doctest::Approx(0.0));
    CHECK(std::abs(finite_time_cgf(L0, uniform, 37.0)) < 1e-12);
    CHECK_THROWS_AS(finite_time_cgf(L0, uniform, -1.0), std::domain_error);

    const double u = 0.01;
    const Mat4d Lt = assemble_real(r, p.delta, u, 0.0, 0.0);
    const double lam = dominant_eigenvalue(Lt);
    const double t1 = 50.0 / p.delta, t2 = 100.0 / p.delta;
    const double slope =
        (finite_time_cgf(Lt, uniform, t2) - finite_time_cgf(Lt, uniform, t1)) / (t2 - t1);
    CHECK(slope == doctest::Approx(lam).epsilon(1e-4));

    // the long-time slope does not depend on the initial state
    const Vec4 corner{1.0, 0.0, 0.0, 0.0};
    const double slope2 =
        (finite_time_cgf(Lt, corner, t2) - finite_time_cgf(Lt, corner, t1)) / (t2 - t1);
    CHECK(slope2 == doctest::Approx(slope).epsilon(1e-9));
}

TEST_CASE("matrix exponential basics") {
    Mat4d m;  // nilpotent upper shift: e^m = I + m + m^2/2 + m^3/6
    m(0, 1) = 1.0;
    m(1, 2) = 1.0;
    m(2, 3) = 1.0;
    const Mat4d e = expm(m);
    CHECK(e(0, 0) == doctest::Approx(1.0));
    CHECK(e(0, 1) == doctest::Approx(1.0));
    CHECK(e(0, 2) == doctest::Approx(0.5));
    CHECK(e(0, 3) == doctest::Approx(1.0 / 6.0).epsilon(1e-13));
    CHECK(e(3, 0) == doctest::Approx(0.0));

    // scaling path: diag entries exponentiate
    Mat4d d;
    d(0, 0) = -30.0;
    d(1, 1) = 2.0;
    d(2, 2) = -1.0;
    d(3, 3) = 0.5;
    const Mat4d ed = expm(d);
    CHECK(ed(1, 1) == doctest::Approx(std::exp(2.0)).epsilon(1e-12));
    CHECK(ed(2, 2) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
}

TEST_CASE("fano ratios flag undefined means") {
    SystemParams p = fig_params();
    p.t_e = p.t_b = p.t_c = 0.12;
    const CumulantSet c = cumulant_set(p, weights_unmodulated());
    for (int b = 0; b < 3; ++b) {
        CHECK_FALSE(c.fano_defined[b]);
        CHECK(std::isnan(c.fano[b]));
    }
}

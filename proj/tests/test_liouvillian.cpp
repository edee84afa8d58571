#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "fqt/cumulants.hpp"
#include "fqt/liouvillian.hpp"
#include "fqt/rng.hpp"

using namespace fqt;

namespace {
SystemParams fig_params(double t_b = 0.118) {
    SystemParams p;
    p.delta = 1.0;
    p.t_e = 0.2;
    p.t_b = t_b;
    p.t_c = 0.02;
    p.kappa = 1.0;
    return p;
}
}  // namespace

TEST_CASE("auxiliary rates, static limit") {
    const auto r = aux_rates(fig_params(0.118), weights_unmodulated());
    CHECK(r.f_rate == doctest::Approx(0.0));
    CHECK(r.b_rate == doctest::Approx(0.118));
    CHECK(r.r_of_nu == doctest::Approx(1.0));
    CHECK(r.r_of_0 == doctest::Approx(1.0));
    CHECK(r.q_diag == doctest::Approx(-4.0));
}

TEST_CASE("auxiliary rates, sinusoidal point") {
    const auto r = aux_rates(fig_params(0.118), weights_sinusoidal(0.8, 0.2));
    // nu P1 coth(nu / 2 T_B), recomputed independently
    const double expected = 0.2 * 0.16 / std::tanh(0.2 / (2.0 * 0.118));
    CHECK(r.f_rate == doctest::Approx(expected).epsilon(1e-14));
    CHECK(r.f_rate == doctest::Approx(0.0463943647352).epsilon(1e-10));
    CHECK(r.b_rate == doctest::Approx(0.68 * 0.118 + r.f_rate).epsilon(1e-14));
}

TEST_CASE("auxiliary rates, pi-flip has no carrier contribution") {
    const auto r = aux_rates(fig_params(), weights_pi_flip(0.25));
    CHECK(r.b_rate == doctest::Approx(r.f_rate).epsilon(1e-15));
    CHECK(r.r_of_0 == doctest::Approx(8.0 / (M_PI * M_PI)).epsilon(1e-14));
}

TEST_CASE("auxiliary rates reject wide harmonic support") {
    const auto s = make_spectrum({{0, 0.6}, {2, 0.2}, {-2, 0.2}}, 0.1);
    CHECK_THROWS_AS(aux_rates(fig_params(), s), std::domain_error);
    CHECK_NOTHROW(full_rates(fig_params(), s));
}

TEST_CASE("zero-quantum channel equals the compact coth form") {
    // P0 T_B + P1 nu (2 n(nu) + 1) summed over the +-1 sidebands
    for (double nu : {0.05, 0.2, 0.45})
        for (double tb : {0.06, 0.118}) {
            const SystemParams p = fig_params(tb);
            const auto s = weights_sinusoidal(0.8, nu);
            const RateSet r = full_rates(p, s);
            const AuxRates a = aux_rates(p, s);
            CHECK(r.z_fw == doctest::Approx(a.b_rate).epsilon(1e-13));
            CHECK(r.z_bw == doctest::Approx(a.b_rate).epsilon(1e-13));
        }
}

TEST_CASE("column sums vanish for both builders") {
    for (bool low : {false, true})
        for (double tb : {0.06, 0.118})
            for (int proto = 0; proto < 3; ++proto) {
                const SystemParams p = fig_params(tb);
                const HarmonicSpectrum s = proto == 0   ? weights_unmodulated()
                                           : proto == 1 ? weights_sinusoidal(0.8, 0.2)
                                                        : weights_pi_flip(0.3);
                const TiltedGenerator g = low ? build_low_t(p, s, {}) : build_full(p, s, {});
                double mx = 0.0;
                for (const auto& z : g.matrix.a) mx = std::max(mx, std::abs(z));
                CHECK(max_column_sum(g.matrix) < 1e-13 * mx);
                for (const auto& z : g.matrix.a) CHECK(z.imag() == 0.0);
            }
}

TEST_CASE("full builder entries carry occupancies and counting phases") {
    SystemParams p = fig_params(0.1);
    p.kappa = 2.0;
    CountingField chi;
    chi.chi_c = 0.3;
    const TiltedGenerator g = build_full(p, weights_unmodulated(), chi);
    const std::complex<double> expected =
        p.kappa * p.delta * thermal_occupancy(p.delta, p.t_c) *
        std::polar(1.0, p.delta * 0.3);
    CHECK(std::abs(g.matrix(0, 1) - expected) < 1e-15);
    // emission partner on the conjugate phase
    const std::complex<double> em = p.kappa * p.delta *
                                    (1.0 + thermal_occupancy(p.delta, p.t_c)) *
                                    std::polar(1.0, -p.delta * 0.3);
    CHECK(std::abs(g.matrix(1, 0) - em) < 1e-15);
}

TEST_CASE("low-temperature builder matches its printed entries") {
    const SystemParams p = fig_params(0.118);
    const auto s = weights_sinusoidal(0.8, 0.2);
    const AuxRates a = aux_rates(p, s);
    const TiltedGenerator g = build_low_t(p, s, {});
    const double gc = std::exp(-1.0 / 0.02);
    CHECK(g.matrix(1, 1).real() ==
          doctest::Approx(-a.b_rate - p.delta * gc - p.delta).epsilon(1e-14));
    CHECK(g.matrix(3, 1).real() == doctest::Approx(a.b_rate).epsilon(1e-14));
    CHECK(g.matrix(1, 3).real() == doctest::Approx(a.b_rate).epsilon(1e-14));
    CHECK(g.matrix(0, 0).real() == doctest::Approx(a.q_diag).epsilon(1e-14));
    // base tilt of pi/(2 delta) flips the two-quantum phases
    CountingField chi;
    chi.chi_b = M_PI / (2.0 * p.delta);
    const TiltedGenerator gt = build_low_t(p, s, chi);
    CHECK(gt.matrix(0, 2).real() == doctest::Approx(-g.matrix(0, 2).real()).epsilon(1e-12));
    CHECK(std::abs(gt.matrix(0, 2).imag()) < 1e-15);
}

TEST_CASE("tilt symmetry: conjugation flips the counting field") {
    const SystemParams p = fig_params();
    const auto s = weights_sinusoidal(0.8, 0.2);
    const Mat4c a = build_full(p, s, {0.4, -0.7, 0.2, false}).matrix;
    const Mat4c b = build_full(p, s, {-0.4, 0.7, -0.2, false}).matrix;
    for (int i = 0; i < 16; ++i) CHECK(std::abs(std::conj(a.a[i]) - b.a[i]) < 1e-14);
}

TEST_CASE("real tilts continue the complex phases") {
    const SystemParams p = fig_params();
    const auto s = weights_sinusoidal(0.8, 0.2);
    SplitMix64 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        const double ue = rng.uniform(-0.5, 0.5);
        const double ub = rng.uniform(-0.5, 0.5);
        const double uc = rng.uniform(-0.5, 0.5);
        const Mat4c lc = build_full(p, s, {ue, ub, uc, true}).matrix;
        const Mat4d lr = assemble_real(full_rates(p, s), p.delta, ue, ub, uc);
        for (int i = 0; i < 16; ++i) {
            CHECK(lc.a[i].imag() == 0.0);
            CHECK(lc.a[i].real() == doctest::Approx(lr.a[i]).epsilon(1e-13));
        }
    }
}

TEST_CASE("builders agree entrywise in the cold regime") {
    const SystemParams p = fig_params(0.118);
    const auto s = weights_sinusoidal(0.8, 0.2);
    const Mat4c f = build_full(p, s, {}).matrix;
    const Mat4c l = build_low_t(p, s, {}).matrix;
    double mx = 0.0, diff = 0.0;
    for (int i = 0; i < 16; ++i) {
        mx = std::max(mx, std::abs(f.a[i]));
        diff = std::max(diff, std::abs(f.a[i] - l.a[i]));
    }
    // dominated by the emission factors (1 + n_E) vs 1; measured 1.7e-3
    CHECK(diff / mx < 2.5e-3);
    CHECK(diff / mx > 1e-4);
}

TEST_CASE("builders agree on mean currents to one percent in the cold regime") {
    const SystemParams p = fig_params(0.118);
    const auto s = weights_sinusoidal(0.8, 0.2);
    DerivativeOptions full, low;
    low.low_t_builder = true;
    for (Bath b : {Bath::Emitter, Bath::Base, Bath::Collector}) {
        const double jf = mean_current(p, s, b, full);
        const double jl = mean_current(p, s, b, low);
        CHECK(jf == doctest::Approx(jl).epsilon(1e-2));
    }
}

TEST_CASE("zero base temperature limit") {
    SystemParams p = fig_params();
    p.zero_tb = true;
    const auto s = weights_sinusoidal(0.8, 0.2);
    const RateSet r = full_rates(p, s);
    CHECK(r.b_up == doctest::Approx(0.0));
    CHECK(r.z_fw == doctest::Approx(0.2 * 0.16).epsilon(1e-14));  // nu P1
    CHECK(r.z_bw == doctest::Approx(0.2 * 0.16).epsilon(1e-14));
    const auto a = aux_rates(p, s);
    CHECK(a.f_rate == doctest::Approx(0.2 * 0.16));
    CHECK(a.b_rate == doctest::Approx(a.f_rate));
    const auto lr = low_t_rates(p, s);
    CHECK(lr.b_up == doctest::Approx(0.0));
}

TEST_CASE("sideband positivity is enforced") {
    SystemParams p = fig_params();
    const auto s = weights_sinusoidal(0.8, 2.5);  // 2 delta - nu < 0
    CHECK_THROWS_AS(full_rates(p, s), std::domain_error);
    CHECK_THROWS_AS(build_low_t(p, s, {}), std::domain_error);
}

TEST_CASE("exact sideband counting phases differ only when tilted") {
    const SystemParams p = fig_params(0.118);
    const auto s = weights_sinusoidal(0.8, 0.3);
    const Mat4c approx0 = build_full(p, s, {}, false).matrix;
    const Mat4c exact0 = build_full(p, s, {}, true).matrix;
    for (int i = 0; i < 16; ++i) CHECK(std::abs(approx0.a[i] - exact0.a[i]) < 1e-14);
    CountingField chi;
    chi.chi_b = 0.4;
    const Mat4c approx1 = build_full(p, s, chi, false).matrix;
    const Mat4c exact1 = build_full(p, s, chi, true).matrix;
    CHECK(std::abs(approx1(0, 2) - exact1(0, 2)) > 1e-12);
}

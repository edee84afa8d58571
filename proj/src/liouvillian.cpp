#include "fqt/liouvillian.hpp"

#include <cmath>

namespace fqt {

namespace {

void check_sidebands(const SystemParams& p, const HarmonicSpectrum& s) {
    for (const auto& e : s.weights)
        if (e.p != 0.0 && !(2.0 * p.delta + e.q * s.nu > 0.0))
            throw std::domain_error("generator: sideband frequency 2*delta + q*nu must stay positive");
}

}  // namespace

AuxRates aux_rates(const SystemParams& p, const HarmonicSpectrum& s) {
    p.validate();
    if (s.max_abs_q() > 1)
        throw std::domain_error(
            "aux_rates: harmonic support beyond |q| = 1; use the full generator builder");
    const double p0 = s.p(0);
    const double p1 = s.p(1);
    const double nu = s.nu;
    const double d = p.delta;
    AuxRates r{};
    if (p.zero_tb) {
        r.f_rate = nu * p1;  // coth -> 1
        r.b_rate = r.f_rate;
        r.r_of_nu = std::numeric_limits<double>::infinity();  // unused in this limit
    } else {
        if (p1 == 0.0)
            r.f_rate = 0.0;
        else if (nu == 0.0)
            r.f_rate = 2.0 * p1 * p.t_b;  // continuous nu->0 limit of nu P1 coth(nu/2T)
        else
            r.f_rate = nu * p1 / std::tanh(nu / (2.0 * p.t_b));
        r.b_rate = p0 * p.t_b + r.f_rate;
        double x = nu / p.t_b;
        r.r_of_nu = (x > 700.0)
                        ? std::numeric_limits<double>::infinity()
                        : p0 + p1 * (nu / (2.0 * d) + 1.0) * std::exp(-x) +
                              p1 * (1.0 - nu / (2.0 * d)) * std::exp(x);
    }
    r.r_of_0 = p0 + 2.0 * p1;
    r.q_diag = -2.0 * d * (1.0 + r.r_of_0);
    return r;
}

RateSet full_rates(const SystemParams& p, const HarmonicSpectrum& s) {
    p.validate();
    check_sidebands(p, s);
    const double d = p.delta;
    const double k = p.kappa;
    RateSet r{};
    r.e_up = k * d * thermal_occupancy(d, p.t_e);
    r.e_dn = k * d * (1.0 + thermal_occupancy(d, p.t_e));
    r.c_up = k * d * thermal_occupancy(d, p.t_c);
    r.c_dn = k * d * (1.0 + thermal_occupancy(d, p.t_c));
    for (const auto& e : s.weights) {
        if (e.p == 0.0) continue;
        const double w = 2.0 * d + e.q * s.nu;
        const double nb = p.zero_tb ? 0.0 : thermal_occupancy(w, p.t_b);
        r.b_dn += k * e.p * w * (1.0 + nb);
        r.b_up += k * e.p * w * nb;
        if (e.q != 0) {
            const double wq = e.q * s.nu;
            if (p.zero_tb) {
                r.z_fw += k * e.p * (wq > 0.0 ? wq : 0.0);
                r.z_bw += k * e.p * (wq < 0.0 ? -wq : 0.0);
            } else {
                // G(q nu) forward, G(-q nu) backward
                r.z_fw += k * e.p * wq * (1.0 + thermal_occupancy(wq, p.t_b));
                r.z_bw += k * e.p * wq * thermal_occupancy(wq, p.t_b);
            }
        }
    }
    if (!p.zero_tb) {
        r.z_fw += k * s.p(0) * p.t_b;
        r.z_bw += k * s.p(0) * p.t_b;
    }
    return r;
}

RateSet low_t_rates(const SystemParams& p, const HarmonicSpectrum& s) {
    const AuxRates ar = aux_rates(p, s);
    check_sidebands(p, s);
    const double d = p.delta;
    const double k = p.kappa;
    const double m = std::exp(-d / p.t_e);
    const double g = std::exp(-d / p.t_c);
    RateSet r{};
    r.e_up = k * d * m;
    r.e_dn = k * d;
    r.c_up = k * d * g;
    r.c_dn = k * d;
    r.b_dn = k * 2.0 * d * ar.r_of_0;
    if (p.zero_tb) {
        r.b_up = 0.0;
    } else {
        // 2 d R(nu) e^{-2d/T_B} assembled overflow-free, term by term
        const double p0 = s.p(0), p1 = s.p(1), nu = s.nu;
        r.b_up = k * 2.0 * d *
                 (p0 * std::exp(-2.0 * d / p.t_b) +
                  p1 * (nu / (2.0 * d) + 1.0) * std::exp(-(2.0 * d + nu) / p.t_b) +
                  p1 * (1.0 - nu / (2.0 * d)) * std::exp(-(2.0 * d - nu) / p.t_b));
    }
    r.z_fw = k * ar.b_rate;
    r.z_bw = k * ar.b_rate;
    return r;
}

namespace {

using cd = std::complex<double>;

// the three per-bath phase factors (absorption direction); real tilts give
// real factors e^{Omega u}
struct Phases {
    cd e, b, c;  // e^{i Delta chi_E}, e^{2 i Delta chi_B}, e^{i Delta chi_C}
};

Phases phases_from(const CountingField& chi, double delta) {
    if (chi.real_tilt)
        return {cd(std::exp(delta * chi.chi_e), 0.0), cd(std::exp(2.0 * delta * chi.chi_b), 0.0),
                cd(std::exp(delta * chi.chi_c), 0.0)};
    return {std::polar(1.0, delta * chi.chi_e), std::polar(1.0, 2.0 * delta * chi.chi_b),
            std::polar(1.0, delta * chi.chi_c)};
}

cd inv(const cd& z) { return 1.0 / z; }

Mat4c assemble_complex(const RateSet& r, const Phases& ph) {
    Mat4c L;
    const cd te = ph.e, tb = ph.b, tc = ph.c;
    L(1, 0) = r.c_dn * inv(tc);
    L(2, 0) = r.b_dn * inv(tb);
    L(3, 0) = r.e_dn * inv(te);
    L(0, 0) = -(r.c_dn + r.b_dn + r.e_dn);
    L(0, 1) = r.c_up * tc;
    L(2, 1) = r.e_dn * inv(te);
    L(3, 1) = r.z_fw;
    L(1, 1) = -(r.c_up + r.e_dn + r.z_fw);
    L(0, 2) = r.b_up * tb;
    L(1, 2) = r.e_up * te;
    L(3, 2) = r.c_up * tc;
    L(2, 2) = -(r.b_up + r.e_up + r.c_up);
    L(0, 3) = r.e_up * te;
    L(1, 3) = r.z_bw;
    L(2, 3) = r.c_dn * inv(tc);
    L(3, 3) = -(r.e_up + r.z_bw + r.c_dn);
    return L;
}

}  // namespace

TiltedGenerator build_full(const SystemParams& p, const HarmonicSpectrum& s,
                           const CountingField& chi, bool exact_base_phases) {
    RateSet r = full_rates(p, s);
    Mat4c L;
    if (!exact_base_phases) {
        L = assemble_complex(r, phases_from(chi, p.delta));
    } else {
        // keep e^{+-i (2 Delta + q nu) chi_B} per sideband; only meaningful for
        // the complex representation
        Phases ph = phases_from(chi, p.delta);
        RateSet no_base = r;
        no_base.b_up = no_base.b_dn = 0.0;
        L = assemble_complex(no_base, ph);
        for (const auto& e : s.weights) {
            if (e.p == 0.0) continue;
            const double w = 2.0 * p.delta + e.q * s.nu;
            const double nb = p.zero_tb ? 0.0 : thermal_occupancy(w, p.t_b);
            cd f = chi.real_tilt ? cd(std::exp(w * chi.chi_b), 0.0) : std::polar(1.0, w * chi.chi_b);
            L(0, 2) += p.kappa * e.p * w * nb * f;
            L(2, 0) += p.kappa * e.p * w * (1.0 + nb) / f;
        }
        // the diagonals balance the full outgoing rates regardless of phases
        L(0, 0) -= r.b_dn;
        L(2, 2) -= r.b_up;
    }
    return {L, p, s, chi};
}

TiltedGenerator build_low_t(const SystemParams& p, const HarmonicSpectrum& s,
                            const CountingField& chi) {
    RateSet r = low_t_rates(p, s);
    return {assemble_complex(r, phases_from(chi, p.delta)), p, s, chi};
}

Mat4d assemble_real(const RateSet& r, double delta, double u_e, double u_b, double u_c) {
    Mat4d L;
    const double te = std::exp(delta * u_e);
    const double tb = std::exp(2.0 * delta * u_b);
    const double tc = std::exp(delta * u_c);
    L(1, 0) = r.c_dn / tc;
    L(2, 0) = r.b_dn / tb;
    L(3, 0) = r.e_dn / te;
    L(0, 0) = -(r.c_dn + r.b_dn + r.e_dn);
    L(0, 1) = r.c_up * tc;
    L(2, 1) = r.e_dn / te;
    L(3, 1) = r.z_fw;
    L(1, 1) = -(r.c_up + r.e_dn + r.z_fw);
    L(0, 2) = r.b_up * tb;
    L(1, 2) = r.e_up * te;
    L(3, 2) = r.c_up * tc;
    L(2, 2) = -(r.b_up + r.e_up + r.c_up);
    L(0, 3) = r.e_up * te;
    L(1, 3) = r.z_bw;
    L(2, 3) = r.c_dn / tc;
    L(3, 3) = -(r.e_up + r.z_bw + r.c_dn);
    return L;
}

Mat4j assemble_jet(const RateSet& r, double delta, Bath bath) {
    Mat4d L0 = assemble_untilted(r, delta);
    Mat4j L;
    for (int i = 0; i < 16; ++i) L.a[static_cast<size_t>(i)] = Jet2(L0.a[static_cast<size_t>(i)]);
    const double c = (bath == Bath::Base) ? 2.0 * delta : delta;
    auto seed = [&](int i, int j, double sign) {
        L(i, j) = Jet2::scaled_exp(L0(i, j), sign * c);
    };
    switch (bath) {
        case Bath::Emitter:
            seed(0, 3, +1.0);
            seed(1, 2, +1.0);
            seed(3, 0, -1.0);
            seed(2, 1, -1.0);
            break;
        case Bath::Base:
            seed(0, 2, +1.0);
            seed(2, 0, -1.0);
            break;
        case Bath::Collector:
            seed(0, 1, +1.0);
            seed(3, 2, +1.0);
            seed(1, 0, -1.0);
            seed(2, 3, -1.0);
            break;
    }
    return L;
}

double max_column_sum(const Mat4c& m) {
    double v = 0.0;
    for (int c = 0; c < 4; ++c) {
        cd s = m(0, c) + m(1, c) + m(2, c) + m(3, c);
        v = std::max(v, std::abs(s));
    }
    return v;
}

double max_column_sum(const Mat4d& m) {
    double v = 0.0;
    for (int c = 0; c < 4; ++c)
        v = std::max(v, std::abs(m(0, c) + m(1, c) + m(2, c) + m(3, c)));
    return v;
}

}  // namespace fqt

#include "fqt/analysis.hpp"

#include <cmath>
#include <limits>

namespace fqt {

namespace {
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
}

ClosedFormInputs closed_form_inputs(const SystemParams& p, const HarmonicSpectrum& s) {
    ClosedFormInputs in{};
    in.m = std::exp(-p.delta / p.t_e);
    in.g_c = std::exp(-p.delta / p.t_c);
    in.h = p.zero_tb ? 0.0 : std::exp(-p.delta / p.t_b);
    in.aux = aux_rates(p, s);
    in.delta = p.delta;
    in.regime_ok = in.g_c < 0.1 * in.m && in.m < 0.1;
    return in;
}

namespace {

// h^2 R(nu) assembled overflow-free from the spectrum-level quantities: the
// divergent e^{+nu/T_B} tail of R is always paired with h^2.
double h2_r_nu(const ClosedFormInputs& in) {
    // R(nu) is finite in every regime we evaluate closed forms in; keep the
    // direct product but fall back to zero when h vanishes.
    if (in.h == 0.0) return 0.0;
    return in.h * in.h * in.aux.r_of_nu;
}

}  // namespace

Currents currents_exact_lowT(const ClosedFormInputs& in) {
    const double d = in.delta;
    const double m = in.m;
    const double b = in.aux.b_rate;
    const double r0 = in.aux.r_of_0;
    const double h2r = h2_r_nu(in);
    // denominator = A1 of the conserving generator / delta
    const double w = b * ((m + 2.0) * (m + 2.0) + 2.0 * r0 * (3.0 * m + 2.0) +
                          2.0 * h2r * (m + 6.0)) +
                     d * ((m + 1.0) * ((2.0 * r0 + 1.0) * m + 2.0 * r0 + 2.0) +
                          2.0 * h2r * (2.0 * m + 3.0));
    const double x = d * w;
    if (!(std::abs(x) > 0.0))
        throw std::runtime_error("currents_exact_lowT: singular normalization");
    const double d3 = d * d * d;
    const double ne = b * m * (4.0 * m * r0 + m + 2.0 * r0 + 2.0) -
                      2.0 * h2r * (b * (4.0 - m) + d * (m + 2.0));
    const double nb = 4.0 * (h2r * (4.0 * b + d * (m + 2.0)) - b * m * m * r0);
    const double nc = -(b * m * (m + 2.0 * r0 + 2.0) + 2.0 * h2r * (b * (m + 4.0) + d * (m + 2.0)));
    return {d3 * ne / x, d3 * nb / x, d3 * nc / x};
}

Currents currents_approx(const ClosedFormInputs& in) {
    const double d = in.delta;
    const double m = in.m;
    const double b = in.aux.b_rate;
    const double r0 = in.aux.r_of_0;
    const double h2r = h2_r_nu(in);
    const double y1 = 2.0 * (r0 + 1.0) * (-b * b + (b + d) * (b + d));
    if (!(std::abs(y1) > 0.0)) throw std::runtime_error("currents_approx: singular normalization");
    const double m2e = m * m;  // e^{-2 delta / T_E}
    const double psi = 3.0 * h2r - r0 * m2e;
    const double d3 = d * d * d;
    Currents j;
    j.e = (d3 / y1) * b * m * (m * (4.0 * r0 + 1.0) + 2.0 * (r0 + 1.0));
    j.b = (4.0 * d3 / y1) * (b * psi + h2r * (b + 2.0 * d));
    j.c = -(d3 / y1) * b * m * (m + 2.0 * r0 + 2.0);
    return j;
}

Currents currents_unmodulated(double t_e, double t_b, double t_c, double delta) {
    if (!(t_e > 0.0) || !(t_b > 0.0) || !(t_c > 0.0))
        throw std::domain_error("currents_unmodulated: temperatures must be > 0");
    const double y2 = 1.0 + t_b / delta - (t_b / delta) * (t_b / delta);
    const double m = std::exp(-delta / t_e);
    Currents j;
    j.e = delta * delta / y2 * (t_b / delta) * m;
    j.b = delta * delta / y2 * (t_b / delta) *
          (3.0 * std::exp(-2.0 * delta / t_b) - std::exp(-2.0 * delta / t_e));
    j.c = -j.e;
    return j;
}

Currents currents_zero_TB(double t_e, double nu, double p1, const HarmonicSpectrum& s,
                          double delta) {
    const double r0 = s.p(0) + 2.0 * s.p(1);
    const double m = std::exp(-delta / t_e);
    const double y3 = 2.0 * (r0 + 1.0) * (2.0 * nu * p1 + delta);
    Currents j;
    j.e = delta / y3 * nu * p1 * m * (m * (4.0 * r0 + 1.0) + 2.0 * (r0 + 1.0));
    j.b = -(4.0 * delta / y3) * m * m * r0 * nu * p1;
    j.c = -(delta / y3) * nu * p1 * m * (m + 2.0 * (1.0 + r0));
    return j;
}

std::vector<BetaPoint> amplification_numeric(const std::vector<SweepSample>& sweep,
                                             double threshold) {
    const size_t n = sweep.size();
    if (n < 3) throw std::domain_error("amplification_numeric: need at least 3 sweep points");
    for (size_t i = 1; i < n; ++i)
        if (!(sweep[i].var > sweep[i - 1].var))
            throw std::domain_error("amplification_numeric: sweep must be strictly increasing");

    std::vector<double> de(n, kNan), db(n, kNan), dc(n, kNan);
    for (size_t i = 1; i + 1 < n; ++i) {
        const double dv = sweep[i + 1].var - sweep[i - 1].var;
        de[i] = (sweep[i + 1].j_e - sweep[i - 1].j_e) / dv;
        db[i] = (sweep[i + 1].j_b - sweep[i - 1].j_b) / dv;
        dc[i] = (sweep[i + 1].j_c - sweep[i - 1].j_c) / dv;
    }
    std::vector<BetaPoint> out(n, BetaPoint{kNan, kNan, false});
    const double inf = std::numeric_limits<double>::infinity();
    for (size_t i = 1; i + 1 < n; ++i) {
        bool small = std::abs(db[i]) < threshold * std::max(std::abs(dc[i]), std::abs(de[i]));
        bool flip = (i >= 2 && std::isfinite(db[i - 1]) && db[i - 1] * db[i] < 0.0) ||
                    (i + 2 < n && std::isfinite(db[i + 1]) && db[i + 1] * db[i] < 0.0);
        if (small || flip) {
            out[i].diverged = true;
            out[i].beta_plus = ((dc[i] > 0.0) == (db[i] > 0.0)) ? inf : -inf;
            out[i].beta_minus = ((de[i] > 0.0) == (db[i] > 0.0)) ? inf : -inf;
        } else {
            out[i].beta_plus = dc[i] / db[i];
            out[i].beta_minus = de[i] / db[i];
        }
    }
    return out;
}

BetaPoint amplification_analytic(double m, double r0) {
    if (!(m > 0.0) || !(r0 > 0.0))
        throw std::domain_error("amplification_analytic: m and r0 must be > 0");
    BetaPoint b{};
    b.beta_plus = (m + 2.0 * r0 + 2.0) / (4.0 * m * r0);
    b.beta_minus = -(4.0 * m * r0 + m + 2.0 * r0 + 2.0) / (4.0 * m * r0);
    b.diverged = false;
    return b;
}

FanoValue fano(const CumulantSet& c, Bath alpha) {
    const int i = static_cast<int>(alpha);
    return {c.fano[i], c.fano_defined[i]};
}

FanoTriple fano_closed_form(const ClosedFormInputs& in, const Currents& j) {
    const double d = in.delta;
    const double m = in.m;
    const double b = in.aux.b_rate;
    const double r0 = in.aux.r_of_0;
    const double q = in.aux.q_diag;
    // shared rational correction; numerator/denominator from the conserving
    // generator (the zero-quantum channel rate appears throughout)
    const double fn = q * (b + b + 2.0 * d * (m + 1.0)) + b * b - b * (d + b + 2.0 * d * m) -
                      d * (d + (m + 1.0) * (b + d * m));
    const double fd = q * (-b * b + b * (d + b + 2.0 * d * m) + d * (m + 1.0) * (d + b + d * m)) +
                      d * m * (b * b - b * (b + d * (m - 2.0)) + d * d * (m + 1.0));
    if (fd == 0.0) throw std::runtime_error("fano_closed_form: singular correction denominator");
    const double f = fn / (fd * fd);
    const double de = q - d * m * (1.0 + 4.0 * r0);
    FanoTriple out;
    out.e = d - (4.0 * d * d * m * r0 + 4.0 * j.e) / de + 2.0 * b * m * d * d * d * de * f;
    out.b = -2.0 * d + 8.0 * b * m * m * d * d * d * d * r0 * f;
    out.c = -d + 2.0 * b * m * d * d * d * (-q + m * d) * f + 4.0 * j.c / (-q + m * d);
    return out;
}

double entropy_rate(const Currents& j, double t_e, double t_b, double t_c,
                    SigmaConvention conv) {
    const double s = j.e / t_e + j.b / t_b + j.c / t_c;
    return conv == SigmaConvention::SumOverT ? s : -s;
}

double fano_bound(const Currents& j, double t_e, double t_b, double t_c, double delta,
                  Bath alpha) {
    const double sigma_ep = std::abs(entropy_rate(j, t_e, t_b, t_c));
    const double ja = alpha == Bath::Emitter ? j.e : alpha == Bath::Base ? j.b : j.c;
    if (ja == 0.0) return kNan;
    const double omega = alpha == Bath::Base ? 2.0 * delta : delta;
    return omega / std::tanh(omega * sigma_ep / (2.0 * ja));
}

TransistorReport make_report(const CumulantSet& c, const BetaPoint& beta, double t_e,
                             double t_b, double t_c, double delta, SigmaConvention conv) {
    const Currents j{c.mean[0], c.mean[1], c.mean[2]};
    TransistorReport r{};
    r.beta_plus = beta.beta_plus;
    r.beta_minus = beta.beta_minus;
    r.fano_e = c.fano[0];
    r.fano_b = c.fano[1];
    r.fano_c = c.fano[2];
    r.bound_e = fano_bound(j, t_e, t_b, t_c, delta, Bath::Emitter);
    r.bound_b = fano_bound(j, t_e, t_b, t_c, delta, Bath::Base);
    r.bound_c = fano_bound(j, t_e, t_b, t_c, delta, Bath::Collector);
    r.sigma = entropy_rate(j, t_e, t_b, t_c, conv);
    return r;
}

}  // namespace fqt

#include "fqt/cumulants.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fqt {

PolyCoeffs char_poly_coeffs(const TiltedGenerator& g) {
    for (const auto& z : g.matrix.a)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw std::runtime_error("char_poly_coeffs: non-finite generator entry");
    PolyCoeffs pc;
    pc.a = char_poly(g.matrix);
    return pc;
}

namespace {

RateSet rates_for(const SystemParams& p, const HarmonicSpectrum& s, bool low_t) {
    return low_t ? low_t_rates(p, s) : full_rates(p, s);
}

struct CoeffDerivs {
    double a0_1, a0_2, a1_0, a1_1, a2_0;
};

CoeffDerivs coeff_derivs_jet(const RateSet& r, double delta, Bath bath) {
    const auto A = char_poly(assemble_jet(r, delta, bath));
    return {A[0].d, A[0].s, A[1].v, A[1].d, A[2].v};
}

CoeffDerivs coeff_derivs_fd(const RateSet& r, double delta, Bath bath,
                            const DerivativeOptions& o) {
    auto coeffs = [&](double u) {
        double ue = bath == Bath::Emitter ? u : 0.0;
        double ub = bath == Bath::Base ? u : 0.0;
        double uc = bath == Bath::Collector ? u : 0.0;
        return char_poly(assemble_real(r, delta, ue, ub, uc));
    };
    const auto A0c = coeffs(0.0);
    const double h1 = o.fd_mean_step / delta;
    const double h2 = o.fd_variance_step / delta;
    auto d1 = [&](double h, int idx) {
        return (coeffs(h)[static_cast<size_t>(idx)] - coeffs(-h)[static_cast<size_t>(idx)]) /
               (2.0 * h);
    };
    auto d2 = [&](double h) {
        return (coeffs(h)[0] - 2.0 * A0c[0] + coeffs(-h)[0]) / (h * h);
    };
    CoeffDerivs cd{};
    if (o.richardson) {
        cd.a0_1 = (4.0 * d1(h1 / 2.0, 0) - d1(h1, 0)) / 3.0;
        cd.a0_2 = (4.0 * d2(h2 / 2.0) - d2(h2)) / 3.0;
        cd.a1_1 = (4.0 * d1(h2 / 2.0, 1) - d1(h2, 1)) / 3.0;
    } else {
        cd.a0_1 = d1(h1, 0);
        cd.a0_2 = d2(h2);
        cd.a1_1 = d1(h2, 1);
    }
    cd.a1_0 = A0c[1];
    cd.a2_0 = A0c[2];
    return cd;
}

constexpr double kA1Floor = 1e-9;

BathCumulants cumulants_from(const CoeffDerivs& cd, double scale) {
    if (std::abs(cd.a1_0) < kA1Floor * scale)
        throw std::runtime_error(
            "cumulants: near-degenerate spectrum (two slow modes); A1 below threshold");
    const double mean = -cd.a0_1 / cd.a1_0;
    const double var = -(cd.a0_2 + 2.0 * cd.a1_1 * mean + 2.0 * cd.a2_0 * mean * mean) / cd.a1_0;
    return {mean, var};
}

}  // namespace

BathCumulants mean_and_variance(const SystemParams& p, const HarmonicSpectrum& s, Bath bath,
                                const DerivativeOptions& opts) {
    const RateSet r = rates_for(p, s, opts.low_t_builder);
    const CoeffDerivs cd = opts.scheme == DerivativeScheme::Jet
                               ? coeff_derivs_jet(r, p.delta, bath)
                               : coeff_derivs_fd(r, p.delta, bath, opts);
    const double scale = std::pow(p.kappa * p.delta, 3);
    BathCumulants bc = cumulants_from(cd, scale);
    if (bc.variance < -1e-10 * scale)
        throw std::runtime_error("cumulants: negative variance signals a broken build or step");
    return bc;
}

Vec4 steady_state(const Mat4d& generator) {
    const auto cp = char_poly(generator);
    const double scale = std::pow(std::max(1.0, max_abs(generator)), 3);
    if (std::abs(cp[1]) < kA1Floor * scale)
        throw std::runtime_error("steady_state: rank-deficient beyond the single zero mode");
    std::array<std::array<double, 4>, 5> A{};
    std::array<double, 5> b{};
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) A[static_cast<size_t>(r)][static_cast<size_t>(c)] = generator(r, c);
    A[4] = {1.0, 1.0, 1.0, 1.0};
    b[4] = 1.0;
    Vec4 rho = lstsq_5x4(A, b);
    double resid = 0.0;
    for (int r = 0; r < 4; ++r) {
        double s = 0.0;
        for (int c = 0; c < 4; ++c) s += generator(r, c) * rho[static_cast<size_t>(c)];
        resid = std::max(resid, std::abs(s));
    }
    if (resid > 1e-8 * std::max(1.0, max_abs(generator)))
        throw std::runtime_error("steady_state: generator degenerate beyond the single zero mode");
    return rho;
}

Vec4 steady_state(const SystemParams& p, const HarmonicSpectrum& s, bool low_t_builder) {
    return steady_state(assemble_untilted(rates_for(p, s, low_t_builder), p.delta));
}

namespace {

using cd = std::complex<double>;

// Durand-Kerner on a monic quartic, two Newton polish steps per root.
std::array<cd, 4> quartic_roots(const std::array<cd, 5>& A) {
    auto eval = [&](cd z) { return ((z + A[3]) * z + A[2]) * z * z + A[1] * z + A[0]; };
    auto deriv = [&](cd z) {
        return (4.0 * z + 3.0 * A[3]) * z * z + 2.0 * A[2] * z + A[1];
    };
    double bound = 1.0;
    for (int i = 0; i < 4; ++i) bound = std::max(bound, std::abs(A[static_cast<size_t>(i)]));
    bound = 1.0 + bound;
    std::array<cd, 4> r;
    cd seed(0.4, 0.9);
    cd pw = bound;
    for (int i = 0; i < 4; ++i) {
        r[static_cast<size_t>(i)] = pw * seed;
        pw *= seed;
    }
    for (int it = 0; it < 200; ++it) {
        double moved = 0.0;
        for (int i = 0; i < 4; ++i) {
            cd denom(1.0, 0.0);
            for (int j = 0; j < 4; ++j)
                if (j != i) denom *= (r[static_cast<size_t>(i)] - r[static_cast<size_t>(j)]);
            cd step = eval(r[static_cast<size_t>(i)]) / denom;
            r[static_cast<size_t>(i)] -= step;
            moved = std::max(moved, std::abs(step));
        }
        if (moved < 1e-15 * bound) break;
    }
    for (auto& z : r)
        for (int k = 0; k < 2; ++k) {
            cd d = deriv(z);
            if (std::abs(d) > 0.0) z -= eval(z) / d;
        }
    return r;
}

}  // namespace

std::array<cd, 4> eigenvalues(const Mat4c& m) {
    return quartic_roots(char_poly(m));
}

std::complex<double> dominant_eigenvalue(const TiltedGenerator& g) {
    auto r = eigenvalues(g.matrix);
    return *std::max_element(r.begin(), r.end(),
                             [](const cd& a, const cd& b) { return a.real() < b.real(); });
}

double dominant_eigenvalue(const Mat4d& m) {
    std::array<cd, 5> A;
    const auto Ad = char_poly(m);
    for (int i = 0; i < 5; ++i) A[static_cast<size_t>(i)] = Ad[static_cast<size_t>(i)];
    auto r = quartic_roots(A);
    return std::max_element(r.begin(), r.end(), [](const cd& a, const cd& b) {
               return a.real() < b.real();
           })->real();
}

Mat4d expm(const Mat4d& m) {
    // Pade order-13 with scaling and squaring (Higham theta for double)
    static const double theta13 = 5.371920351148152;
    static const double b[] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                               1187353796428800.0,  129060195264000.0,   10559470521600.0,
                               670442572800.0,      33522128640.0,       1323241920.0,
                               40840800.0,          960960.0,            16380.0,
                               182.0,               1.0};
    double nrm = one_norm(m);
    int s = 0;
    Mat4d A = m;
    if (nrm > theta13) {
        s = static_cast<int>(std::ceil(std::log2(nrm / theta13)));
        A = m * std::pow(2.0, -s);
    }
    const Mat4d A2 = A * A;
    const Mat4d A4 = A2 * A2;
    const Mat4d A6 = A2 * A4;
    const Mat4d I = Mat4d::identity();
    // U = A (A6 (b13 A6 + b11 A4 + b9 A2) + b7 A6 + b5 A4 + b3 A2 + b1 I)
    Mat4d U = A6 * (A6 * b[13] + A4 * b[11] + A2 * b[9]) + A6 * b[7] + A4 * b[5] + A2 * b[3] +
              I * b[1];
    U = A * U;
    Mat4d V = A6 * (A6 * b[12] + A4 * b[10] + A2 * b[8]) + A6 * b[6] + A4 * b[4] + A2 * b[2] +
              I * b[0];
    Mat4d P = V + U;          // numerator
    Mat4d Q = V + U * (-1.0); // denominator
    Mat4d R = inverse(Q) * P;
    for (int i = 0; i < s; ++i) R = R * R;
    return R;
}

double finite_time_cgf(const Mat4d& generator, const Vec4& rho0, double t) {
    if (t < 0.0) throw std::domain_error("finite_time_cgf: t must be >= 0");
    const Mat4d E = expm(generator * t);
    double sum = 0.0;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) sum += E(r, c) * rho0[static_cast<size_t>(c)];
    if (!(sum > 0.0)) throw std::runtime_error("finite_time_cgf: propagated trace not positive");
    return std::log(sum);
}

CumulantSet cumulant_set(const SystemParams& p, const HarmonicSpectrum& s,
                         const DerivativeOptions& opts, double mean_floor) {
    CumulantSet out{};
    out.populations = steady_state(p, s, opts.low_t_builder);
    const double floor = mean_floor * p.delta * p.delta * p.kappa;
    double max_mean = 0.0, sum_mean = 0.0;
    for (int b = 0; b < 3; ++b) {
        const BathCumulants bc = mean_and_variance(p, s, static_cast<Bath>(b), opts);
        out.mean[b] = bc.mean;
        out.variance[b] = bc.variance;
        max_mean = std::max(max_mean, std::abs(bc.mean));
        sum_mean += bc.mean;
        if (std::abs(bc.mean) > floor) {
            out.fano[b] = bc.variance / bc.mean;
            out.fano_defined[b] = true;
        } else {
            out.fano[b] = std::numeric_limits<double>::quiet_NaN();
            out.fano_defined[b] = false;
        }
    }
    out.conservation = max_mean > 0.0 ? std::abs(sum_mean) / max_mean : 0.0;
    return out;
}

}  // namespace fqt

#include "fqt/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <limits>

#include <json.hpp>

namespace fqt {

using ordered_json = nlohmann::ordered_json;

std::string format_float(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.11e", v);
    return buf;
}

const char* kSweepCsvHeader =
    "var,J_E,J_B,J_C,var_E,var_B,var_C,fano_E,fano_B,fano_C,"
    "bound_E,bound_B,bound_C,beta_plus,beta_minus,diverged";

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open output file: " + path);
    return out;
}

std::string timestamp_utc() {
    std::time_t t = std::time(nullptr);
    char buf[32];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

ordered_json config_echo(const RunConfig& c) {
    ordered_json j;
    j["mode"] = c.mode;
    j["params"] = {{"delta", c.params.delta}, {"omega0", c.params.omega0},
                   {"t_e", c.params.t_e},     {"t_b", c.params.t_b},
                   {"t_c", c.params.t_c},     {"kappa", c.params.kappa},
                   {"zero_tb", c.params.zero_tb}};
    j["protocol"] = {{"kind", c.protocol.kind}, {"lambda", c.protocol.lambda}};
    if (!c.protocol.crab_file.empty()) j["protocol"]["file"] = c.protocol.crab_file;
    j["nu"] = c.nu;
    j["grid"] = {{"start", c.grid.start}, {"stop", c.grid.stop}, {"steps", c.grid.steps}};
    j["seed"] = c.seed;
    j["derivatives"] = {
        {"scheme", c.derivatives.scheme == DerivativeScheme::Jet ? "jet" : "fd"},
        {"mean_step", c.derivatives.fd_mean_step},
        {"variance_step", c.derivatives.fd_variance_step},
        {"richardson", c.derivatives.richardson},
        {"low_t_builder", c.derivatives.low_t_builder}};
    j["beta_probe"] = c.beta_probe;
    j["optimizer"] = {{"n_modes", c.crab.n_modes},
                      {"restarts", c.crab.restarts},
                      {"max_evals", c.crab.max_evals},
                      {"tolerance", c.crab.tolerance},
                      {"q_max", c.crab.q_max},
                      {"envelope_fraction", c.crab.envelope_fraction},
                      {"penalty", c.crab.penalty},
                      {"beta_probe", c.crab.beta_probe}};
    return j;
}

}  // namespace

void write_sweep_csv(const std::string& path, const SweepResult& r) {
    auto out = open_out(path);
    out << kSweepCsvHeader << "\n";
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    for (size_t i = 0; i < r.rows.size(); ++i) {
        const SweepRow& row = r.rows[i];
        const BetaPoint& bp = r.betas[i];
        auto f = [&](double v) { return format_float(v); };
        out << f(row.var);
        if (row.ok) {
            for (int b = 0; b < 3; ++b) out << ',' << f(row.cums.mean[b]);
            for (int b = 0; b < 3; ++b) out << ',' << f(row.cums.variance[b]);
            for (int b = 0; b < 3; ++b) out << ',' << f(row.cums.fano[b]);
            for (int b = 0; b < 3; ++b) out << ',' << f(row.bound[b]);
        } else {
            for (int k = 0; k < 12; ++k) out << ',' << f(nan);
        }
        out << ',' << f(bp.beta_plus) << ',' << f(bp.beta_minus) << ','
            << (bp.diverged ? 1 : 0) << "\n";
    }
}

void write_sweep_json(const std::string& path, const RunConfig& cfg, const SweepResult& r) {
    ordered_json j;
    j["version"] = FQT_VERSION;
    j["generated_at"] = timestamp_utc();
    j["config"] = config_echo(cfg);
    ordered_json spec = ordered_json::object();
    for (const auto& w : r.spectrum.weights) spec[std::to_string(w.q)] = w.p;
    j["spectrum"] = spec;
    j["spectrum_deficit"] = r.spectrum.deficit;
    j["summary"] = {{"points", r.rows.size()},
                    {"failed", r.failed},
                    {"max_conservation_residual", r.max_conservation}};
    ordered_json errors = ordered_json::array();
    for (const auto& row : r.rows)
        if (!row.ok) errors.push_back({{"var", row.var}, {"error", row.error}});
    j["errors"] = errors;
    auto out = open_out(path);
    out << j.dump(2) << "\n";
}

namespace {

ordered_json side_json(const SideQuantities& s) {
    ordered_json j;
    j["J_E"] = s.j_e;
    j["J_B"] = s.j_b;
    j["J_C"] = s.j_c;
    if (s.fano_e_defined)
        j["fano_E"] = s.fano_e;
    else
        j["fano_E"] = nullptr;
    return j;
}

}  // namespace

void write_optimize_json(const std::string& path, const RunConfig& cfg,
                         const std::vector<OptimizePoint>& points) {
    ordered_json j;
    j["version"] = FQT_VERSION;
    j["generated_at"] = timestamp_utc();
    j["config"] = config_echo(cfg);
    ordered_json arr = ordered_json::array();
    for (const auto& pt : points) {
        ordered_json e;
        e["var"] = pt.var;
        e["objective"] = std::isfinite(pt.result.best_objective)
                             ? ordered_json(pt.result.best_objective)
                             : ordered_json(format_float(pt.result.best_objective));
        e["divergent"] = pt.result.best_divergent;
        e["waveform"] = {{"omega0", pt.result.best.omega0},
                         {"mu", pt.result.best.mu},
                         {"a", pt.result.best.a},
                         {"b", pt.result.best.b},
                         {"tau", pt.result.best.tau},
                         {"envelope_fraction", pt.result.best.envelope_fraction}};
        ordered_json spec = ordered_json::object();
        for (const auto& w : pt.result.spectrum.weights)
            spec[std::to_string(w.q)] = w.p;
        e["spectrum"] = spec;
        e["spectrum_deficit"] = pt.result.spectrum.deficit;
        e["at_optimum"] = side_json(pt.result.at_optimum);
        e["baselines"] = {{"kind", pt.baseline_kind},
                          {"objective", pt.baseline_objective},
                          {"quantities", side_json(pt.baseline)}};
        e["evaluations"] = pt.result.log.size();
        e["failed_evaluations"] = pt.result.failed_evals;
        arr.push_back(e);
    }
    j["points"] = arr;
    auto out = open_out(path);
    out << j.dump(2) << "\n";
}

void write_optimize_trace_csv(const std::string& path, const std::vector<OptimizePoint>& points,
                              int n_modes) {
    auto out = open_out(path);
    out << "var,restart,eval,objective,mu";
    for (int n = 1; n <= n_modes; ++n) out << ",a" << n;
    for (int n = 1; n <= n_modes; ++n) out << ",b" << n;
    out << "\n";
    for (const auto& pt : points)
        for (const auto& ev : pt.result.log) {
            out << format_float(pt.var) << ',' << ev.restart << ',' << ev.eval << ','
                << format_float(ev.objective) << ',' << format_float(ev.mu);
            for (double v : ev.a) out << ',' << format_float(v);
            for (double v : ev.b) out << ',' << format_float(v);
            out << "\n";
        }
}

void write_optimize_summary_csv(const std::string& path,
                                const std::vector<OptimizePoint>& points) {
    auto out = open_out(path);
    out << "var,objective,baseline_objective,J_E,J_B,J_C,fano_E\n";
    for (const auto& pt : points) {
        out << format_float(pt.var) << ',' << format_float(pt.result.best_objective) << ','
            << format_float(pt.baseline_objective) << ','
            << format_float(pt.result.at_optimum.j_e) << ','
            << format_float(pt.result.at_optimum.j_b) << ','
            << format_float(pt.result.at_optimum.j_c) << ','
            << format_float(pt.result.at_optimum.fano_e) << "\n";
    }
}

void write_svg_chart(const std::string& path, const std::string& title,
                     const std::string& x_label, const std::vector<SvgSeries>& series) {
    const int W = 800, H = 500, ml = 70, mr = 20, mt = 40, mb = 50;
    double xmin = std::numeric_limits<double>::max(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const auto& s : series)
        for (const auto& [x, y] : s.points) {
            if (!std::isfinite(x) || !std::isfinite(y)) continue;
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    if (!(xmax > xmin)) { xmin -= 1.0; xmax += 1.0; }
    if (!(ymax > ymin)) { ymin -= 1.0; ymax += 1.0; }
    auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (W - ml - mr); };
    auto py = [&](double y) { return H - mb - (y - ymin) / (ymax - ymin) * (H - mt - mb); };

    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};
    auto out = open_out(path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
        << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
    out << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
    out << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">"
        << title << "</text>\n";
    out << "<line x1=\"" << ml << "\" y1=\"" << H - mb << "\" x2=\"" << W - mr << "\" y2=\""
        << H - mb << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << H - mb
        << "\" stroke=\"black\"/>\n";
    for (int k = 0; k <= 4; ++k) {
        const double xv = xmin + (xmax - xmin) * k / 4.0;
        const double yv = ymin + (ymax - ymin) * k / 4.0;
        char bx[32], by[32];
        std::snprintf(bx, sizeof(bx), "%.4g", xv);
        std::snprintf(by, sizeof(by), "%.4g", yv);
        out << "<text x=\"" << px(xv) << "\" y=\"" << H - mb + 18
            << "\" text-anchor=\"middle\" font-size=\"11\">" << bx << "</text>\n";
        out << "<text x=\"" << ml - 6 << "\" y=\"" << py(yv) + 4
            << "\" text-anchor=\"end\" font-size=\"11\">" << by << "</text>\n";
    }
    out << "<text x=\"" << (ml + W - mr) / 2 << "\" y=\"" << H - 12
        << "\" text-anchor=\"middle\" font-size=\"13\">" << x_label << "</text>\n";
    int ci = 0;
    for (const auto& s : series) {
        const char* color = colors[ci % 5];
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (const auto& [x, y] : s.points) {
            if (!std::isfinite(x) || !std::isfinite(y)) continue;
            out << px(x) << ',' << py(y) << ' ';
        }
        out << "\"/>\n";
        out << "<text x=\"" << W - mr - 120 << "\" y=\"" << mt + 16 * ci
            << "\" font-size=\"12\" fill=\"" << color << "\">" << s.name << "</text>\n";
        ++ci;
    }
    out << "</svg>\n";
}

void write_sweep_svg(const std::string& path, const RunConfig& cfg, const SweepResult& r) {
    SvgSeries je{"J_E", {}}, jb{"J_B", {}}, jc{"J_C", {}};
    for (const auto& row : r.rows) {
        if (!row.ok) continue;
        je.points.emplace_back(row.var, row.cums.mean[0]);
        jb.points.emplace_back(row.var, row.cums.mean[1]);
        jc.points.emplace_back(row.var, row.cums.mean[2]);
    }
    const std::string xlabel = cfg.mode == "sweep-tb" ? "T_B" : "nu";
    write_svg_chart(path, "mean heat currents (" + cfg.protocol.kind + ")", xlabel,
                    {je, jb, jc});
}

}  // namespace fqt

#include "fqt/config.hpp"

#include <cstdlib>
#include <fstream>
#include <thread>

#include <json.hpp>

namespace fqt {

namespace {

using nlohmann::json;

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("config parse error in " + path + ": " + e.what());
    }
    return j;
}

template <class T>
void maybe(const json& j, const char* key, T& out) {
    if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

CrabWaveform load_waveform(const std::string& path) {
    const json j = read_json_file(path);
    CrabWaveform w;
    maybe(j, "omega0", w.omega0);
    maybe(j, "mu", w.mu);
    maybe(j, "tau", w.tau);
    maybe(j, "envelope_fraction", w.envelope_fraction);
    if (j.contains("a")) w.a = j.at("a").get<std::vector<double>>();
    if (j.contains("b")) w.b = j.at("b").get<std::vector<double>>();
    try {
        w.validate();
    } catch (const std::domain_error& e) {
        throw std::invalid_argument(std::string("waveform file invalid: ") + e.what());
    }
    return w;
}

RunConfig load_config(const std::string& path) {
    const json j = read_json_file(path);
    RunConfig c;
    maybe(j, "mode", c.mode);
    if (j.contains("params")) {
        const json& p = j.at("params");
        maybe(p, "delta", c.params.delta);
        maybe(p, "omega0", c.params.omega0);
        maybe(p, "t_e", c.params.t_e);
        maybe(p, "t_b", c.params.t_b);
        maybe(p, "t_c", c.params.t_c);
        maybe(p, "kappa", c.params.kappa);
        maybe(p, "zero_tb", c.params.zero_tb);
    }
    if (j.contains("protocol")) {
        const json& p = j.at("protocol");
        maybe(p, "kind", c.protocol.kind);
        maybe(p, "lambda", c.protocol.lambda);
        maybe(p, "file", c.protocol.crab_file);
    }
    maybe(j, "nu", c.nu);
    if (j.contains("grid")) {
        const json& g = j.at("grid");
        maybe(g, "start", c.grid.start);
        maybe(g, "stop", c.grid.stop);
        maybe(g, "steps", c.grid.steps);
    }
    if (j.contains("output")) {
        const json& o = j.at("output");
        maybe(o, "csv", c.output.csv);
        maybe(o, "json", c.output.json);
        maybe(o, "svg", c.output.svg);
        maybe(o, "trace_csv", c.output.trace_csv);
        maybe(o, "summary_csv", c.output.summary_csv);
    }
    maybe(j, "seed", c.seed);
    maybe(j, "threads", c.threads);
    if (j.contains("derivatives")) {
        const json& d = j.at("derivatives");
        std::string scheme = "jet";
        maybe(d, "scheme", scheme);
        if (scheme == "jet")
            c.derivatives.scheme = DerivativeScheme::Jet;
        else if (scheme == "fd")
            c.derivatives.scheme = DerivativeScheme::FiniteDifference;
        else
            throw std::invalid_argument("derivatives.scheme must be 'jet' or 'fd'");
        maybe(d, "mean_step", c.derivatives.fd_mean_step);
        maybe(d, "variance_step", c.derivatives.fd_variance_step);
        maybe(d, "richardson", c.derivatives.richardson);
        maybe(d, "low_t_builder", c.derivatives.low_t_builder);
    }
    maybe(j, "beta_probe", c.beta_probe);
    if (j.contains("optimizer")) {
        const json& o = j.at("optimizer");
        maybe(o, "n_modes", c.crab.n_modes);
        maybe(o, "restarts", c.crab.restarts);
        maybe(o, "max_evals", c.crab.max_evals);
        maybe(o, "tolerance", c.crab.tolerance);
        maybe(o, "q_max", c.crab.q_max);
        maybe(o, "envelope_fraction", c.crab.envelope_fraction);
        maybe(o, "penalty", c.crab.penalty);
        maybe(o, "beta_probe", c.crab.beta_probe);
        if (o.contains("quadrature")) {
            const json& q = o.at("quadrature");
            maybe(q, "base_points", c.crab.quadrature.base_points);
            maybe(q, "tol", c.crab.quadrature.tol);
            maybe(q, "max_points", c.crab.quadrature.max_points);
        }
    }
    maybe(j, "dump_matrix", c.dump_matrix);
    if (j.contains("chi")) {
        const json& x = j.at("chi");
        maybe(x, "e", c.chi.chi_e);
        maybe(x, "b", c.chi.chi_b);
        maybe(x, "c", c.chi.chi_c);
        maybe(x, "real_tilt", c.chi.real_tilt);
    }
    maybe(j, "dump_builder", c.dump_builder);
    c.crab.master_seed = c.seed;
    c.crab.beta_probe = c.beta_probe;
    return c;
}

int resolve_threads(const RunConfig& cfg) {
    if (cfg.threads > 0) return cfg.threads;
    if (const char* env = std::getenv("FQT_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

}  // namespace fqt

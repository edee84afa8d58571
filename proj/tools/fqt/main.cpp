#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "fqt/io.hpp"
#include "fqt/validate.hpp"

namespace {

namespace fs = std::filesystem;

constexpr int kExitUsage = 64;
constexpr int kExitAllRowsFailed = 2;
constexpr int kExitOptimizationFailed = 3;

struct CommonOpts {
    std::string config;
    std::string out_dir = ".";
    std::uint64_t seed = 0;
    bool seed_set = false;
    int threads = -1;
    std::string protocol;
    double lambda = -1.0;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--config", o.config, "run configuration (JSON)")->required();
    cmd->add_option("--out", o.out_dir, "output directory (created if missing)");
    cmd->add_option("--seed", o.seed, "override the config seed")->each([&](const std::string&) {
        o.seed_set = true;
    });
    cmd->add_option("--threads", o.threads, "worker threads (0: FQT_THREADS or hardware)");
    cmd->add_option("--protocol", o.protocol,
                    "override protocol kind (unmodulated|sinusoidal|pi-flip|crab)");
    cmd->add_option("--lambda", o.lambda, "override the sinusoidal modulation index");
}

fqt::RunConfig make_config(const CommonOpts& o, const std::string& mode) {
    fqt::RunConfig cfg = fqt::load_config(o.config);
    cfg.mode = mode;
    if (o.seed_set) cfg.seed = o.seed;
    if (o.threads >= 0) cfg.threads = o.threads;
    if (!o.protocol.empty()) cfg.protocol.kind = o.protocol;
    if (o.lambda >= 0.0) cfg.protocol.lambda = o.lambda;
    cfg.crab.master_seed = cfg.seed;
    return cfg;
}

std::string join_out(const std::string& dir, const std::string& name) {
    return (fs::path(dir) / name).string();
}

int run_sweep_mode(const CommonOpts& o, const std::string& mode) {
    fqt::RunConfig cfg = make_config(o, mode);
    fs::create_directories(o.out_dir);
    const fqt::SweepResult res = fqt::run_sweep(cfg);
    const std::string csv = cfg.output.csv.empty() ? mode + ".csv" : cfg.output.csv;
    fqt::write_sweep_csv(join_out(o.out_dir, csv), res);
    const std::string json = cfg.output.json.empty() ? mode + ".json" : cfg.output.json;
    fqt::write_sweep_json(join_out(o.out_dir, json), cfg, res);
    if (!cfg.output.svg.empty())
        fqt::write_sweep_svg(join_out(o.out_dir, cfg.output.svg), cfg, res);
    std::cout << "rows: " << res.rows.size() << ", failed: " << res.failed
              << ", max conservation residual: " << res.max_conservation << "\n";
    if (res.failed == static_cast<int>(res.rows.size())) {
        std::cerr << "every grid point failed\n";
        return kExitAllRowsFailed;
    }
    return 0;
}

std::vector<double> optimize_grid(const fqt::GridSpec& g) {
    if (g.steps <= 1) return {g.start};
    return fqt::grid_points(g);
}

int run_optimize_mode(const CommonOpts& o, const std::string& mode) {
    fqt::RunConfig cfg = make_config(o, mode);
    fs::create_directories(o.out_dir);
    const bool beta = mode == "optimize-beta";
    cfg.crab.objective =
        beta ? fqt::Objective::MaximizeBetaPlus : fqt::Objective::MinimizeFanoE;
    const int threads = fqt::resolve_threads(cfg);

    std::vector<fqt::OptimizePoint> points;
    try {
        for (double var : optimize_grid(cfg.grid)) {
            fqt::SystemParams p = cfg.params;
            double nu = cfg.nu;
            if (beta)
                p.t_b = var;  // amplification curves sweep the base temperature
            else
                nu = var;  // Fano curves sweep the modulation frequency
            if (!(nu > 0.0))
                throw std::invalid_argument("optimize: modulation frequency must be > 0");

            fqt::OptimizePoint pt;
            pt.var = var;
            pt.result = fqt::optimize(cfg.crab, p, nu, threads);
            if (beta) {
                pt.baseline_kind = "sinusoidal(0.8)";
                const fqt::HarmonicSpectrum base = fqt::weights_sinusoidal(0.8, nu);
                const fqt::CumulantSet cs = fqt::cumulant_set(p, base);
                pt.baseline = {cs.mean[0], cs.mean[1], cs.mean[2], cs.fano[0],
                               cs.fano_defined[0]};
                auto current = [&](double tb, fqt::Bath bath) {
                    fqt::SystemParams q = p;
                    q.t_b = tb;
                    return fqt::mean_current(q, base, bath);
                };
                const double db = current(p.t_b + cfg.crab.beta_probe, fqt::Bath::Base) -
                                  current(p.t_b - cfg.crab.beta_probe, fqt::Bath::Base);
                const double dc = current(p.t_b + cfg.crab.beta_probe, fqt::Bath::Collector) -
                                  current(p.t_b - cfg.crab.beta_probe, fqt::Bath::Collector);
                pt.baseline_objective = dc / db;
            } else {
                pt.baseline_kind = "unmodulated";
                const fqt::CumulantSet cs = fqt::cumulant_set(p, fqt::weights_unmodulated());
                pt.baseline = {cs.mean[0], cs.mean[1], cs.mean[2], cs.fano[0],
                               cs.fano_defined[0]};
                pt.baseline_objective = cs.fano[0];
            }
            points.push_back(std::move(pt));
        }
    } catch (const std::runtime_error& e) {
        std::cerr << "optimization failed: " << e.what() << "\n";
        if (!points.empty()) {
            const std::string json =
                cfg.output.json.empty() ? mode + ".json" : cfg.output.json;
            fqt::write_optimize_json(join_out(o.out_dir, json), cfg, points);
        }
        return kExitOptimizationFailed;
    }

    const std::string json = cfg.output.json.empty() ? mode + ".json" : cfg.output.json;
    fqt::write_optimize_json(join_out(o.out_dir, json), cfg, points);
    const std::string trace =
        cfg.output.trace_csv.empty() ? mode + "-trace.csv" : cfg.output.trace_csv;
    fqt::write_optimize_trace_csv(join_out(o.out_dir, trace), points, cfg.crab.n_modes);
    const std::string summary =
        cfg.output.summary_csv.empty() ? mode + "-summary.csv" : cfg.output.summary_csv;
    fqt::write_optimize_summary_csv(join_out(o.out_dir, summary), points);
    for (const auto& pt : points)
        std::cout << "var=" << pt.var << " objective=" << pt.result.best_objective
                  << " baseline=" << pt.baseline_objective << "\n";
    return 0;
}

int run_validate_mode(const CommonOpts& o, bool dump_matrix) {
    fqt::RunConfig cfg = make_config(o, "validate");
    if (dump_matrix) cfg.dump_matrix = true;
    if (cfg.dump_matrix) {
        std::cout << fqt::dump_matrix_json(cfg) << "\n";
        return 0;
    }
    const auto checks = fqt::run_validation(cfg);
    const bool ok = fqt::report_validation(checks, std::cout);
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fqt: three-qubit Floquet thermal transistor toolkit"};
    app.require_subcommand(1);

    CommonOpts opts;
    bool dump_matrix = false;
    CLI::App* sweep_tb = app.add_subcommand("sweep-tb", "sweep the base temperature");
    CLI::App* sweep_nu = app.add_subcommand("sweep-nu", "sweep the modulation frequency");
    CLI::App* opt_beta = app.add_subcommand("optimize-beta", "maximize the amplification");
    CLI::App* opt_fano = app.add_subcommand("optimize-fano", "minimize the emitter Fano factor");
    CLI::App* validate = app.add_subcommand("validate", "run the invariant suite");
    for (CLI::App* c : {sweep_tb, sweep_nu, opt_beta, opt_fano, validate}) add_common(c, opts);
    validate->add_flag("--dump-matrix", dump_matrix, "emit the generator as JSON and exit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (sweep_tb->parsed()) return run_sweep_mode(opts, "sweep-tb");
        if (sweep_nu->parsed()) return run_sweep_mode(opts, "sweep-nu");
        if (opt_beta->parsed()) return run_optimize_mode(opts, "optimize-beta");
        if (opt_fano->parsed()) return run_optimize_mode(opts, "optimize-fano");
        if (validate->parsed()) return run_validate_mode(opts, dump_matrix);
    } catch (const std::invalid_argument& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitUsage;
}

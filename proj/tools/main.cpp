// uncervals command-line tool: simulate, fit, calibrate, predict, coverage,
// condcov, gof, vccheck. Every run writes a manifest.json with the resolved
// configuration; re-running a subcommand with --config manifest.json
// reproduces the outputs byte for byte.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "uncervals/conformal.hpp"
#include "uncervals/csv.hpp"
#include "uncervals/evaluate.hpp"
#include "uncervals/serialize.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace uncervals;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitNumeric = 4;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Resolved configuration: command-line flags override --config file entries,
// which override built-in defaults.
class Resolver {
  public:
    Resolver(const CLI::App& cmd, std::string config_path) : cmd_(cmd) {
        if (!config_path.empty()) {
            file_ = read_json_file(config_path);
            if (file_.contains("config")) {
                if (file_.contains("subcommand") &&
                    file_["subcommand"].get<std::string>() != cmd.get_name())
                    throw UsageError("manifest is for subcommand '" +
                                     file_["subcommand"].get<std::string>() + "'");
                file_ = file_["config"];
            }
        }
    }

    template <typename T>
    T get(const std::string& flag, const std::string& key, const T& cli_value, T def) {
        const auto* opt = cmd_.get_option(flag);
        T v = std::move(def);
        if (file_.contains(key)) v = file_.at(key).get<T>();
        if (opt->count() > 0) v = cli_value;
        resolved_[key] = v;
        return v;
    }

    bool has(const std::string& key) const { return file_.contains(key); }
    const json& file() const { return file_; }
    json& resolved() { return resolved_; }

  private:
    const CLI::App& cmd_;
    json file_;
    json resolved_ = json::object();
};

void write_manifest(const std::string& subcommand, const json& config, const fs::path& dir) {
    fs::create_directories(dir);
    write_json_file(json{{"subcommand", subcommand}, {"config", config}},
                    (dir / "manifest.json").string());
}

void emit(const json& report, const std::string& format) {
    if (format == "json") {
        std::cout << report.dump(2) << "\n";
        return;
    }
    // Flat key,value lines for quick shell consumption.
    for (const auto& [key, value] : report.items()) {
        if (value.is_primitive()) std::cout << key << "," << value.dump() << "\n";
    }
}

// ---- shared option blocks ------------------------------------------------

struct SimFlags {
    std::string preset;
    std::size_t n = 0;
    double shape = 0, scale = 0, inspect_length = 0, xmin = 0, xmax = 0, rho = 0;
    int inspections = 0;
    std::size_t xdim = 0;
    std::string link_kind;
    std::vector<double> beta;

    void attach(CLI::App* cmd) {
        cmd->add_option("--preset", preset, "named scenario (condcov, rc30)");
        cmd->add_option("--n", n, "sample size");
        cmd->add_option("--shape", shape, "Weibull shape");
        cmd->add_option("--scale", scale, "Weibull scale");
        cmd->add_option("--inspections", inspections, "number of inspection epochs");
        cmd->add_option("--inspect-length", inspect_length, "max gap between inspections");
        cmd->add_option("--xdim", xdim, "covariate dimension");
        cmd->add_option("--xmin", xmin, "covariate lower bound");
        cmd->add_option("--xmax", xmax, "covariate upper bound");
        cmd->add_option("--rho", rho, "covariate copula correlation");
        cmd->add_option("--link", link_kind, "link kind: const, linear, abs_linear");
        cmd->add_option("--beta", beta, "link coefficients");
    }

    sim::SimConfig resolve(Resolver& r, const CLI::App& cmd) const {
        (void)cmd;
        sim::SimConfig base;
        const std::string preset_name =
            r.get<std::string>("--preset", "preset", preset, std::string{});
        if (!preset_name.empty()) base = sim::preset(preset_name);

        base.n = r.get<std::size_t>("--n", "n", n, base.n);
        base.shape = r.get<double>("--shape", "shape", shape, base.shape);
        base.scale = r.get<double>("--scale", "scale", scale, base.scale);
        base.inspections = r.get<int>("--inspections", "inspections", inspections,
                                      base.inspections);
        base.inspect_length = r.get<double>("--inspect-length", "inspect_length",
                                            inspect_length, base.inspect_length);
        base.covariates.dim = r.get<std::size_t>("--xdim", "xdim", xdim, base.covariates.dim);
        base.covariates.min = r.get<double>("--xmin", "xmin", xmin, base.covariates.min);
        base.covariates.max = r.get<double>("--xmax", "xmax", xmax, base.covariates.max);
        base.covariates.rho = r.get<double>("--rho", "rho", rho, base.covariates.rho);
        const std::string lk = r.get<std::string>("--link", "link_kind", link_kind,
                                                  base.link.kind_name());
        const std::vector<double> lb = r.get<std::vector<double>>("--beta", "link_beta", beta,
                                                                  base.link.beta);
        base.link = Link::from_kind_name(lk, lb);
        base.validate();
        return base;
    }
};

struct EstimatorFlags {
    std::string name = "weibph";
    double tol = 0.0;
    int max_iter = 0;
    double oracle_shape = 2.0, oracle_scale = 1.0;
    std::string oracle_link = "const";
    std::vector<double> oracle_beta;
    std::vector<double> bandwidths;

    void attach(CLI::App* cmd, const char* flag = "--model") {
        cmd->add_option(flag, name, "estimator: turnbull, weibph, oracle, kturnbull");
        cmd->add_option("--tol", tol, "fit tolerance");
        cmd->add_option("--max-iter", max_iter, "fit iteration cap");
        cmd->add_option("--oracle-shape", oracle_shape, "oracle Weibull shape");
        cmd->add_option("--oracle-scale", oracle_scale, "oracle Weibull scale");
        cmd->add_option("--oracle-link", oracle_link, "oracle link kind");
        cmd->add_option("--oracle-beta", oracle_beta, "oracle link coefficients");
        cmd->add_option("--bandwidth", bandwidths, "kturnbull bandwidths");
    }

    EstimatorSpec resolve(Resolver& r, const char* flag = "--model") const {
        EstimatorSpec spec = EstimatorSpec::from_name(
            r.get<std::string>(flag, "estimator", name, name));
        spec.tol = r.get<double>("--tol", "tol", tol, 0.0);
        spec.max_iter = r.get<int>("--max-iter", "max_iter", max_iter, 0);
        spec.oracle_shape = r.get<double>("--oracle-shape", "oracle_shape", oracle_shape, 2.0);
        spec.oracle_scale = r.get<double>("--oracle-scale", "oracle_scale", oracle_scale, 1.0);
        spec.oracle_link = Link::from_kind_name(
            r.get<std::string>("--oracle-link", "oracle_link", oracle_link,
                               std::string("const")),
            r.get<std::vector<double>>("--oracle-beta", "oracle_beta", oracle_beta, {}));
        spec.bandwidths =
            r.get<std::vector<double>>("--bandwidth", "bandwidths", bandwidths, {});
        return spec;
    }

    // In the experiment subcommands "oracle" means the simulation truth.
    static void sync_oracle(EstimatorSpec& spec, const sim::SimConfig& cfg, Resolver& r) {
        if (spec.kind != EstimatorSpec::Kind::oracle) return;
        spec.oracle_shape = cfg.shape;
        spec.oracle_scale = cfg.scale;
        spec.oracle_link = cfg.link;
        r.resolved()["oracle_shape"] = cfg.shape;
        r.resolved()["oracle_scale"] = cfg.scale;
        r.resolved()["oracle_link"] = cfg.link.kind_name();
        r.resolved()["oracle_beta"] = cfg.link.beta;
    }
};

// ---- subcommands ---------------------------------------------------------

int run_simulate(const CLI::App& cmd, const SimFlags& simf, const std::string& config_path,
                 const std::string& out_dir_flag, std::uint64_t seed_flag,
                 const std::string& out_flag, const std::string& truth_flag) {
    Resolver r(cmd, config_path);
    sim::SimConfig cfg = simf.resolve(r, cmd);
    cfg.seed = r.get<std::uint64_t>("--seed", "seed", seed_flag, cfg.seed);
    const std::string out_dir =
        r.get<std::string>("--out-dir", "out_dir", out_dir_flag, std::string("."));
    fs::create_directories(out_dir);
    const std::string out_csv = r.get<std::string>(
        "--out", "out", out_flag, (fs::path(out_dir) / "dataset.csv").string());
    const std::string truth_csv = r.get<std::string>(
        "--truth", "truth", truth_flag, (fs::path(out_dir) / "truth.csv").string());

    const sim::SimOutput out = sim::simulate(cfg);
    save_dataset(out.dataset, out_csv);
    save_true_times(out.true_times, out.censor_class, truth_csv);
    r.resolved().update(sim_config_to_json(cfg));
    write_manifest("simulate", r.resolved(), out_dir);
    std::cout << "wrote " << out_csv << " (" << out.dataset.size() << " rows)\n";
    return 0;
}

int run_fit(const CLI::App& cmd, const EstimatorFlags& estf, const std::string& data_path,
            const std::string& config_path, const std::string& out_dir_flag,
            const std::string& out_flag) {
    Resolver r(cmd, config_path);
    const std::string data = r.get<std::string>("--data", "data", data_path, std::string{});
    if (data.empty()) throw UsageError("fit: --data is required");
    EstimatorSpec spec = estf.resolve(r);
    const std::string out_dir =
        r.get<std::string>("--out-dir", "out_dir", out_dir_flag, std::string("."));
    fs::create_directories(out_dir);
    const std::string out = r.get<std::string>("--out", "out", out_flag,
                                               (fs::path(out_dir) / "model.json").string());

    const Dataset ds = load_dataset(data);
    const ModelPtr model = fit_estimator(spec, ds);
    if (const auto* wb = dynamic_cast<const WeibullPhFit*>(model.get()); wb && !wb->converged)
        std::cerr << "warning: weibull_ph fit did not converge (flagged in output)\n";
    save_model(*model, out);
    write_manifest("fit", r.resolved(), out_dir);
    std::cout << "wrote " << out << "\n";
    return 0;
}

int run_calibrate(const CLI::App& cmd, const EstimatorFlags& estf, const std::string& data_path,
                  const std::string& config_path, const std::string& out_dir_flag, double alpha,
                  double b, const std::string& mode, double split_frac, std::uint64_t seed) {
    Resolver r(cmd, config_path);
    const std::string data = r.get<std::string>("--data", "data", data_path, std::string{});
    if (data.empty()) throw UsageError("calibrate: --data is required");

    conformal::UncervalsOptions opts;
    opts.alpha = r.get<double>("--alpha", "alpha", alpha, 0.1);
    opts.b = r.get<double>("--b", "b", b, 1.0);
    opts.mode = conformal::mode_from_name(
        r.get<std::string>("--mode", "mode", mode, std::string("e0")));
    opts.fit_fraction = r.get<double>("--split-frac", "split_frac", split_frac, 0.5);
    opts.seed = r.get<std::uint64_t>("--seed", "seed", seed, 0);
    opts.estimator = estf.resolve(r);
    const std::string out_dir =
        r.get<std::string>("--out-dir", "out_dir", out_dir_flag, std::string("."));
    fs::create_directories(out_dir);

    const Dataset ds = load_dataset(data);
    const conformal::UncervalsRun run = conformal::calibrate_pipeline(ds, opts);
    save_model(*run.model, (fs::path(out_dir) / "model.json").string());
    write_json_file(calibration_to_json(run.calibration),
                    (fs::path(out_dir) / "calibration.json").string());
    write_manifest("calibrate", r.resolved(), out_dir);
    std::cout << "q_hat," << format_double(run.calibration.q_hat) << "\n";
    return 0;
}

int run_predict(const CLI::App& cmd, const std::string& config_path,
                const std::string& model_path, const std::string& calib_path,
                const std::string& cov_path, const std::string& out_flag, double t_max_flag) {
    Resolver r(cmd, config_path);
    const std::string model_file =
        r.get<std::string>("--model", "model", model_path, std::string{});
    const std::string calib_file =
        r.get<std::string>("--calibration", "calibration", calib_path, std::string{});
    const std::string cov_file =
        r.get<std::string>("--covariates", "covariates", cov_path, std::string{});
    if (model_file.empty() || calib_file.empty() || cov_file.empty())
        throw UsageError("predict: --model, --calibration and --covariates are required");
    const std::string out =
        r.get<std::string>("--out", "out", out_flag, std::string("predictions.csv"));
    double t_max = r.get<double>("--t-max", "t_max", t_max_flag, 0.0);

    const ModelPtr model = load_model(model_file);
    const auto calib = calibration_from_json(read_json_file(calib_file));
    const auto rows = load_covariates(cov_file);
    if (t_max <= 0.0) t_max = model->default_t_max();
    if (t_max <= 0.0) throw numeric_error("predict: no usable horizon; pass --t-max");

    std::ofstream os(out);
    if (!os) throw io_error("cannot write '" + out + "'");
    const std::size_t dim = rows.empty() ? 0 : rows.front().size();
    for (std::size_t j = 0; j < dim; ++j) os << "x" << (j + 1) << ",";
    const bool lower_only = calib.b == 1.0;
    os << (lower_only ? "lpb" : "lo,hi") << "\n";
    for (const auto& x : rows) {
        const auto set = conformal::prediction_set(*model, x, calib.q_hat, calib.b, calib.alpha,
                                                   t_max);
        for (double v : x) os << format_double(v) << ",";
        if (lower_only)
            os << format_double(set.lo) << "\n";
        else
            os << format_double(set.lo) << "," << format_double(set.hi) << "\n";
    }
    const fs::path out_dir = fs::path(out).has_parent_path() ? fs::path(out).parent_path()
                                                             : fs::path(".");
    write_manifest("predict", r.resolved(), out_dir);
    std::cout << "wrote " << out << " (" << rows.size() << " rows)\n";
    return 0;
}

int run_coverage(const CLI::App& cmd, const SimFlags& simf, const EstimatorFlags& estf,
                 const std::string& config_path, const std::string& out_dir_flag,
                 const std::string& method, const std::string& mode, double alpha, double b,
                 double split_frac, int reps, std::size_t n_test, std::uint64_t seed,
                 int threads, const std::string& format) {
    Resolver r(cmd, config_path);
    sim::SimConfig cfg = simf.resolve(r, cmd);

    eval::MethodSpec ms;
    const std::string mname =
        r.get<std::string>("--method", "method", method, std::string("uncervals"));
    if (mname == "uncervals")
        ms.kind = eval::MethodSpec::Kind::uncervals;
    else if (mname == "naive")
        ms.kind = eval::MethodSpec::Kind::naive;
    else
        throw UsageError("coverage: --method must be uncervals or naive");
    ms.mode = conformal::mode_from_name(
        r.get<std::string>("--mode", "mode", mode, std::string("estar")));
    ms.b = r.get<double>("--b", "b", b, 1.0);
    ms.fit_fraction = r.get<double>("--split-frac", "split_frac", split_frac, 0.5);
    ms.estimator = estf.resolve(r, "--estimator");
    EstimatorFlags::sync_oracle(ms.estimator, cfg, r);

    const double a = r.get<double>("--alpha", "alpha", alpha, 0.1);
    const int B = r.get<int>("--reps", "reps", reps, 100);
    const std::size_t nt = r.get<std::size_t>("--n-test", "n_test", n_test, 200);
    const std::uint64_t sd = r.get<std::uint64_t>("--seed", "seed", seed, 0);
    const int th = r.get<int>("--threads", "threads", threads, 1);
    const std::string fmt =
        r.get<std::string>("--format", "format", format, std::string("json"));
    const std::string out_dir =
        r.get<std::string>("--out-dir", "out_dir", out_dir_flag, std::string("."));
    fs::create_directories(out_dir);

    const auto report = eval::marginal_coverage(ms, cfg, a, B, nt, sd, th);

    json j{{"method", report.method_label}, {"alpha", report.alpha},
           {"replications", report.replications}, {"mean_coverage", report.mean},
           {"sd_coverage", report.sd}, {"per_replication", report.per_replication}};
    write_json_file(j, (fs::path(out_dir) / "report.json").string());
    std::ofstream csv(fs::path(out_dir) / "replications.csv");
    csv << "replication,coverage\n";
    for (std::size_t i = 0; i < report.per_replication.size(); ++i)
        csv << i << "," << format_double(report.per_replication[i]) << "\n";
    write_manifest("coverage", r.resolved(), out_dir);
    emit(j, fmt);
    return 0;
}

int run_condcov(const CLI::App& cmd, const SimFlags& simf, const EstimatorFlags& estf,
                const std::string& config_path, const std::string& out_dir_flag, double alpha,
                double split_frac, int reps, std::size_t n_eval, std::uint64_t seed, int threads,
                const std::string& format) {
    Resolver r(cmd, config_path);
    sim::SimConfig cfg = simf.resolve(r, cmd);
    EstimatorSpec est = estf.resolve(r, "--estimator");
    EstimatorFlags::sync_oracle(est, cfg, r);

    const double a = r.get<double>("--alpha", "alpha", alpha, 0.1);
    const double frac = r.get<double>("--split-frac", "split_frac", split_frac, 0.5);
    const int B = r.get<int>("--reps", "reps", reps, 50);
    const std::size_t ne = r.get<std::size_t>("--n-eval", "n_eval", n_eval, 5000);
    const std::uint64_t sd = r.get<std::uint64_t>("--seed", "seed", seed, 0);
    const int th = r.get<int>("--threads", "threads", threads, 1);
    const std::string fmt =
        r.get<std::string>("--format", "format", format, std::string("json"));
    const std::string out_dir =
        r.get<std::string>("--out-dir", "out_dir", out_dir_flag, std::string("."));
    fs::create_directories(out_dir);

    const auto report = eval::err_comparison(cfg, a, B, ne, est, frac, sd, th);

    json j{{"alpha", report.alpha},
           {"replications", report.replications},
           {"mean_err_uncervals", report.mean_err_uncervals},
           {"sd_err_uncervals", report.sd_err_uncervals},
           {"mean_err_naive", report.mean_err_naive},
           {"sd_err_naive", report.sd_err_naive},
           {"err_uncervals", report.err_uncervals},
           {"err_naive", report.err_naive}};
    write_json_file(j, (fs::path(out_dir) / "report.json").string());

    std::ofstream curve(fs::path(out_dir) / "curve.csv");
    curve << "x,pi_uncervals,pi_naive\n";
    const auto& cu = report.last_uncervals.curve;
    const auto& cn = report.last_naive.curve;
    for (std::size_t i = 0; i < cu.grid.size(); ++i)
        curve << format_double(cu.grid[i]) << "," << format_double(cu.pi_hat[i]) << ","
              << format_double(cn.pi_hat[i]) << "\n";
    std::ofstream errs(fs::path(out_dir) / "errs.csv");
    errs << "replication,err_uncervals,err_naive\n";
    for (std::size_t i = 0; i < report.err_uncervals.size(); ++i)
        errs << i << "," << format_double(report.err_uncervals[i]) << ","
             << format_double(report.err_naive[i]) << "\n";
    write_manifest("condcov", r.resolved(), out_dir);
    emit(j, fmt);
    return 0;
}

int run_gof(const CLI::App& cmd, const std::string& config_path, const std::string& data_path,
            const std::string& model_path, std::uint64_t seed, const std::string& out_dir_flag,
            const std::string& format) {
    Resolver r(cmd, config_path);
    const std::string data = r.get<std::string>("--data", "data", data_path, std::string{});
    const std::string model_file =
        r.get<std::string>("--model", "model", model_path, std::string{});
    if (data.empty() || model_file.empty())
        throw UsageError("gof: --data and --model are required");
    const std::uint64_t sd = r.get<std::uint64_t>("--seed", "seed", seed, 0);
    const std::string fmt =
        r.get<std::string>("--format", "format", format, std::string("json"));
    const std::string out_dir =
        r.get<std::string>("--out-dir", "out_dir", out_dir_flag, std::string("."));
    fs::create_directories(out_dir);

    const Dataset ds = load_dataset(data);
    const ModelPtr model = load_model(model_file);
    const auto report = eval::gof_uniformity(*model, ds, sd);

    json j{{"n", report.n}, {"statistic", report.statistic}, {"p_value", report.p_value}};
    write_json_file(j, (fs::path(out_dir) / "report.json").string());
    std::ofstream csv(fs::path(out_dir) / "ecdf.csv");
    csv << "phi_star,ecdf\n";
    for (std::size_t i = 0; i < report.phi_star_sorted.size(); ++i)
        csv << format_double(report.phi_star_sorted[i]) << ","
            << format_double((static_cast<double>(i) + 1.0) /
                             static_cast<double>(report.n))
            << "\n";
    write_manifest("gof", r.resolved(), out_dir);
    emit(j, fmt);
    return 0;
}

int run_vccheck(const CLI::App& cmd, const std::string& config_path, std::uint64_t budget,
                int points, std::uint64_t seed, const std::string& out_dir_flag,
                const std::string& format) {
    Resolver r(cmd, config_path);
    const std::uint64_t bd = r.get<std::uint64_t>("--budget", "budget", budget, 100000);
    const int np = r.get<int>("--points", "points", points, 3);
    const std::uint64_t sd = r.get<std::uint64_t>("--seed", "seed", seed, 0);
    const std::string fmt =
        r.get<std::string>("--format", "format", format, std::string("json"));
    const std::string out_dir =
        r.get<std::string>("--out-dir", "out_dir", out_dir_flag, std::string("."));
    fs::create_directories(out_dir);

    const auto report = eval::vc_shatter_search(bd, np, sd);
    json j{{"points", report.n_points},
           {"budget", report.budget},
           {"max_dichotomies", report.max_dichotomies},
           {"shattered", report.shattered}};
    write_json_file(j, (fs::path(out_dir) / "report.json").string());
    std::ofstream csv(fs::path(out_dir) / "summary.csv");
    csv << "points,budget,max_dichotomies,shattered\n"
        << report.n_points << "," << report.budget << "," << report.max_dichotomies << ","
        << (report.shattered ? 1 : 0) << "\n";
    write_manifest("vccheck", r.resolved(), out_dir);
    emit(j, fmt);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"conformal uncertainty quantification for interval-censored targets"};
    app.require_subcommand(1);

    // Shared flag storage; each subcommand registers only what it uses.
    std::string config_path, out_dir, data_path, model_path, calib_path, cov_path, out_path,
        truth_path;
    std::string method = "uncervals", mode = "estar", format = "json";
    double alpha = 0.1, b = 1.0, split_frac = 0.5, t_max = 0.0;
    int reps = 100, threads = 1, points = 3;
    std::size_t n_test = 200, n_eval = 5000;
    std::uint64_t seed = 0, budget = 100000;
    SimFlags simf;
    EstimatorFlags estf;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "JSON config or manifest to rerun");
        cmd->add_option("--out-dir", out_dir, "output directory");
        cmd->add_option("--seed", seed, "master seed");
    };

    auto* sim_cmd = app.add_subcommand("simulate", "generate an interval-censored dataset");
    add_common(sim_cmd);
    simf.attach(sim_cmd);
    sim_cmd->add_option("--out", out_path, "dataset CSV path");
    sim_cmd->add_option("--truth", truth_path, "true-times sidecar CSV path");

    auto* fit_cmd = app.add_subcommand("fit", "fit a conditional CDF model to a dataset");
    add_common(fit_cmd);
    estf.attach(fit_cmd);
    fit_cmd->add_option("--data", data_path, "dataset CSV");
    fit_cmd->add_option("--out", out_path, "model JSON path");

    auto* cal_cmd = app.add_subcommand("calibrate", "split, fit, and conformally calibrate");
    add_common(cal_cmd);
    estf.attach(cal_cmd);
    cal_cmd->add_option("--data", data_path, "dataset CSV");
    cal_cmd->add_option("--alpha", alpha, "miscoverage level");
    cal_cmd->add_option("--b", b, "score center (1 = lower bound)");
    cal_cmd->add_option("--mode", mode, "e0 or estar");
    cal_cmd->add_option("--split-frac", split_frac, "fraction fit on split 1");

    auto* pred_cmd = app.add_subcommand("predict", "prediction sets for new covariates");
    add_common(pred_cmd);
    pred_cmd->add_option("--model", model_path, "fitted model JSON");
    pred_cmd->add_option("--calibration", calib_path, "calibration JSON");
    pred_cmd->add_option("--covariates", cov_path, "covariate CSV");
    pred_cmd->add_option("--out", out_path, "prediction CSV path");
    pred_cmd->add_option("--t-max", t_max, "inversion horizon");

    auto* cov_cmd = app.add_subcommand("coverage", "Monte Carlo marginal coverage");
    add_common(cov_cmd);
    simf.attach(cov_cmd);
    estf.attach(cov_cmd, "--estimator");
    cov_cmd->add_option("--method", method, "uncervals or naive");
    cov_cmd->add_option("--mode", mode, "e0 or estar");
    cov_cmd->add_option("--alpha", alpha, "miscoverage level");
    cov_cmd->add_option("--b", b, "score center");
    cov_cmd->add_option("--split-frac", split_frac, "fraction fit on split 1");
    cov_cmd->add_option("--reps", reps, "replications");
    cov_cmd->add_option("--n-test", n_test, "fresh test points per replication");
    cov_cmd->add_option("--threads", threads, "replication parallelism");
    cov_cmd->add_option("--format", format, "stdout format: json or csv");

    auto* cc_cmd = app.add_subcommand("condcov", "conditional-coverage err benchmark");
    add_common(cc_cmd);
    simf.attach(cc_cmd);
    estf.attach(cc_cmd, "--estimator");
    cc_cmd->add_option("--alpha", alpha, "miscoverage level");
    cc_cmd->add_option("--split-frac", split_frac, "fraction fit on split 1");
    cc_cmd->add_option("--reps", reps, "replications");
    cc_cmd->add_option("--n-eval", n_eval, "fresh evaluation points");
    cc_cmd->add_option("--threads", threads, "replication parallelism");
    cc_cmd->add_option("--format", format, "stdout format: json or csv");

    auto* gof_cmd = app.add_subcommand("gof", "goodness of fit via score uniformity");
    add_common(gof_cmd);
    gof_cmd->add_option("--data", data_path, "calibration dataset CSV");
    gof_cmd->add_option("--model", model_path, "fitted model JSON");
    gof_cmd->add_option("--format", format, "stdout format: json or csv");

    auto* vc_cmd = app.add_subcommand("vccheck", "randomized non-shattering search");
    add_common(vc_cmd);
    vc_cmd->add_option("--budget", budget, "number of random configurations");
    vc_cmd->add_option("--points", points, "points to shatter (2 or 3)");
    vc_cmd->add_option("--format", format, "stdout format: json or csv");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (sim_cmd->parsed())
            return run_simulate(*sim_cmd, simf, config_path, out_dir, seed, out_path,
                                truth_path);
        if (fit_cmd->parsed())
            return run_fit(*fit_cmd, estf, data_path, config_path, out_dir, out_path);
        if (cal_cmd->parsed())
            return run_calibrate(*cal_cmd, estf, data_path, config_path, out_dir, alpha, b,
                                 mode, split_frac, seed);
        if (pred_cmd->parsed())
            return run_predict(*pred_cmd, config_path, model_path, calib_path, cov_path,
                               out_path, t_max);
        if (cov_cmd->parsed())
            return run_coverage(*cov_cmd, simf, estf, config_path, out_dir, method, mode, alpha,
                                b, split_frac, reps, n_test, seed, threads, format);
        if (cc_cmd->parsed())
            return run_condcov(*cc_cmd, simf, estf, config_path, out_dir, alpha, split_frac,
                               reps, n_eval, seed, threads, format);
        if (gof_cmd->parsed())
            return run_gof(*gof_cmd, config_path, data_path, model_path, seed, out_dir, format);
        if (vc_cmd->parsed())
            return run_vccheck(*vc_cmd, config_path, budget, points, seed, out_dir, format);
        throw UsageError("no subcommand");
    } catch (const UsageError& e) {
        std::cerr << nlohmann::json{{"error", {{"type", "usage"}, {"message", e.what()}}}}.dump()
                  << "\n";
        return kExitUsage;
    } catch (const io_error& e) {
        std::cerr << nlohmann::json{{"error", {{"type", "io"}, {"message", e.what()}}}}.dump()
                  << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << nlohmann::json{{"error", {{"type", "numeric"}, {"message", e.what()}}}}.dump()
                  << "\n";
        return kExitNumeric;
    }
}

#include "lsii/cli.hpp"

#include <Eigen/Dense>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "lsii/auxiliary.hpp"
#include "lsii/bootstrap.hpp"
#include "lsii/diagnostics.hpp"
#include "lsii/errors.hpp"
#include "lsii/kernel.hpp"
#include "lsii/lii.hpp"
#include "lsii/montecarlo.hpp"
#include "lsii/stats.hpp"

namespace lsii::cli {

namespace {

struct Flags {
    std::string config, seed, out, threads, grid, bandwidth, H, model, design, T, replications, input, column,
        kernel, lags, theta, block_size, window_fraction, level, boot_reps;
    std::vector<std::string> bounds;
    std::string theta_bounds, xi_bounds, phi_bounds, gamma_nu_bounds, sigma_bounds;
};

void add_flags(CLI::App* sub, Flags& f) {
    sub->add_option("--config", f.config, "JSON config file");
    sub->add_option("--seed", f.seed, "master seed (falls back to LSII_SEED)");
    sub->add_option("--out", f.out, "output CSV path (default: stdout)");
    sub->add_option("--threads", f.threads, "worker cap; 0 uses all cores");
    sub->add_option("--grid", f.grid, "comma-separated rescaled times");
    sub->add_option("--bandwidth", f.bandwidth, "kernel bandwidth or rule_of_thumb");
    sub->add_option("--H", f.H, "simulated paths per objective evaluation");
    sub->add_option("--model", f.model, "ls_ma1 | ls_sv | ar1_identity");
    sub->add_option("--design", f.design, "ls_ma1_a | ls_ma1_b | ls_ma1_c | ls_sv | custom");
    sub->add_option("--T", f.T, "sample size");
    sub->add_option("--replications", f.replications, "Monte Carlo replications");
    sub->add_option("--input", f.input, "input CSV");
    sub->add_option("--column", f.column, "value column of the input CSV");
    sub->add_option("--kernel", f.kernel, "gaussian | epanechnikov");
    sub->add_option("--lags", f.lags, "ARCH test lags");
    sub->add_option("--theta", f.theta, "constant theta for the custom design");
    sub->add_option("--block-size", f.block_size, "bootstrap block size b");
    sub->add_option("--window-fraction", f.window_fraction, "bootstrap window fraction B");
    sub->add_option("--level", f.level, "bootstrap band level");
    sub->add_option("--boot-reps", f.boot_reps, "bootstrap replications R");
    sub->add_option("--bounds", f.bounds, "NAME=LO,HI (repeatable)");
    sub->add_option("--theta-bounds", f.theta_bounds, "LO,HI for the MA coefficient");
    sub->add_option("--xi-bounds", f.xi_bounds, "LO,HI for xi");
    sub->add_option("--phi-bounds", f.phi_bounds, "LO,HI for phi");
    sub->add_option("--gamma-nu-bounds", f.gamma_nu_bounds, "LO,HI for gamma_nu");
    sub->add_option("--sigma-bounds", f.sigma_bounds, "LO,HI for sigma");
}

template <typename T>
T parse_flag(const std::string& text, const char* name) {
    std::istringstream in(text);
    T value{};
    in >> value;
    if (!in || !in.eof()) throw ParseError(std::string("cannot parse --") + name + " '" + text + "'", 0);
    return value;
}

std::uint64_t parse_seed(const std::string& text, const char* where) {
    if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos) {
        throw ParseError(std::string(where) + ": seed must be an unsigned integer, got '" + text + "'", 0);
    }
    try {
        return std::stoull(text);
    } catch (const std::exception&) {
        throw ParseError(std::string(where) + ": seed out of range", 0);
    }
}

RunConfig resolve(const Flags& f, const std::vector<std::string>& positional) {
    RunConfig c = f.config.empty() ? RunConfig{} : load_config(f.config);
    if (!f.seed.empty()) c.seed = parse_seed(f.seed, "--seed");
    if (!f.out.empty()) c.output = f.out;
    if (!f.threads.empty()) c.threads = parse_flag<int>(f.threads, "threads");
    if (!f.grid.empty()) c.grid = parse_list(f.grid);
    if (!f.bandwidth.empty()) {
        if (f.bandwidth == "rule_of_thumb") c.bandwidth.reset();
        else c.bandwidth = parse_flag<double>(f.bandwidth, "bandwidth");
    }
    if (!f.H.empty()) c.H = parse_flag<std::size_t>(f.H, "H");
    if (!f.model.empty()) c.model = f.model;
    if (!f.design.empty()) c.design = f.design;
    if (!f.T.empty()) c.T = parse_flag<std::size_t>(f.T, "T");
    if (!f.replications.empty()) c.replications = parse_flag<std::size_t>(f.replications, "replications");
    if (!f.input.empty()) c.input = f.input;
    if (!positional.empty()) c.input = positional.front();
    if (!f.column.empty()) c.column = f.column;
    if (!f.kernel.empty()) c.kernel = f.kernel;
    if (!f.lags.empty()) c.lags = parse_flag<int>(f.lags, "lags");
    if (!f.theta.empty()) c.theta = parse_flag<double>(f.theta, "theta");
    if (!f.block_size.empty()) c.bootstrap.block_size = parse_flag<std::size_t>(f.block_size, "block-size");
    if (!f.window_fraction.empty()) c.bootstrap.window_fraction = parse_flag<double>(f.window_fraction, "window-fraction");
    if (!f.level.empty()) c.bootstrap.level = parse_flag<double>(f.level, "level");
    if (!f.boot_reps.empty()) c.bootstrap.replications = parse_flag<std::size_t>(f.boot_reps, "boot-reps");
    for (const auto& b : f.bounds) {
        const auto eq = b.find('=');
        if (eq == std::string::npos) throw ParseError("--bounds expects NAME=LO,HI", 0);
        c.bounds[b.substr(0, eq)] = parse_bounds(b.substr(eq + 1));
    }
    const std::pair<const std::string*, const char*> named[] = {{&f.theta_bounds, "theta"},
                                                                 {&f.xi_bounds, "xi"},
                                                                 {&f.phi_bounds, "phi"},
                                                                 {&f.gamma_nu_bounds, "gamma_nu"},
                                                                 {&f.sigma_bounds, "sigma"}};
    for (const auto& [text, name] : named) {
        if (!text->empty()) c.bounds[name] = parse_bounds(*text);
    }
    if (!c.seed) {
        if (const char* env = std::getenv("LSII_SEED"); env && *env) c.seed = parse_seed(env, "LSII_SEED");
    }
    return c;
}

std::uint64_t seed_of(const RunConfig& c) { return c.seed.value_or(0); }

KernelSpec kernel_for(const RunConfig& c, std::size_t T) {
    return KernelSpec(parse_kernel_family(c.kernel), c.bandwidth ? *c.bandwidth : rule_of_thumb_bandwidth(T));
}

LiiConfig lii_config(const RunConfig& c, ModelKind model) {
    LiiConfig lii;
    lii.grid = c.grid.empty() ? default_grid() : c.grid;
    lii.H = c.H;
    lii.sim_length = c.sim_length;
    lii.seed = seed_of(c);
    lii.restarts = c.restarts;
    lii.tolerance = c.tolerance;
    lii.max_iterations = c.max_iterations;
    lii.threads = c.threads;
    lii.bounds = default_bounds(model);
    const auto names = theta_names(model);
    for (const auto& [name, b] : c.bounds) {
        const auto it = std::find(names.begin(), names.end(), name);
        if (it == names.end()) throw InvalidArgument("no parameter '" + name + "' in model " + to_string(model));
        if (!(b.upper > b.lower)) throw InvalidArgument("bounds for '" + name + "' are empty");
        lii.bounds[static_cast<std::size_t>(it - names.begin())] = b;
    }
    lii.validate();
    return lii;
}

// Reads the input and removes the regressor fit, globally or locally in time.
Series prepared_series(const RunConfig& c) {
    if (c.input.empty()) throw InvalidArgument("no input CSV given");
    const auto data = read_input_csv(c.input, c.column, c.regressors);
    const std::size_t T = data.values.size();
    if (T < 50) throw InvalidArgument("input has " + std::to_string(T) + " rows; at least 50 are required");
    Series y(data.values);
    if (data.regressors.empty() && !c.time_varying_mean) return y;

    Eigen::MatrixXd X(T, data.regressors.size() + 1);
    X.col(0).setOnes();
    for (std::size_t k = 0; k < data.regressors.size(); ++k) {
        for (std::size_t t = 0; t < T; ++t) X(t, k + 1) = data.regressors[k][t];
    }
    const Eigen::Map<const Eigen::VectorXd> Y(data.values.data(), static_cast<Eigen::Index>(T));
    std::vector<double> resid(T);
    if (c.time_varying_mean) {
        const auto kernel = kernel_for(c, T);
        for (std::size_t t = 0; t < T; ++t) {
            const auto b = local_least_squares(y, X, y.rescaled_time(t), kernel);
            resid[t] = data.values[t] - X.row(static_cast<Eigen::Index>(t)).dot(b);
        }
    } else {
        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
        if (qr.rank() < X.cols()) throw DegenerateInput("regressors are collinear");
        const Eigen::VectorXd r = Y - X * qr.solve(Y);
        for (std::size_t t = 0; t < T; ++t) resid[t] = r(static_cast<Eigen::Index>(t));
    }
    return Series(std::move(resid));
}

McDesign study_design(const RunConfig& c) {
    const auto kind = parse_design_kind(c.design);
    McDesign d = McDesign::named(kind, c.replications, seed_of(c));
    if (c.T > 0) d.T = c.T;
    if (kind == DesignKind::custom) {
        if (!c.theta) throw InvalidArgument("the custom design needs theta");
        d.custom.theta = ParamPath::constant(*c.theta);
    }
    d.lii = lii_config(c, design_model(kind));
    d.lii.threads = 1;
    d.kernel = kernel_for(c, d.T);
    d.threads = c.threads;
    return d;
}

int cmd_simulate(const RunConfig& c, std::ostream& csv, std::ostream& err) {
    auto d = study_design(c);
    const Series y = design_sample(d, 0);
    err << "seed=" << seed_of(c) << '\n';
    CsvWriter w(csv);
    w.comment("design", to_string(d.kind));
    w.comment("T", std::to_string(d.T));
    w.comment("seed", std::to_string(seed_of(c)));
    w.header({"t", "u", "value"});
    for (std::size_t t = 0; t < y.size(); ++t) {
        w.row({static_cast<double>(t + 1), y.rescaled_time(t), y[t]});
    }
    return ok;
}

void write_fit_metadata(CsvWriter& w, const RunConfig& c, ModelKind model, const KernelSpec& kernel,
                        std::size_t T) {
    w.comment("model", to_string(model));
    w.comment("T", std::to_string(T));
    w.comment("kernel", to_string(kernel.family()));
    w.comment("h", format_double(kernel.bandwidth()));
    w.comment("H", std::to_string(c.H));
    w.comment("seed", std::to_string(seed_of(c)));
}

void write_tau(std::ostream& out, const MultiplicativeFit& m) {
    CsvWriter w(out);
    w.header({"u", "tau_hat", "tau_check"});
    for (std::size_t i = 0; i < m.tau_hat.u.size(); ++i) {
        w.row({m.tau_hat.u[i], m.tau_hat.tau[i], m.tau_check.tau[i]});
    }
}

int cmd_estimate(const RunConfig& c, std::ostream& csv, std::ostream&) {
    const auto model = parse_model_kind(c.model);
    const Series y = prepared_series(c);
    const auto kernel = kernel_for(c, y.size());
    const auto lii = lii_config(c, model);
    const auto fit = estimate_path(y, model, kernel, lii);

    CsvWriter w(csv);
    write_fit_metadata(w, c, model, kernel, y.size());
    if (fit.multiplicative) {
        const auto& p = fit.multiplicative->params;
        w.comment("gjr_omega", format_double(p.omega));
        w.comment("gjr_alpha", format_double(p.alpha));
        w.comment("gjr_beta", format_double(p.beta));
        w.comment("gjr_gamma", format_double(p.gamma));
        w.comment("gjr_loglik", format_double(fit.multiplicative->log_likelihood));
    }
    if (model == ModelKind::ls_sv) {
        // phi, gamma_nu and sigma do not vary with u; report their grid medians.
        const auto names = theta_names(model);
        for (std::size_t k = 1; k < names.size(); ++k) {
            std::vector<double> v;
            for (const auto& p : fit.points) {
                if (p.converged) v.push_back(p.theta_hat.values[k]);
            }
            w.comment("median_" + names[k], v.empty() ? "nan" : format_double(median(v)));
        }
    }
    std::vector<std::string> header{"u"};
    for (const auto& n : theta_names(model)) header.push_back("theta_" + n);
    for (const auto& n : rho_names(model)) header.push_back("rho_obs_" + n);
    header.push_back("objective");
    header.push_back("converged");
    w.header(header);
    for (const auto& p : fit.points) {
        std::vector<double> row{p.u};
        row.insert(row.end(), p.theta_hat.values.begin(), p.theta_hat.values.end());
        row.insert(row.end(), p.rho_obs.values.begin(), p.rho_obs.values.end());
        row.push_back(p.objective_value);
        row.push_back(p.converged ? 1.0 : 0.0);
        w.row(row);
    }
    if (fit.multiplicative) {
        if (c.output.empty()) {
            csv << "# tau_grid\n";
            write_tau(csv, *fit.multiplicative);
        } else {
            std::ostringstream buffer;
            write_tau(buffer, *fit.multiplicative);
            std::ofstream side(c.output + ".tau.csv", std::ios::binary);
            if (!(side << buffer.str())) throw IoError("cannot write '" + c.output + ".tau.csv'");
        }
    }
    return ok;
}

void write_summary(std::ostream& csv, const RunConfig& c, const McDesign& d, const McSummary& s) {
    CsvWriter w(csv);
    w.comment("design", to_string(d.kind));
    w.comment("T", std::to_string(d.T));
    w.comment("replications", std::to_string(d.replications));
    w.comment("h", format_double(d.kernel->bandwidth()));
    w.comment("H", std::to_string(d.lii.H));
    w.comment("seed", std::to_string(seed_of(c)));
    w.header({"u", "truth", "q05", "q50", "q95", "bias", "rmse", "n_fail"});
    for (const auto& r : s.rows) {
        w.row({r.u, r.truth, r.q05, r.q50, r.q95, r.bias, r.rmse, static_cast<double>(s.failures)});
    }
}

int cmd_montecarlo(const RunConfig& c, std::ostream& csv, std::ostream& err) {
    const auto d = study_design(c);
    try {
        write_summary(csv, c, d, run_study(d));
        return ok;
    } catch (const StudyFailure& e) {
        write_summary(csv, c, d, e.partial());
        err << "error: " << e.what() << '\n';
        return study_failure;
    }
}

int cmd_bootstrap(const RunConfig& c, std::ostream& csv, std::ostream&) {
    const auto model = parse_model_kind(c.model);
    const Series y = prepared_series(c);
    const auto kernel = kernel_for(c, y.size());
    auto lii = lii_config(c, model);
    lii.threads = 1;
    const PathEstimator estimator = [&](const Series& s) {
        const auto fit = estimate_path(s, model, kernel, lii);
        std::vector<double> out;
        for (const auto& p : fit.points) {
            if (!p.converged || !std::isfinite(p.theta_hat.values.front())) {
                throw ConvergenceFailure("estimation failed at u = " + format_double(p.u), p.theta_hat.values,
                                         p.objective_value);
            }
            out.push_back(p.theta_hat.values.front());
        }
        return out;
    };
    LbbConfig boot;
    boot.block_size = c.bootstrap.block_size;
    boot.window_fraction = c.bootstrap.window_fraction;
    boot.replications = c.bootstrap.replications;
    boot.level = c.bootstrap.level;
    boot.seed = seed_of(c);
    boot.threads = c.threads;
    const auto table = lbb_confidence_bands(y, estimator, lii.grid, boot);

    CsvWriter w(csv);
    write_fit_metadata(w, c, model, kernel, y.size());
    w.comment("parameter", theta_names(model).front());
    w.comment("b", std::to_string(boot.block_size));
    w.comment("B", format_double(boot.window_fraction));
    w.comment("R", std::to_string(boot.replications));
    w.header({"u", "estimate", "lo", "hi", "level", "n_dropped"});
    for (const auto& r : table.rows) {
        w.row({r.u, r.estimate, r.lower, r.upper, r.level, static_cast<double>(table.dropped)});
    }
    return ok;
}

int cmd_arch_test(const RunConfig& c, std::ostream& csv, std::ostream&) {
    if (c.input.empty()) throw InvalidArgument("no input CSV given");
    const auto data = read_input_csv(c.input, c.column, {});
    const auto r = arch_lm_test(Series(data.values), c.lags);
    CsvWriter w(csv);
    w.header({"statistic", "dof", "pvalue", "lags", "critical_01"});
    w.row({r.statistic, static_cast<double>(r.dof), r.pvalue, static_cast<double>(r.lags),
           chi_square_quantile(0.99, r.dof)});
    return ok;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Local indirect inference for locally stationary models"};
    app.require_subcommand(1);
    Flags flags;
    std::vector<std::string> positional;
    struct Command {
        const char* name;
        const char* help;
        int (*run)(const RunConfig&, std::ostream&, std::ostream&);
    };
    const Command commands[] = {
        {"simulate", "simulate one path of a design; writes t,u,value", cmd_simulate},
        {"estimate", "L-II estimates on an input series", cmd_estimate},
        {"montecarlo", "replication study summary", cmd_montecarlo},
        {"bootstrap", "local block bootstrap bands", cmd_bootstrap},
        {"arch-test", "ARCH LM test on an input series", cmd_arch_test},
    };
    std::vector<CLI::App*> subs;
    for (const auto& cmd : commands) {
        auto* sub = app.add_subcommand(cmd.name, cmd.help);
        add_flags(sub, flags);
        sub->add_option("input_file", positional, "input CSV");
        subs.push_back(sub);
    }

    std::vector<const char*> argv{"lsii"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : parse_error;
    }

    try {
        const RunConfig config = resolve(flags, positional);
        for (std::size_t i = 0; i < subs.size(); ++i) {
            if (!subs[i]->parsed()) continue;
            std::ostringstream buffer;
            const int code = commands[i].run(config, buffer, err);
            if (config.output.empty()) {
                out << buffer.str();
            } else {
                std::ofstream file(config.output, std::ios::binary);
                if (!(file << buffer.str()) || !file.flush()) throw IoError("cannot write '" + config.output + "'");
            }
            return code;
        }
        return usage;
    } catch (const IoError& e) {
        err << "io error: " << e.what() << '\n';
        return io_error;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return parse_error;
    } catch (const DegenerateInput& e) {
        err << "degenerate input: " << e.what() << '\n';
        return degenerate;
    } catch (const BootstrapFailure& e) {
        err << "bootstrap failure: " << e.what() << '\n';
        return study_failure;
    } catch (const InvalidArgument& e) {
        err << "invalid argument: " << e.what() << '\n';
        return parse_error;
    } catch (const ConvergenceFailure& e) {
        err << "estimation failed: " << e.what() << '\n';
        return degenerate;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return usage;
    }
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run_cli(args, out, err);
}

}  // namespace lsii::cli

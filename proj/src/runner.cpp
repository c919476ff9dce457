#include "gencoord/runner.hpp"

#include <filesystem>
#include <fstream>
#include <functional>
#include <future>
#include <iostream>
#include <unsupported/Eigen/MatrixFunctions>

#include "gencoord/csv.hpp"
#include "gencoord/gen_filter.hpp"
#include "gencoord/integrators.hpp"
#include "gencoord/least_action.hpp"
#include "gencoord/linear_analysis.hpp"
#include "gencoord/sampling.hpp"

namespace gencoord {

namespace {

using nlohmann::json;

[[noreturn]] void config_error(const std::string& field, const std::string& msg) {
    throw InvalidArgument("config field '" + field + "': " + msg);
}

double require_number(const json& cfg, const std::string& field) {
    if (!cfg.contains(field)) config_error(field, "missing");
    if (!cfg[field].is_number()) config_error(field, "must be a number");
    return cfg[field].get<double>();
}

double number_or(const json& cfg, const std::string& field, double fallback) {
    if (!cfg.contains(field)) return fallback;
    if (!cfg[field].is_number()) config_error(field, "must be a number");
    return cfg[field].get<double>();
}

int int_or(const json& cfg, const std::string& field, int fallback) {
    if (!cfg.contains(field)) return fallback;
    if (!cfg[field].is_number_integer()) config_error(field, "must be an integer");
    return cfg[field].get<int>();
}

std::string string_or(const json& cfg, const std::string& field,
                      const std::string& fallback) {
    if (!cfg.contains(field)) return fallback;
    if (!cfg[field].is_string()) config_error(field, "must be a string");
    return cfg[field].get<std::string>();
}

Eigen::MatrixXd matrix_from_json(const json& j, const std::string& field) {
    if (!j.is_array() || j.empty()) config_error(field, "must be a non-empty array of rows");
    const size_t rows = j.size();
    const size_t cols = j[0].is_array() ? j[0].size() : 0;
    if (cols == 0) config_error(field, "rows must be non-empty arrays");
    Eigen::MatrixXd A(rows, cols);
    for (size_t i = 0; i < rows; ++i) {
        if (!j[i].is_array() || j[i].size() != cols)
            config_error(field, "rows must all have the same length");
        for (size_t k = 0; k < cols; ++k) A(i, k) = j[i][k].get<double>();
    }
    return A;
}

Eigen::VectorXd vector_from_json(const json& j, const std::string& field) {
    if (!j.is_array() || j.empty()) config_error(field, "must be a non-empty array");
    Eigen::VectorXd v(j.size());
    for (size_t i = 0; i < j.size(); ++i) v(i) = j[i].get<double>();
    return v;
}

Eigen::VectorXd initial_state(const json& cfg, int d) {
    if (!cfg.contains("z")) return Eigen::VectorXd::Zero(d);
    const Eigen::VectorXd z = vector_from_json(cfg["z"], "z");
    if (z.size() != d) config_error("z", "length must match the state dimension");
    return z;
}

std::uint64_t effective_seed(const json& cfg, const CliOptions& opt) {
    if (opt.seed) return *opt.seed;
    if (cfg.contains("seed")) return cfg["seed"].get<std::uint64_t>();
    return 0;
}

std::vector<double> time_grid(double dt, double T) {
    if (dt <= 0.0) config_error("dt", "must be positive");
    if (T < 0.0) config_error("T", "must be non-negative");
    const int n = static_cast<int>(std::round(T / dt));
    std::vector<double> grid;
    grid.reserve(n + 1);
    for (int k = 0; k <= n; ++k) grid.push_back(k * dt);
    return grid;
}

FlowMode mode_from_config(const json& cfg, FlowMode fallback) {
    const std::string mode = string_or(cfg, "mode", "");
    if (mode.empty()) return fallback;
    if (mode == "exact") return FlowMode::Exact;
    if (mode == "linear") return FlowMode::Linear;
    config_error("mode", "must be 'exact' or 'linear'");
}

void write_report(const std::string& out_dir, const json& report) {
    std::ofstream out(out_dir + "/report.json", std::ios::binary);
    if (!out) throw Error("cannot write report.json in " + out_dir);
    out << report.dump(2) << '\n';
}

std::string member_name(const std::string& stem, int i) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%03d", i);
    return stem + "_" + buf + ".csv";
}

int run_guarded(const std::function<int()>& body) {
    try {
        return body();
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace

ModelSpec model_from_config(const json& cfg) {
    const std::string scenario = string_or(cfg, "scenario", "");
    if (scenario.empty()) config_error("scenario", "missing");
    const json model = cfg.contains("model") ? cfg["model"] : json::object();

    if (scenario == "linear1d") {
        Eigen::MatrixXd A(1, 1);
        A(0, 0) = number_or(model, "a", -1.0);
        return ModelSpec::linear(A);
    }
    if (scenario == "linear2d" || scenario == "custom") {
        if (!model.contains("A")) config_error("model.A", "missing");
        const Eigen::MatrixXd A = matrix_from_json(model["A"], "model.A");
        if (A.rows() != A.cols()) config_error("model.A", "must be square");
        if (scenario == "linear2d" && A.rows() != 2)
            config_error("model.A", "linear2d needs a 2x2 matrix");
        return ModelSpec::linear(A);
    }
    if (scenario == "lotka_volterra") {
        return ModelSpec::lotka_volterra(
            number_or(model, "alpha", 1.0), number_or(model, "beta", 1.0),
            number_or(model, "gamma", 1.0), number_or(model, "delta", 1.0));
    }
    if (scenario == "lorenz") {
        return ModelSpec::lorenz(number_or(model, "sigma", 10.0),
                                 number_or(model, "rho", 28.0),
                                 number_or(model, "beta", 8.0 / 3.0),
                                 number_or(model, "speed", 1.0));
    }
    config_error("scenario",
                 "must be linear1d | linear2d | lotka_volterra | lorenz | custom");
}

KernelSpec kernel_from_config(const json& cfg, int base_dim) {
    if (!cfg.is_object()) config_error("kernel", "must be an object");
    const std::string family = string_or(cfg, "family", "gaussian");
    const double amplitude = number_or(cfg, "amplitude", 1.0);
    if (family == "gaussian") {
        const double sigma = number_or(cfg, "sigma", 1.0);
        if (sigma <= 0.0) config_error("kernel.sigma", "must be positive");
        return KernelSpec::gaussian(sigma, base_dim, amplitude);
    }
    if (family == "square_rational") return KernelSpec::square_rational(base_dim, amplitude);
    if (family == "custom_series") {
        if (!cfg.contains("coeffs")) config_error("kernel.coeffs", "missing");
        std::vector<double> coeffs = cfg["coeffs"].get<std::vector<double>>();
        return KernelSpec::custom_series(std::move(coeffs), base_dim,
                                         number_or(cfg, "radius", 0.5));
    }
    config_error("kernel.family",
                 "must be gaussian | square_rational | custom_series");
}

int cmd_simulate(const json& cfg, const CliOptions& opt) {
    return run_guarded([&]() -> int {
        const ModelSpec model = model_from_config(cfg);
        const int d = model.state_dim;
        const KernelSpec kernel =
            kernel_from_config(cfg.contains("kernel") ? cfg["kernel"] : json::object(), d);
        const int N = int_or(cfg, "N", 6);
        if (N < 1) config_error("N", "must be >= 1");
        const int ensemble = int_or(cfg, "ensemble", 1);
        if (ensemble < 1) config_error("ensemble", "must be >= 1");
        const double dt = require_number(cfg, "dt");
        const double T = require_number(cfg, "T");
        const std::vector<double> grid = time_grid(dt, T);
        const Eigen::VectorXd z = initial_state(cfg, d);
        const std::uint64_t seed = effective_seed(cfg, opt);
        const std::string method = string_or(cfg, "method", "zigzag");
        if (method != "zigzag" && method != "zigzag_linear" && method != "euler")
            config_error("method", "must be zigzag | zigzag_linear | euler");

        std::filesystem::create_directories(opt.out_dir);

        auto run_member = [&](int i) -> Trajectory {
            const std::uint64_t s = seed + static_cast<std::uint64_t>(i);
            if (method == "euler")
                return euler_baseline(model, z, kernel.sigma, dt, T, s, kernel.amplitude);
            const FlowMode mode =
                method == "zigzag" ? FlowMode::Exact : FlowMode::Linear;
            return zigzag_trajectory(model, z, kernel, N, grid, mode, s);
        };

        std::vector<std::future<Trajectory>> futs;
        futs.reserve(ensemble);
        for (int i = 0; i < ensemble; ++i)
            futs.push_back(std::async(std::launch::async, run_member, i));

        std::vector<Trajectory> trajectories;
        trajectories.reserve(ensemble);
        for (auto& f : futs) trajectories.push_back(f.get());

        json blow_ups = json::array();
        for (int i = 0; i < ensemble; ++i) {
            const Trajectory& tr = trajectories[i];
            CsvTable table;
            table.header.push_back("t");
            for (int c = 1; c <= d; ++c) table.header.push_back("x_" + std::to_string(c));
            for (size_t k = 0; k < tr.times.size(); ++k) {
                std::vector<double> row;
                row.push_back(tr.times[k]);
                for (int c = 0; c < d; ++c) row.push_back(tr.states[k](c));
                table.rows.push_back(std::move(row));
            }
            write_csv(opt.out_dir + "/" + member_name("trajectory", i), table);
            if (tr.blow_up_time)
                blow_ups.push_back({{"member", i}, {"time", *tr.blow_up_time}});
        }

        // Ensemble mean/variance over the members still alive at each time.
        CsvTable summary;
        summary.header.push_back("t");
        for (int c = 1; c <= d; ++c) summary.header.push_back("mean_" + std::to_string(c));
        for (int c = 1; c <= d; ++c) summary.header.push_back("var_" + std::to_string(c));
        for (size_t k = 0; k < grid.size(); ++k) {
            Eigen::VectorXd mean = Eigen::VectorXd::Zero(d);
            Eigen::VectorXd sq = Eigen::VectorXd::Zero(d);
            int alive = 0;
            for (const Trajectory& tr : trajectories) {
                if (k >= tr.times.size()) continue;
                mean += tr.states[k];
                sq += tr.states[k].cwiseAbs2();
                ++alive;
            }
            if (alive == 0) break;
            mean /= alive;
            const Eigen::VectorXd var = sq / alive - mean.cwiseAbs2();
            std::vector<double> row;
            row.push_back(grid[k]);
            for (int c = 0; c < d; ++c) row.push_back(mean(c));
            for (int c = 0; c < d; ++c) row.push_back(std::max(0.0, var(c)));
            summary.rows.push_back(std::move(row));
        }
        write_csv(opt.out_dir + "/summary.csv", summary);

        write_report(opt.out_dir, {{"command", "simulate"},
                                   {"method", method},
                                   {"seed", seed},
                                   {"ensemble", ensemble},
                                   {"blow_ups", blow_ups}});
        if (!blow_ups.empty() && !opt.allow_blowup) {
            std::cerr << "error: " << blow_ups.size()
                      << " trajectory blow-up(s); rerun with --allow-blowup to accept\n";
            return 2;
        }
        return 0;
    });
}

namespace {

// Noise-free reference path: matrix exponential for linear flows, RK4 otherwise.
std::vector<Eigen::VectorXd> reference_path(const ModelSpec& model,
                                            const Eigen::VectorXd& z,
                                            const std::vector<double>& times) {
    std::vector<Eigen::VectorXd> out;
    out.reserve(times.size());
    if (model.builtin == Builtin::Linear) {
        for (double t : times) out.push_back((model.A * t).exp() * z);
        return out;
    }
    Eigen::VectorXd x = z;
    double t = 0.0;
    for (double target : times) {
        const int sub = 16;
        const double h = (target - t) / sub;
        for (int k = 0; k < sub && h > 0.0; ++k) {
            const Eigen::VectorXd k1 = model.eval_flow(x);
            const Eigen::VectorXd k2 = model.eval_flow(x + 0.5 * h * k1);
            const Eigen::VectorXd k3 = model.eval_flow(x + 0.5 * h * k2);
            const Eigen::VectorXd k4 = model.eval_flow(x + h * k3);
            x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
        t = target;
        out.push_back(x);
    }
    return out;
}

}  // namespace

int cmd_least_action(const json& cfg, const CliOptions& opt) {
    return run_guarded([&]() -> int {
        const ModelSpec model = model_from_config(cfg);
        const int d = model.state_dim;
        const KernelSpec kernel =
            kernel_from_config(cfg.contains("kernel") ? cfg["kernel"] : json::object(), d);
        const int N = int_or(cfg, "N", 3);
        if (N < 1) config_error("N", "must be >= 1");
        const double dt = require_number(cfg, "dt");
        const double T = require_number(cfg, "T");
        const Eigen::VectorXd z = initial_state(cfg, d);
        const FlowMode mode = mode_from_config(cfg, FlowMode::Exact);

        std::vector<double> lambdas;
        if (!cfg.contains("lambda")) config_error("lambda", "missing");
        if (cfg["lambda"].is_array())
            lambdas = cfg["lambda"].get<std::vector<double>>();
        else
            lambdas.push_back(cfg["lambda"].get<double>());
        for (double l : lambdas)
            if (l <= 0.0) config_error("lambda", "entries must be positive");

        std::filesystem::create_directories(opt.out_dir);
        const LagrangianContext ctx(model, build_gen_cov(kernel, N, d), mode);

        std::vector<std::future<DescentResult>> futs;
        futs.reserve(lambdas.size());
        for (double l : lambdas)
            futs.push_back(std::async(std::launch::async, [&, l] {
                return regularized_descent(ctx, z, l, dt, T);
            }));

        json runs = json::array();
        bool any_blow_up = false;
        for (size_t i = 0; i < lambdas.size(); ++i) {
            const DescentResult res = futs[i].get();
            const std::vector<Eigen::VectorXd> ref =
                reference_path(model, z, res.trajectory.times);
            CsvTable table;
            table.header.push_back("t");
            for (int c = 1; c <= d; ++c) table.header.push_back("x_" + std::to_string(c));
            table.header.push_back("lagrangian");
            for (int c = 1; c <= d; ++c) table.header.push_back("ref_" + std::to_string(c));
            table.header.push_back("err");
            double sup_err = 0.0;
            for (size_t k = 0; k < res.trajectory.times.size(); ++k) {
                std::vector<double> row;
                row.push_back(res.trajectory.times[k]);
                for (int c = 0; c < d; ++c) row.push_back(res.trajectory.states[k](c));
                row.push_back(res.lagrangian_trace[k]);
                for (int c = 0; c < d; ++c) row.push_back(ref[k](c));
                const double err =
                    (res.trajectory.states[k] - ref[k]).lpNorm<Eigen::Infinity>();
                sup_err = std::max(sup_err, err);
                row.push_back(err);
                table.rows.push_back(std::move(row));
            }
            const std::string name = member_name("least_action", static_cast<int>(i));
            write_csv(opt.out_dir + "/" + name, table);
            json run = {{"file", name}, {"lambda", lambdas[i]}, {"sup_err", sup_err}};
            if (res.trajectory.blow_up_time) {
                run["blow_up_time"] = *res.trajectory.blow_up_time;
                any_blow_up = true;
            }
            runs.push_back(std::move(run));
        }
        write_report(opt.out_dir, {{"command", "least-action"}, {"runs", runs}});
        if (any_blow_up && !opt.allow_blowup) {
            std::cerr << "error: least-action descent blew up; "
                         "rerun with --allow-blowup to accept\n";
            return 2;
        }
        return 0;
    });
}

int cmd_filter(const json& cfg, const CliOptions& opt) {
    return run_guarded([&]() -> int {
        ModelSpec model = model_from_config(cfg);
        const std::string obs = string_or(cfg, "obs", "sum");
        if (obs == "sum")
            model.with_sum_obs();
        else if (obs != "none")
            config_error("obs", "must be 'sum' (or 'none' with a data file)");
        const int d = model.state_dim;

        const int N = int_or(cfg, "N", 6);
        const int M = int_or(cfg, "M", N);
        if (N < 1) config_error("N", "must be >= 1");
        if (M > N || M < 0) config_error("M", "must satisfy 0 <= M <= N");
        const double obs_dt = require_number(cfg, "dt");
        const double T = require_number(cfg, "T");
        const double lambda = number_or(cfg, "lambda", 1.0);
        const double dt_integrate = number_or(cfg, "dt_integrate", obs_dt);
        const FlowMode mode = mode_from_config(cfg, FlowMode::Linear);
        const std::uint64_t seed = effective_seed(cfg, opt);
        const std::string embedding = string_or(cfg, "embedding", "inverse_taylor");
        if (embedding != "inverse_taylor" && embedding != "finite_diff")
            config_error("embedding", "must be inverse_taylor | finite_diff");

        const KernelSpec kernel =
            kernel_from_config(cfg.contains("kernel") ? cfg["kernel"] : json::object(), d);
        if (!model.obs_map) throw InvalidArgument("no-observation-model: attach one via obs");
        const int m = model.obs_dim;
        const KernelSpec obs_kernel = kernel_from_config(
            cfg.contains("obs_kernel") ? cfg["obs_kernel"] : json::object(), m);

        // Observation series: synthesized from the generative process, or read
        // from a data file with columns t, y_1..y_m.
        std::vector<Eigen::VectorXd> series;
        std::vector<Eigen::VectorXd> truth;  // empty when reading from file
        std::vector<double> times;
        const bool synthetic = !cfg.contains("data");
        if (synthetic) {
            const Eigen::VectorXd z = initial_state(cfg, d);
            const Trajectory latent =
                euler_baseline(model, z, kernel.sigma, obs_dt, T, seed, kernel.amplitude);
            if (latent.blow_up_time)
                throw NumericalError("filter: synthetic latent path blew up");
            const std::vector<Eigen::VectorXd> obs_noise = convolved_white_noise(
                m, obs_kernel.sigma, obs_dt, T, seed + 0x9e3779b97f4a7c15ull,
                obs_kernel.amplitude);
            for (size_t k = 0; k < latent.times.size(); ++k) {
                times.push_back(latent.times[k]);
                truth.push_back(latent.states[k]);
                series.push_back(model.eval_obs(latent.states[k]) + obs_noise[k]);
            }
        } else {
            const CsvTable data = read_csv(cfg["data"].get<std::string>());
            if (static_cast<int>(data.header.size()) != m + 1)
                config_error("data", "expected columns t, y_1..y_m");
            for (const auto& row : data.rows) {
                times.push_back(row[0]);
                Eigen::VectorXd y(m);
                for (int c = 0; c < m; ++c) y(c) = row[c + 1];
                series.push_back(y);
            }
        }

        auto embed_series = [&](int order) {
            std::vector<GenObservation> out;
            for (int k = order; k < static_cast<int>(series.size()); ++k) {
                GenObservation o = embedding == "finite_diff"
                                       ? embed_finite_diff(series, obs_dt, order, k)
                                       : embed_inverse_taylor(series, obs_dt, order, k);
                o.time = times[k];
                out.push_back(std::move(o));
            }
            if (out.empty())
                throw InvalidArgument("not-enough-samples: series shorter than M+1");
            return out;
        };

        auto build_gm = [&](int order_N, int order_M) {
            return GenerativeModel(model, order_N, order_M,
                                   build_gen_cov(kernel, order_N, d),
                                   build_gen_cov(obs_kernel, order_M + 1, m), lambda,
                                   mode);
        };

        std::filesystem::create_directories(opt.out_dir);
        json report = {{"command", "filter"}, {"seed", seed}, {"synthetic", synthetic}};

        int run_N = N, run_M = M;
        if (cfg.contains("select_order")) {
            const std::vector<int> candidates =
                cfg["select_order"].get<std::vector<int>>();
            const OrderSelection sel = select_order(
                candidates, [&](int n) { return build_gm(n, n); },
                [&](int n) { return embed_series(n); }, dt_integrate);
            CsvTable table;
            table.header = {"candidate", "integrated_free_energy"};
            for (size_t i = 0; i < sel.candidates.size(); ++i)
                table.rows.push_back({static_cast<double>(sel.candidates[i]),
                                      sel.integrated_free_energy[i]});
            write_csv(opt.out_dir + "/order_selection.csv", table);
            report["best_order"] = sel.best_order;
            run_N = run_M = sel.best_order;
        }

        const GenerativeModel gm = build_gm(run_N, run_M);
        const std::vector<GenObservation> observations = embed_series(run_M);
        const std::vector<FilterState> states = run_filter(
            gm, observations, default_initial_mean(gm, observations.front()),
            dt_integrate);

        CsvTable table;
        table.header.push_back("t");
        for (int c = 1; c <= d; ++c) table.header.push_back("mu0_" + std::to_string(c));
        table.header.push_back("free_energy");
        const bool have_truth = !truth.empty();
        if (have_truth) table.header.push_back("rmse");
        double sum_sq = 0.0;
        long count = 0;
        for (const FilterState& st : states) {
            std::vector<double> row;
            row.push_back(st.time);
            for (int c = 0; c < d; ++c) row.push_back(st.mu[0](c));
            row.push_back(st.free_energy);
            if (have_truth) {
                const int k = static_cast<int>(std::round(st.time / obs_dt));
                const double sq = (st.mu[0] - truth[k]).squaredNorm() / d;
                sum_sq += sq;
                ++count;
                row.push_back(std::sqrt(sq));
            }
            table.rows.push_back(std::move(row));
        }
        write_csv(opt.out_dir + "/filter.csv", table);
        if (have_truth) {
            CsvTable truth_table;
            truth_table.header.push_back("t");
            for (int c = 1; c <= d; ++c)
                truth_table.header.push_back("x_" + std::to_string(c));
            for (size_t k = 0; k < truth.size(); ++k) {
                std::vector<double> row;
                row.push_back(times[k]);
                for (int c = 0; c < d; ++c) row.push_back(truth[k](c));
                truth_table.rows.push_back(std::move(row));
            }
            write_csv(opt.out_dir + "/truth.csv", truth_table);

            // dynamics-free reference: observation pseudo-inverse per sample
            const Eigen::MatrixXd pinv = model.obs_jacobian(Eigen::VectorXd::Zero(d))
                                             .completeOrthogonalDecomposition()
                                             .pseudoInverse();
            double base_sq = 0.0;
            long base_count = 0;
            for (const FilterState& st : states) {
                const int k = static_cast<int>(std::round(st.time / obs_dt));
                base_sq += (pinv * series[k] - truth[k]).squaredNorm() / d;
                ++base_count;
            }
            report["rmse"] = std::sqrt(sum_sq / count);
            report["baseline_rmse"] = std::sqrt(base_sq / base_count);
        }
        write_report(opt.out_dir, report);
        return 0;
    });
}

int cmd_linear_analysis(const json& cfg, const CliOptions& opt) {
    return run_guarded([&]() -> int {
        const ModelSpec model = model_from_config(cfg);
        if (model.builtin != Builtin::Linear)
            config_error("scenario", "linear-analysis needs a linear model");
        const int d = model.state_dim;
        const KernelSpec kernel =
            kernel_from_config(cfg.contains("kernel") ? cfg["kernel"] : json::object(), d);
        const int N = int_or(cfg, "N", 12);
        if (N < 1) config_error("N", "must be >= 1");
        const double dt = require_number(cfg, "dt");
        const double T = require_number(cfg, "T");
        const Eigen::VectorXd z = initial_state(cfg, d);
        const double R = number_or(cfg, "R", 0.5);

        const LinearModel lm{model.A, z, kernel};
        CsvTable table;
        table.header.push_back("t");
        for (int c = 1; c <= d; ++c) table.header.push_back("mean_" + std::to_string(c));
        for (int i = 1; i <= d; ++i)
            table.header.push_back("var_" + std::to_string(i) + std::to_string(i));
        for (int i = 1; i <= d; ++i)
            for (int j = i + 1; j <= d; ++j)
                table.header.push_back("var_" + std::to_string(i) + std::to_string(j));
        for (double t : time_grid(dt, T)) {
            const Eigen::VectorXd mean = linear_mean(lm, N, t);
            const Eigen::MatrixXd cov = linear_cov(lm, N, t, t);
            std::vector<double> row;
            row.push_back(t);
            for (int c = 0; c < d; ++c) row.push_back(mean(c));
            for (int i = 0; i < d; ++i) row.push_back(cov(i, i));
            for (int i = 0; i < d; ++i)
                for (int j = i + 1; j < d; ++j) row.push_back(cov(i, j));
            table.rows.push_back(std::move(row));
        }
        std::filesystem::create_directories(opt.out_dir);
        write_csv(opt.out_dir + "/analysis.csv", table);
        write_report(opt.out_dir,
                     {{"command", "linear-analysis"},
                      {"R", R},
                      {"convergence_radius", convergence_radius(model.A, R)}});
        return 0;
    });
}

}  // namespace gencoord

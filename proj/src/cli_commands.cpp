// Copyright 2026 The pulsekit Authors.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pulsekit/cli_commands.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pulsekit/csv.hpp"
#include "pulsekit/diagnostics.hpp"
#include "pulsekit/dynamics.hpp"
#include "pulsekit/errors.hpp"
#include "pulsekit/fliess.hpp"
#include "pulsekit/lie_engine.hpp"
#include "pulsekit/model_config.hpp"
#include "pulsekit/operators.hpp"
#include "pulsekit/parallel.hpp"
#include "pulsekit/svg.hpp"
#include "pulsekit/training.hpp"

namespace pulsekit {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

json load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("config: cannot open " + path);
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error& err) {
        throw ConfigError("config: " + std::string(err.what()));
    }
}

const json& require_key(const json& j, const std::string& key) {
    if (!j.contains(key)) {
        throw ConfigError("config: missing required key \"" + key + "\"");
    }
    return j[key];
}

std::string out_path(const CliOptions& options, const std::string& name) {
    fs::create_directories(options.out_dir);
    return (fs::path(options.out_dir) / name).string();
}

std::uint64_t effective_seed(const CliOptions& options, const json& config) {
    if (options.seed) {
        return *options.seed;
    }
    return config.value("seed", std::uint64_t{0});
}

void write_text(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot open " + path);
    }
    out << content;
}

void write_json(const std::string& path, const json& j) {
    write_text(path, j.dump(2) + "\n");
}

int guarded(const std::function<int()>& body) {
    try {
        return body();
    } catch (const BudgetExceededError& err) {
        std::cerr << "error: " << err.what()
                  << " (required budget: " << err.required() << ")\n";
        return kExitBudget;
    } catch (const UnsupportedModelError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitUnsupported;
    } catch (const NumericalError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitNumerical;
    } catch (const ConfigError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitConfigError;
    } catch (const std::invalid_argument& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitConfigError;
    } catch (const json::exception& err) {
        std::cerr << "error: config: " << err.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
}

PulseSchedule schedule_from_config(const json& config, int channels,
                                   std::uint64_t seed) {
    const json& sched = require_key(config, "schedule");
    const int steps = require_key(sched, "K").get<int>();
    const double dt = require_key(sched, "dt").get<double>();
    const std::string init = sched.value("init", "random");
    const double init_scale = sched.value("init_scale", 1.0);
    if (init == "zero") {
        return PulseSchedule(Eigen::MatrixXd::Zero(steps, channels), dt);
    }
    if (init == "random") {
        return init_schedule(steps, channels, dt, init_scale, seed);
    }
    if (init == "table") {
        const json& table = require_key(sched, "amplitudes");
        Eigen::MatrixXd amplitudes(steps, channels);
        if (static_cast<int>(table.size()) != steps) {
            throw ConfigError("schedule.amplitudes: expected " +
                              std::to_string(steps) + " rows");
        }
        for (int k = 0; k < steps; ++k) {
            const auto& row = table[static_cast<std::size_t>(k)];
            if (static_cast<int>(row.size()) != channels) {
                throw ConfigError("schedule.amplitudes: row " + std::to_string(k) +
                                  " must have " + std::to_string(channels) +
                                  " entries");
            }
            for (int j = 0; j < channels; ++j) {
                amplitudes(k, j) = row[static_cast<std::size_t>(j)].get<double>();
            }
        }
        return PulseSchedule(std::move(amplitudes), dt);
    }
    throw ConfigError("schedule.init: expected \"random\", \"zero\" or \"table\"");
}

TargetKind parse_target_kind(const std::string& name) {
    if (name == "poly12") {
        return TargetKind::Poly12;
    }
    if (name == "poly12_scaled") {
        return TargetKind::Poly12Scaled;
    }
    if (name == "sigmoid10") {
        return TargetKind::Sigmoid10;
    }
    throw ConfigError("target: unknown target \"" + name +
                      "\" (expected poly12, poly12_scaled, sigmoid10 or a "
                      "{\"points\": ...} table)");
}

Dataset dataset_from_config(const json& config) {
    const json& target = require_key(config, "target");
    if (target.is_string()) {
        const int n_points = require_key(config, "n_points").get<int>();
        return sample_target(parse_target_kind(target.get<std::string>()), n_points);
    }
    if (target.is_object() && target.contains("points")) {
        std::vector<std::pair<double, double>> points;
        for (const auto& entry : target["points"]) {
            if (!entry.is_array() || entry.size() != 2) {
                throw ConfigError("target.points: entries must be [x, y] pairs");
            }
            points.emplace_back(entry[0].get<double>(), entry[1].get<double>());
        }
        return Dataset::from_points(points);
    }
    throw ConfigError("target: expected a target name or {\"points\": [[x,y],...]}");
}

std::function<double(double)> target_function(const json& config, const Dataset& data) {
    const json& target = require_key(config, "target");
    if (target.is_string()) {
        const TargetKind kind = parse_target_kind(target.get<std::string>());
        return [kind](double x) { return target_value(kind, x); };
    }
    // Custom table: piecewise-linear interpolation for the curve output.
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < data.size(); ++i) {
        xs.push_back(data.xs()[i][0]);
        ys.push_back(data.ys()[i]);
    }
    return [xs, ys](double x) {
        if (x <= xs.front()) {
            return ys.front();
        }
        for (std::size_t i = 1; i < xs.size(); ++i) {
            if (x <= xs[i]) {
                const double t = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
                return ys[i - 1] + t * (ys[i] - ys[i - 1]);
            }
        }
        return ys.back();
    };
}

ProbeIndex probe_from_config(const json& config) {
    ProbeIndex probe;
    if (!config.contains("probe")) {
        return probe;
    }
    const json& p = config["probe"];
    if (p.is_string() && p.get<std::string>() == "all") {
        probe.all = true;
        return probe;
    }
    if (p.is_array() && p.size() == 2) {
        probe.step = p[0].get<int>();
        probe.channel = p[1].get<int>();
        return probe;
    }
    throw ConfigError("probe: expected \"all\" or a [step, channel] pair (1-based)");
}

std::string verdict_name(ExpressivityVerdict verdict) {
    return verdict == ExpressivityVerdict::PassesNecessaryCondition
               ? "PASSES_NECESSARY_CONDITION"
               : "FAILS_NECESSARY_CONDITION";
}

void write_variance_csv(const std::string& path,
                        const std::vector<VarianceRecord>& records) {
    CsvWriter csv(path);
    csv.header({"family", "size", "K", "dt", "num_samples", "seed", "param_index",
                "variance"});
    for (const VarianceRecord& r : records) {
        if (r.per_parameter_variances) {
            const Eigen::MatrixXd& table = *r.per_parameter_variances;
            for (Eigen::Index k = 0; k < table.rows(); ++k) {
                for (Eigen::Index j = 0; j < table.cols(); ++j) {
                    csv.row({family_name(r.kind), std::int64_t{r.size},
                             std::int64_t{r.steps}, r.dt, std::int64_t{r.num_samples},
                             std::uint64_t{r.seed},
                             std::to_string(k + 1) + ":" + std::to_string(j + 1),
                             table(k, j)});
                }
            }
        } else {
            csv.row({family_name(r.kind), std::int64_t{r.size}, std::int64_t{r.steps},
                     r.dt, std::int64_t{r.num_samples}, std::uint64_t{r.seed},
                     r.param_index, r.variance});
        }
    }
}

} // namespace

int run_check_lie(const CliOptions& options) {
    return guarded([&]() {
        const json config = load_config(options.config_path);
        const ResolvedModel model = resolve_model(require_key(config, "model"));
        const Eigen::Index d = model.spec.dim();
        const int max_dim = config.value("max_dim", static_cast<int>(d * d));

        std::vector<Matrix> generators;
        generators.reserve(model.spec.controls().size());
        for (const HermitianOperator& h : model.spec.controls()) {
            generators.push_back(Complex(0.0, 1.0) * h.matrix());
        }
        const OperatorSubspace closure = lie_closure(generators, max_dim);
        const bool controllable = is_fully_controllable(closure);

        CsvWriter csv(out_path(options, "lie_report.csv"));
        csv.header({"model", "dim_space", "generators", "closure_dim", "controllable",
                    "truncated"});
        csv.row({model.description, std::int64_t{d},
                 std::int64_t{static_cast<std::int64_t>(generators.size())},
                 std::int64_t{closure.dimension()},
                 std::string(controllable ? "true" : "false"),
                 std::string(closure.truncated() ? "true" : "false")});

        std::ostringstream report;
        report << "model:            " << model.description << "\n"
               << "space dimension:  " << d << " (full algebra " << d * d - 1
               << " traceless directions)\n"
               << "generators:       " << generators.size() << "\n"
               << "closure dim:      " << closure.dimension()
               << (closure.truncated() ? " (truncated at max_dim)" : "") << "\n"
               << "controllable:     " << (controllable ? "yes" : "no") << "\n"
               << "basis elements:\n";
        const int label_cap = 64;
        const int labeled = std::min(closure.dimension(), label_cap);
        for (int i = 0; i < labeled; ++i) {
            report << "  b" << i << ": "
                   << pauli_label(closure.basis()[static_cast<std::size_t>(i)]) << "\n";
        }
        if (labeled < closure.dimension()) {
            report << "  ... (" << closure.dimension() - labeled
                   << " further elements omitted)\n";
        }
        write_text(out_path(options, "lie_report.txt"), report.str());

        if (options.json) {
            json j;
            j["model"] = model.description;
            j["dim_space"] = d;
            j["closure_dim"] = closure.dimension();
            j["controllable"] = controllable;
            j["truncated"] = closure.truncated();
            std::vector<std::string> labels;
            for (int i = 0; i < labeled; ++i) {
                labels.push_back(pauli_label(closure.basis()[static_cast<std::size_t>(i)]));
            }
            j["basis_labels"] = labels;
            j["basis_labels_truncated"] = labeled < closure.dimension();
            write_json(out_path(options, "lie_report.json"), j);
        }

        std::cout << "closure dimension " << closure.dimension() << " of " << d * d - 1
                  << "; controllable: " << (controllable ? "yes" : "no") << "\n";
        return kExitOk;
    });
}

int run_check_expressivity(const CliOptions& options) {
    return guarded([&]() {
        const json config = load_config(options.config_path);
        const ResolvedModel model = resolve_model(require_key(config, "model"));
        const int k_max = config.value("k_max", 8);
        const double tol = config.value("tolerance", 1e-10);

        const ExpressivityReport report = expressivity_check(model.spec, k_max, tol);

        CsvWriter csv(out_path(options, "expressivity_report.csv"));
        csv.header({"k", "subspace_dim", "max_abs_expectation", "vanishes"});
        for (const ExpressivityRow& row : report.per_k) {
            csv.row({std::int64_t{row.k}, std::int64_t{row.subspace_dim},
                     row.max_abs_expectation,
                     std::string(row.vanishes ? "true" : "false")});
        }

        std::ostringstream text;
        text << "model:   " << model.description << "\n"
             << "k_max:   " << report.k_max << "\n"
             << "period:  "
             << (report.period ? std::to_string(*report.period)
                               : std::string("none detected (chain inconclusive "
                                             "beyond k_max)"))
             << "\n"
             << "verdict: " << verdict_name(report.verdict) << "\n\n"
             << "  k  dim  max|<psi0|B|psi0>|  vanishes\n";
        for (const ExpressivityRow& row : report.per_k) {
            char line[96];
            std::snprintf(line, sizeof(line), "%3d  %3d  %18.9e  %s\n", row.k,
                          row.subspace_dim, row.max_abs_expectation,
                          row.vanishes ? "yes" : "no");
            text << line;
        }
        write_text(out_path(options, "expressivity_report.txt"), text.str());

        if (options.json) {
            json j;
            j["model"] = model.description;
            j["k_max"] = report.k_max;
            if (report.period) {
                j["period"] = *report.period;
            } else {
                j["period"] = nullptr;
            }
            j["verdict"] = verdict_name(report.verdict);
            json rows = json::array();
            for (const ExpressivityRow& row : report.per_k) {
                rows.push_back({{"k", row.k},
                                {"subspace_dim", row.subspace_dim},
                                {"max_abs_expectation", row.max_abs_expectation},
                                {"vanishes", row.vanishes}});
            }
            j["per_k"] = rows;
            write_json(out_path(options, "expressivity_report.json"), j);
        }

        std::cout << "verdict: " << verdict_name(report.verdict) << "\n";
        return kExitOk;
    });
}

int run_fit(const CliOptions& options) {
    return guarded([&]() {
        const json config = load_config(options.config_path);
        const ResolvedModel model = resolve_model(require_key(config, "model"));
        const std::uint64_t seed = effective_seed(options, config);

        const Dataset data = dataset_from_config(config);
        const PulseSchedule schedule_init =
            schedule_from_config(config, model.spec.control_count(), seed);

        TrainConfig train_config;
        const json train_json = config.value("train", json::object());
        train_config.learning_rate = train_json.value("learning_rate", 0.1);
        train_config.iterations = train_json.value("iterations", 100);
        train_config.adam_beta1 = train_json.value("beta1", 0.9);
        train_config.adam_beta2 = train_json.value("beta2", 0.999);
        train_config.adam_eps = train_json.value("epsilon", 1e-8);
        train_config.target_loss = train_json.value("target_loss", 0.0);
        train_config.seed = seed;

        const TrainResult result =
            train(model.spec, schedule_init, data, train_config, options.threads);

        CsvWriter losses(out_path(options, "loss_history.csv"));
        losses.header({"iteration", "loss", "gradient_norm"});
        for (std::size_t i = 0; i < result.loss_history.size(); ++i) {
            losses.row({static_cast<std::int64_t>(i), result.loss_history[i],
                        result.grad_norm_history[i]});
        }

        CsvWriter schedule_csv(out_path(options, "final_schedule.csv"));
        std::vector<std::string> columns{"step"};
        for (int j = 1; j <= result.final_schedule.channels(); ++j) {
            columns.push_back("theta_" + std::to_string(j));
        }
        schedule_csv.header(columns);
        for (int k = 0; k < result.final_schedule.steps(); ++k) {
            std::vector<CsvValue> row{static_cast<std::int64_t>(k + 1)};
            for (int j = 0; j < result.final_schedule.channels(); ++j) {
                row.emplace_back(result.final_schedule.amplitudes()(k, j));
            }
            schedule_csv.row(row);
        }

        const auto target_fn = target_function(config, data);
        const int curve_points = 401;
        std::vector<double> xs(curve_points), target_ys(curve_points),
            fitted_ys(curve_points);
        for (int i = 0; i < curve_points; ++i) {
            xs[static_cast<std::size_t>(i)] = -1.0 + 2.0 * i / (curve_points - 1);
        }
        parallel_for(static_cast<std::size_t>(curve_points), options.threads,
                     [&](std::size_t i) {
                         target_ys[i] = target_fn(xs[i]);
                         fitted_ys[i] =
                             predict(model.spec, xs[i], result.final_schedule);
                     });
        CsvWriter curve(out_path(options, "curve.csv"));
        curve.header({"x", "target", "fitted"});
        for (int i = 0; i < curve_points; ++i) {
            curve.row({xs[static_cast<std::size_t>(i)],
                       target_ys[static_cast<std::size_t>(i)],
                       fitted_ys[static_cast<std::size_t>(i)]});
        }

        if (options.svg) {
            svg::Plot plot("fit: " + model.description, "x", "f(x)");
            plot.add_series({xs, target_ys, "target"});
            plot.add_series({xs, fitted_ys, "fitted"});
            auto inset = std::make_shared<svg::Plot>("loss", "iteration", "MSE");
            std::vector<double> iters(result.loss_history.size());
            for (std::size_t i = 0; i < iters.size(); ++i) {
                iters[i] = static_cast<double>(i);
            }
            inset->set_log_y(true);
            inset->add_series({iters, result.loss_history, ""});
            plot.set_inset(inset);
            svg::write_file(out_path(options, "fit.svg"), plot.render());
        }

        if (options.json) {
            json j;
            j["model"] = model.description;
            j["seed"] = seed;
            j["iterations_recorded"] = result.loss_history.size();
            j["final_loss"] = result.loss_history.back();
            j["wall_time_seconds"] = result.wall_time_seconds;
            write_json(out_path(options, "fit.json"), j);
        }

        std::cout << "final loss " << csv_double(result.loss_history.back()) << " after "
                  << result.loss_history.size() - 1 << " updates\n";
        return kExitOk;
    });
}

int run_fliess(const CliOptions& options) {
    return guarded([&]() {
        const json config = load_config(options.config_path);
        const ResolvedModel model = resolve_model(require_key(config, "model"));
        const std::uint64_t seed = effective_seed(options, config);
        const PulseSchedule schedule =
            schedule_from_config(config, model.spec.control_count(), seed);
        const int max_len = config.value("max_len", kDefaultMaxLen);
        const int substeps = config.value("substeps", kDefaultSubsteps);
        const std::uint64_t budget = config.value("budget", kDefaultTupleBudget);
        const bool fd_oracle = config.value("fd_oracle", false);

        const SeriesTruncation series =
            taylor_series(model.spec, schedule, max_len, substeps, budget);

        CsvWriter csv(out_path(options, "fliess_coefficients.csv"));
        std::vector<std::string> columns{"k", "coefficient", "max_len",
                                         "tail_estimate"};
        if (fd_oracle) {
            columns.push_back("fd_oracle");
        }
        csv.header(columns);
        for (const CoefficientRow& row : series.coefficients) {
            std::vector<CsvValue> values{std::int64_t{row.k}, row.value,
                                         std::int64_t{series.max_len},
                                         row.tail_estimate};
            if (fd_oracle) {
                if (row.k <= 3) {
                    values.emplace_back(
                        fd_taylor_coefficient(model.spec, schedule, row.k));
                } else {
                    values.emplace_back(std::string(""));
                }
            }
            csv.row(values);
        }

        if (options.json) {
            json rows = json::array();
            for (const CoefficientRow& row : series.coefficients) {
                rows.push_back({{"k", row.k},
                                {"coefficient", row.value},
                                {"tail_estimate", row.tail_estimate}});
            }
            json j;
            j["model"] = model.description;
            j["max_len"] = series.max_len;
            j["coefficients"] = rows;
            write_json(out_path(options, "fliess_coefficients.json"), j);
        }

        std::cout << "computed " << series.coefficients.size()
                  << " series coefficients (max tuple length " << series.max_len
                  << ")\n";
        return kExitOk;
    });
}

int run_variance(const CliOptions& options) {
    return guarded([&]() {
        const json config = load_config(options.config_path);
        const std::uint64_t seed = effective_seed(options, config);

        // Either one "sweep" over the top-level "model", or a "sweeps" array
        // whose entries carry their own models; the latter writes comparison
        // series (for example controllable vs uncontrollable families) into a
        // single CSV, distinguishable by the family column.
        struct SweepJob {
            json model;
            json sweep;
        };
        std::vector<SweepJob> jobs;
        if (config.contains("sweeps")) {
            for (const json& entry : config["sweeps"]) {
                jobs.push_back(SweepJob{require_key(entry, "model"),
                                        require_key(entry, "sweep")});
            }
            if (jobs.empty()) {
                throw ConfigError("sweeps: expected a nonempty array");
            }
        } else {
            jobs.push_back(SweepJob{require_key(config, "model"),
                                    require_key(config, "sweep")});
        }

        std::vector<VarianceRecord> records;
        std::vector<std::pair<std::string, std::vector<VarianceRecord>>> series_records;
        std::string mode;
        for (const SweepJob& job : jobs) {
            const ResolvedModel model = resolve_model(job.model);
            if (!model.family) {
                throw ConfigError("model.family: variance sweeps require a named "
                                  "family (two_qubit_zz, spin_irrep or ring)");
            }
            mode = require_key(job.sweep, "mode").get<std::string>();
            const double dt = require_key(job.sweep, "dt").get<double>();
            const int num_samples = require_key(job.sweep, "num_samples").get<int>();
            const ProbeIndex probe = probe_from_config(job.sweep);

            std::vector<VarianceRecord> current;
            if (mode == "single") {
                const int steps = require_key(job.sweep, "K").get<int>();
                current.push_back(gradient_variance(*model.family, steps, dt,
                                                    num_samples, seed, probe, nullptr,
                                                    options.threads));
            } else if (mode == "size") {
                const int steps = require_key(job.sweep, "K").get<int>();
                const std::vector<int> sizes =
                    require_key(job.sweep, "sizes").get<std::vector<int>>();
                const int dim_budget = job.sweep.value("dim_budget", kDefaultDimBudget);
                current = sweep_size(*model.family, sizes, steps, dt, num_samples,
                                     seed, probe, options.threads, dim_budget);
            } else if (mode == "layers") {
                const std::vector<int> step_counts =
                    require_key(job.sweep, "K_values").get<std::vector<int>>();
                current = sweep_layers(*model.family, step_counts, dt, num_samples,
                                       seed, probe, options.threads);
            } else {
                throw ConfigError("sweep.mode: expected \"single\", \"size\" or "
                                  "\"layers\"");
            }
            series_records.emplace_back(family_name(model.family->kind), current);
            records.insert(records.end(), current.begin(), current.end());
        }

        write_variance_csv(out_path(options, "variance.csv"), records);

        if (options.svg && records.size() > 1) {
            const bool layer_sweep = mode == "layers";
            svg::Plot plot("gradient variance", layer_sweep ? "K" : "size",
                           "variance");
            plot.set_log_y(true);
            plot.set_log_x(layer_sweep);
            for (const auto& [label, recs] : series_records) {
                svg::Series series;
                for (const VarianceRecord& r : recs) {
                    series.x.push_back(layer_sweep ? static_cast<double>(r.steps)
                                                   : static_cast<double>(r.size));
                    series.y.push_back(r.variance);
                }
                series.label = label;
                plot.add_series(series);
            }
            svg::write_file(out_path(options, "variance.svg"), plot.render());
        }

        if (options.json) {
            json rows = json::array();
            for (const VarianceRecord& r : records) {
                rows.push_back({{"family", family_name(r.kind)},
                                {"size", r.size},
                                {"K", r.steps},
                                {"dt", r.dt},
                                {"num_samples", r.num_samples},
                                {"seed", r.seed},
                                {"param_index", r.param_index},
                                {"variance", r.variance}});
            }
            json j;
            j["records"] = rows;
            write_json(out_path(options, "variance.json"), j);
        }

        std::cout << "wrote " << records.size() << " variance record(s)\n";
        return kExitOk;
    });
}

} // namespace pulsekit

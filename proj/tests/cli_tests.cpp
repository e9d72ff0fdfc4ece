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

// End-to-end checks of the command line binary: exit codes, output files and
// byte-level determinism.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include <nlohmann/json.hpp>

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

fs::path scratch_dir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() /
                     ("pulsekit_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

fs::path write_config(const std::string& name, const json& config) {
    const fs::path path = scratch_dir() / name;
    std::ofstream out(path);
    out << config.dump(2);
    return path;
}

RunResult run_cli(const std::string& args, const std::string& tag) {
    const fs::path out_file = scratch_dir() / (tag + ".stdout");
    const fs::path err_file = scratch_dir() / (tag + ".stderr");
    const std::string command = std::string(PULSEKIT_CLI_PATH) + " " + args + " >" +
                                out_file.string() + " 2>" + err_file.string();
    const int status = std::system(command.c_str());
    RunResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    result.out = slurp(out_file);
    result.err = slurp(err_file);
    return result;
}

json ring2_model() { return {{"family", "ring"}, {"size", 2}}; }

} // namespace

TEST_CASE("missing config keys exit with code 2 and name the key") {
    const auto config = write_config("bad_model.json", {{"model", json::object()}});
    const RunResult r = run_cli("check-lie --config " + config.string() + " --out " +
                                    (scratch_dir() / "bad_out").string(),
                                "bad_model");
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("family") != std::string::npos);

    const RunResult missing = run_cli("check-lie --config " +
                                          (scratch_dir() / "nope.json").string(),
                                      "missing_file");
    CHECK(missing.exit_code == 2);
}

TEST_CASE("check-lie reports closure dimensions") {
    const auto ring_config = write_config("lie_ring2.json", {{"model", ring2_model()}});
    const fs::path out = scratch_dir() / "lie_ring2";
    const RunResult r = run_cli(
        "check-lie --config " + ring_config.string() + " --out " + out.string(),
        "lie_ring2");
    REQUIRE(r.exit_code == 0);
    const std::string csv = slurp(out / "lie_report.csv");
    CHECK(csv.find("closure_dim") != std::string::npos);
    CHECK(csv.find(",15,true,false") != std::string::npos);

    const auto spin_config = write_config(
        "lie_spin5.json", {{"model", {{"family", "spin_irrep"}, {"size", 5}}}});
    const fs::path spin_out = scratch_dir() / "lie_spin5";
    const RunResult s = run_cli("check-lie --config " + spin_config.string() +
                                    " --out " + spin_out.string() + " --json",
                                "lie_spin5");
    REQUIRE(s.exit_code == 0);
    CHECK(slurp(spin_out / "lie_report.csv").find(",3,false,false") !=
          std::string::npos);
    const json mirror = json::parse(slurp(spin_out / "lie_report.json"));
    CHECK(mirror["closure_dim"] == 3);
    CHECK(mirror["controllable"] == false);
}

TEST_CASE("check-expressivity verdicts and exit codes") {
    const auto pass_config = write_config(
        "expr_pass.json",
        {{"model",
          {{"family", "two_qubit_zz"}, {"size", 2}, {"initial_state", "zero_zero"}}},
         {"k_max", 5}});
    const fs::path pass_out = scratch_dir() / "expr_pass";
    const RunResult pass = run_cli("check-expressivity --config " +
                                       pass_config.string() + " --out " +
                                       pass_out.string(),
                                   "expr_pass");
    REQUIRE(pass.exit_code == 0);
    CHECK(slurp(pass_out / "expressivity_report.txt")
              .find("PASSES_NECESSARY_CONDITION") != std::string::npos);

    const auto fail_config = write_config(
        "expr_fail.json",
        {{"model",
          {{"family", "two_qubit_zz"}, {"size", 2}, {"initial_state", "zero_plus"}}},
         {"k_max", 5}});
    const fs::path fail_out = scratch_dir() / "expr_fail";
    const RunResult fail = run_cli("check-expressivity --config " +
                                       fail_config.string() + " --out " +
                                       fail_out.string(),
                                   "expr_fail");
    REQUIRE(fail.exit_code == 0); // the verdict is data, not an error
    const std::string csv = slurp(fail_out / "expressivity_report.csv");
    CHECK(csv.find("true") != std::string::npos);
    CHECK(slurp(fail_out / "expressivity_report.txt")
              .find("FAILS_NECESSARY_CONDITION") != std::string::npos);

    // k_max = 0 keeps only the first chain level.
    const auto k0_config = write_config(
        "expr_k0.json",
        {{"model", {{"family", "two_qubit_zz"}, {"size", 2}}}, {"k_max", 0}});
    const fs::path k0_out = scratch_dir() / "expr_k0";
    REQUIRE(run_cli("check-expressivity --config " + k0_config.string() + " --out " +
                        k0_out.string(),
                    "expr_k0")
                .exit_code == 0);
    const std::string k0_csv = slurp(k0_out / "expressivity_report.csv");
    CHECK(std::count(k0_csv.begin(), k0_csv.end(), '\n') == 2); // header + one row

    // Multivariate models are unsupported: exit 3.
    const auto multi_config = write_config(
        "expr_multi.json", {{"model",
                             {{"n_qubits", 1},
                              {"encoders", {"Z(1)", "X(1)"}},
                              {"controls", {"Y(1)"}},
                              {"observable", "Z(1)"},
                              {"initial_state", "|0>"}}}});
    const RunResult multi = run_cli("check-expressivity --config " +
                                        multi_config.string() + " --out " +
                                        (scratch_dir() / "expr_multi").string(),
                                    "expr_multi");
    CHECK(multi.exit_code == 3);
}

TEST_CASE("fit writes histories, schedules and curves deterministically") {
    const json config = {
        {"model", {{"family", "two_qubit_zz"}, {"size", 2}}},
        {"schedule", {{"K", 10}, {"dt", 0.1}}},
        {"target", "poly12_scaled"},
        {"n_points", 20},
        {"seed", 5},
        {"train", {{"learning_rate", 0.1}, {"iterations", 3}}}};
    const auto path = write_config("fit_small.json", config);
    const fs::path out_a = scratch_dir() / "fit_a";
    const fs::path out_b = scratch_dir() / "fit_b";
    REQUIRE(run_cli("fit --config " + path.string() + " --out " + out_a.string() +
                        " --svg --json",
                    "fit_a")
                .exit_code == 0);
    REQUIRE(run_cli("fit --config " + path.string() + " --out " + out_b.string() +
                        " --threads 2",
                    "fit_b")
                .exit_code == 0);

    const std::string loss_a = slurp(out_a / "loss_history.csv");
    CHECK(loss_a == slurp(out_b / "loss_history.csv"));
    CHECK(slurp(out_a / "final_schedule.csv") == slurp(out_b / "final_schedule.csv"));
    CHECK(slurp(out_a / "curve.csv") == slurp(out_b / "curve.csv"));
    CHECK(std::count(loss_a.begin(), loss_a.end(), '\n') == 5); // header + 4 records
    CHECK(fs::exists(out_a / "fit.svg"));
    CHECK(fs::exists(out_a / "fit.json"));

    // 0 iterations: a single loss record.
    json zero = config;
    zero["train"]["iterations"] = 0;
    const auto zero_path = write_config("fit_zero.json", zero);
    const fs::path zero_out = scratch_dir() / "fit_zero";
    REQUIRE(run_cli("fit --config " + zero_path.string() + " --out " +
                        zero_out.string(),
                    "fit_zero")
                .exit_code == 0);
    const std::string zero_loss = slurp(zero_out / "loss_history.csv");
    CHECK(std::count(zero_loss.begin(), zero_loss.end(), '\n') == 2);

    // Different seed changes the initial schedule and the loss history.
    const RunResult reseeded = run_cli("fit --config " + path.string() + " --out " +
                                           (scratch_dir() / "fit_c").string() +
                                           " --seed 99",
                                       "fit_c");
    REQUIRE(reseeded.exit_code == 0);
    CHECK(slurp(scratch_dir() / "fit_c" / "loss_history.csv") != loss_a);
}

TEST_CASE("fliess emits coefficients and honors budgets") {
    const json config = {{"model",
                          {{"family", "two_qubit_zz"},
                           {"size", 2},
                           {"initial_state", "zero_zero"}}},
                         {"schedule", {{"K", 3}, {"dt", 0.1}, {"init", "zero"}}},
                         {"max_len", 4},
                         {"fd_oracle", true}};
    const auto path = write_config("fliess_zero.json", config);
    const fs::path out = scratch_dir() / "fliess_zero";
    REQUIRE(run_cli("fliess --config " + path.string() + " --out " + out.string(),
                    "fliess_zero")
                .exit_code == 0);
    const std::string csv = slurp(out / "fliess_coefficients.csv");
    CHECK(csv.find("k,coefficient,max_len,tail_estimate,fd_oracle") !=
          std::string::npos);
    // With the drift commuting with the observable, C_0 = 1.
    CHECK(csv.find("0,1,") != std::string::npos);

    json over_budget = config;
    over_budget["budget"] = 3;
    const auto budget_path = write_config("fliess_budget.json", over_budget);
    const RunResult budget = run_cli("fliess --config " + budget_path.string() +
                                         " --out " +
                                         (scratch_dir() / "fliess_budget").string(),
                                     "fliess_budget");
    CHECK(budget.exit_code == 5);
    CHECK(budget.err.find("budget") != std::string::npos);
}

TEST_CASE("variance runs are reproducible and thread-count independent") {
    const json config = {{"model", {{"family", "two_qubit_zz"}, {"size", 2}}},
                         {"seed", 21},
                         {"sweep",
                          {{"mode", "single"},
                           {"K", 5},
                           {"dt", 0.1},
                           {"num_samples", 8}}}};
    const auto path = write_config("variance_single.json", config);
    const fs::path out_a = scratch_dir() / "var_a";
    const fs::path out_b = scratch_dir() / "var_b";
    REQUIRE(run_cli("variance --config " + path.string() + " --out " + out_a.string(),
                    "var_a")
                .exit_code == 0);
    REQUIRE(run_cli("variance --config " + path.string() + " --out " +
                        out_b.string() + " --threads 3",
                    "var_b")
                .exit_code == 0);
    const std::string csv = slurp(out_a / "variance.csv");
    CHECK(csv == slurp(out_b / "variance.csv"));
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);
    CHECK(csv.find("two_qubit_zz,2,5,") != std::string::npos);

    json sweep = config;
    sweep["model"] = {{"family", "spin_irrep"}, {"size", 2}};
    sweep["sweep"] = {{"mode", "size"}, {"sizes", {2, 3}},      {"K", 4},
                      {"dt", 0.1},      {"num_samples", 6},     {"probe", {1, 1}}};
    const auto sweep_path = write_config("variance_sweep.json", sweep);
    const fs::path sweep_out = scratch_dir() / "var_sweep";
    REQUIRE(run_cli("variance --config " + sweep_path.string() + " --out " +
                        sweep_out.string() + " --svg",
                    "var_sweep")
                .exit_code == 0);
    const std::string sweep_csv = slurp(sweep_out / "variance.csv");
    CHECK(std::count(sweep_csv.begin(), sweep_csv.end(), '\n') == 3);
    CHECK(fs::exists(sweep_out / "variance.svg"));

    // Distinct seeds produce distinct records.
    const fs::path out_c = scratch_dir() / "var_c";
    REQUIRE(run_cli("variance --config " + path.string() + " --out " +
                        out_c.string() + " --seed 22",
                    "var_c")
                .exit_code == 0);
    CHECK(slurp(out_c / "variance.csv") != csv);
}

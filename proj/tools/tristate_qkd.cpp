// Copyright 2026 The tristate-qkd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: parameter sweeps, single evaluations from a statistics
// file, and randomized validation of the bound against exact entropies.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tristate/tristate.hpp"

namespace {

enum ExitCode : int {
    kOk = 0,
    kIoError = 1,
    kUsage = 2,
    kUnphysical = 3,
    kInconsistent = 4,
    kViolation = 5,
};

std::string scenario_choices() {
    std::string out;
    for (const auto &info : tristate::kScenarios) {
        if (!out.empty()) {
            out += ", ";
        }
        out += info.name;
    }
    return out;
}

int fail(int code, const std::string &kind, const std::string &message) {
    std::cerr << "error: " << kind << ": " << message << '\n';
    return code;
}

struct SweepArgs {
    std::string scenario = "depolarizing";
    std::vector<double> alpha_sq;
    double q_min = 0.0;
    double q_max = 0.15;
    std::size_t steps = 16;
    std::string out = "-";
    bool include_bb84 = false;
    unsigned threads = 0;
};

int cmd_sweep(const SweepArgs &args) {
    const auto scenario = tristate::parse_scenario(args.scenario);
    if (!scenario) {
        return fail(kUsage, "usage", "unknown scenario '" + args.scenario + "' (valid: " + scenario_choices() + ")");
    }
    tristate::SweepConfig config;
    config.scenario = *scenario;
    if (!args.alpha_sq.empty()) {
        config.alpha_squared = args.alpha_sq;
    }
    config.q_min = args.q_min;
    config.q_max = args.q_max;
    config.steps = args.steps;
    config.include_bb84 = args.include_bb84;
    config.threads = args.threads;

    std::vector<tristate::SweepRow> rows;
    try {
        rows = tristate::run_sweep(config);
    } catch (const tristate::DomainError &e) {
        return fail(kUsage, "usage", e.what());
    }

    if (args.out == "-") {
        tristate::write_sweep_csv(std::cout, rows);
        return kOk;
    }
    std::ofstream file(args.out);
    if (!file) {
        return fail(kIoError, "io", "cannot open '" + args.out + "' for writing");
    }
    tristate::write_sweep_csv(file, rows);
    if (!file.flush()) {
        return fail(kIoError, "io", "failed writing '" + args.out + "'");
    }
    return kOk;
}

int cmd_evaluate(const std::string &path) {
    std::ifstream file(path);
    if (!file) {
        return fail(kUsage, "usage", "cannot read statistics file '" + path + "'");
    }
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(file);
    } catch (const nlohmann::json::parse_error &e) {
        return fail(kUsage, "schema", std::string("invalid JSON: ") + e.what());
    }
    try {
        const auto stats = tristate::statistics_from_json(doc);
        const auto result = tristate::keyrate_bound(stats);
        nlohmann::json out = result;
        out["estimates"] = result.estimates;
        out["statistics"] = stats;
        std::cout << out.dump(2) << '\n';
        return kOk;
    } catch (const tristate::SchemaError &e) {
        return fail(kUsage, "schema", e.what());
    } catch (const tristate::UnphysicalStatistics &e) {
        return fail(kUnphysical, "unphysical-statistics", e.what());
    } catch (const tristate::InconsistentStatistics &e) {
        return fail(kInconsistent, "inconsistent-statistics", e.what());
    } catch (const tristate::DomainError &e) {
        return fail(kUsage, "usage", e.what());
    }
}

struct ValidateArgs {
    std::size_t trials = 1000;
    double q_min = 0.0;
    double q_max = 0.25;
    std::size_t dim = 4;
    std::uint64_t seed = 42;
    std::vector<double> alpha_sq;
    std::string dump_dir;
    unsigned threads = 0;
};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

int cmd_validate(const ValidateArgs &args) {
    if (args.trials == 0) {
        return fail(kUsage, "usage", "--trials must be at least 1");
    }
    tristate::ValidationConfig config;
    config.trials = args.trials;
    config.q_range = tristate::Interval{args.q_min, args.q_max};
    if (!args.alpha_sq.empty()) {
        config.alpha_squared = args.alpha_sq;
    }
    config.dimension = args.dim;
    config.seed = args.seed;
    config.threads = args.threads;
    if (!args.dump_dir.empty()) {
        config.dump_dir = args.dump_dir;
    }

    tristate::ValidationReport report;
    try {
        report = tristate::run_validation(config);
    } catch (const tristate::DomainError &e) {
        return fail(kUsage, "usage", e.what());
    }

    std::ostringstream alphas;
    for (std::size_t i = 0; i < report.alpha_values.size(); ++i) {
        alphas << (i ? " " : "") << fmt(report.alpha_values[i] * report.alpha_values[i]);
    }
    std::cout << "validation report\n"
              << "  seed:                 " << report.seed << '\n'
              << "  trials:               " << report.trials << '\n'
              << "  alpha^2 values:       " << alphas.str() << '\n'
              << "  Q range:              [" << fmt(args.q_min) << ", " << fmt(args.q_max) << "]\n"
              << "  ancilla dimension:    " << args.dim << '\n'
              << "  evaluations:          " << report.evaluations << '\n'
              << "  violations:           " << report.violations << '\n'
              << "  failures:             " << report.failures << '\n'
              << "  min slack:            " << fmt(report.min_slack) << '\n'
              << "  max gap:              " << fmt(report.max_gap) << '\n'
              << "  max round-trip error: " << fmt(report.max_roundtrip_error) << '\n'
              << "  max re03 error:       " << fmt(report.max_re03_error) << '\n'
              << "  result:               " << (report.passed() ? "PASS" : "FAIL") << '\n';
    return report.passed() ? kOk : kViolation;
}

int cmd_scenario_list() {
    for (const auto &info : tristate::kScenarios) {
        std::cout << info.name << '\t' << info.description << '\n';
    }
    return kOk;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Key-rate lower bound for the three-state BB84 protocol with mismatched-basis statistics"};
    app.require_subcommand(1);

    SweepArgs sweep;
    auto *sweep_cmd = app.add_subcommand("sweep", "Evaluate a scenario over a Q grid and write CSV");
    sweep_cmd->add_option("--scenario", sweep.scenario, "Scenario name (" + scenario_choices() + ")");
    sweep_cmd->add_option("--alpha-sq", sweep.alpha_sq, "alpha^2 value; repeatable (default 0.5)");
    sweep_cmd->add_option("--q-min", sweep.q_min, "Smallest Q")->capture_default_str();
    sweep_cmd->add_option("--q-max", sweep.q_max, "Largest Q")->capture_default_str();
    sweep_cmd->add_option("--steps", sweep.steps, "Grid points including both endpoints")
        ->capture_default_str()
        ->check(CLI::Range(std::size_t{2}, std::numeric_limits<std::size_t>::max()));
    sweep_cmd->add_option("--out", sweep.out, "Output CSV path, '-' for stdout")->capture_default_str();
    sweep_cmd->add_flag("--include-bb84", sweep.include_bb84, "Fill the bb84_rate column with 1 - 2h(Q)");
    sweep_cmd->add_option("--threads", sweep.threads, "Worker threads (0 = all cores)");

    std::string stats_path;
    auto *eval_cmd = app.add_subcommand("evaluate", "Compute the bound for an observed-statistics JSON file");
    eval_cmd->add_option("--stats", stats_path, "Path to statistics JSON")->required();

    ValidateArgs validate;
    auto *validate_cmd = app.add_subcommand("validate", "Check the bound against exact entropies of random attacks");
    validate_cmd->add_option("--trials", validate.trials, "Number of sampled attacks")->capture_default_str();
    validate_cmd->add_option("--q-min", validate.q_min, "Lower end of the sampled Q range")->capture_default_str();
    validate_cmd->add_option("--q-max", validate.q_max, "Upper end of the sampled Q range")->capture_default_str();
    validate_cmd->add_option("--dim", validate.dim, "Ancilla dimension (1-4)")->capture_default_str();
    validate_cmd->add_option("--seed", validate.seed, "RNG seed")->capture_default_str();
    validate_cmd->add_option("--alpha-sq", validate.alpha_sq, "alpha^2 value; repeatable (default 0.2 0.5 0.8)");
    validate_cmd->add_option("--dump-dir", validate.dump_dir, "Directory for JSON dumps of failing attacks");
    validate_cmd->add_option("--threads", validate.threads, "Worker threads (0 = all cores)");

    auto *list_cmd = app.add_subcommand("scenario-list", "List the named noise scenarios");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kUsage;
    }

    if (*sweep_cmd) {
        return cmd_sweep(sweep);
    }
    if (*eval_cmd) {
        return cmd_evaluate(stats_path);
    }
    if (*validate_cmd) {
        return cmd_validate(validate);
    }
    if (*list_cmd) {
        return cmd_scenario_list();
    }
    return kUsage;
}

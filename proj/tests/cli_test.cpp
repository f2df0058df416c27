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

// Runs the command-line tool as a subprocess and checks exit codes and output.

#include <sys/wait.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "gtest/gtest.h"
#include "tristate/tristate.hpp"

#ifndef TRISTATE_CLI_PATH
#error "TRISTATE_CLI_PATH must point at the tristate_qkd binary"
#endif

namespace {

struct Run {
    int exit_code;
    std::string out;
};

Run run(const std::string &args) {
    const std::string command = std::string(TRISTATE_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE *pipe = popen(command.c_str(), "r");
    if (pipe == nullptr) {
        return {-1, {}};
    }
    std::string out;
    std::array<char, 4096> buf{};
    while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) {
        out.append(buf.data(), n);
    }
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::filesystem::path write_stats(const std::string &name, const nlohmann::json &doc) {
    const auto path = std::filesystem::temp_directory_path() / ("tristate_cli_" + name + ".json");
    std::ofstream(path) << doc.dump();
    return path;
}

nlohmann::json stats_json(const tristate::ObservedStatistics &s) {
    return s;
}

}  // namespace

TEST(cli, scenario_list) {
    const auto r = run("scenario-list");
    EXPECT_EQ(r.exit_code, 0);
    for (const auto &info : tristate::kScenarios) {
        EXPECT_NE(r.out.find(info.name), std::string::npos);
    }
}

TEST(cli, usage_errors) {
    EXPECT_EQ(run("").exit_code, 2);
    EXPECT_EQ(run("frobnicate").exit_code, 2);
    EXPECT_EQ(run("sweep --scenario amplitude-damping").exit_code, 2);
    EXPECT_EQ(run("sweep --steps 1").exit_code, 2);
    EXPECT_EQ(run("validate --trials 0").exit_code, 2);
    EXPECT_EQ(run("evaluate").exit_code, 2);
    EXPECT_EQ(run("evaluate --stats /nonexistent/stats.json").exit_code, 2);
}

TEST(cli, sweep_to_stdout) {
    const auto r = run("sweep --scenario depolarizing --alpha-sq 0.5 --q-min 0 --q-max 0.15 --steps 4 --include-bb84");
    ASSERT_EQ(r.exit_code, 0);
    EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "Q,alpha_sq,rate,bb84_rate,minimizing_re12,feasible");
    EXPECT_NE(r.out.find("\n0,0.5,1,1,0,1\n"), std::string::npos);
    EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 5);
}

TEST(cli, sweep_to_file) {
    const auto path = std::filesystem::temp_directory_path() / "tristate_cli_sweep.csv";
    std::filesystem::remove(path);
    const auto r = run("sweep --alpha-sq 0.2 --alpha-sq 0.8 --steps 3 --out " + path.string());
    ASSERT_EQ(r.exit_code, 0);
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    EXPECT_EQ(header, tristate::kSweepCsvHeader);
    EXPECT_EQ(run("sweep --out /nonexistent/dir/out.csv").exit_code, 1);
}

TEST(cli, evaluate_identity_channel) {
    const auto stats = tristate::depolarizing_statistics(tristate::Probability(0.0), tristate::Alpha(0.6));
    const auto r = run("evaluate --stats " + write_stats("identity", stats_json(stats)).string());
    ASSERT_EQ(r.exit_code, 0);
    const auto doc = nlohmann::json::parse(r.out);
    EXPECT_EQ(doc["rate"].get<double>(), 1.0);
    EXPECT_TRUE(doc.contains("estimates"));
    EXPECT_NEAR(doc["estimates"]["re03_intercept"].get<double>(), 1.0, 1e-12);
}

TEST(cli, evaluate_depolarizing) {
    const auto stats = tristate::depolarizing_statistics(tristate::Probability(0.05), tristate::Alpha(std::sqrt(0.5)));
    const auto r = run("evaluate --stats " + write_stats("dep005", stats_json(stats)).string());
    ASSERT_EQ(r.exit_code, 0);
    const auto doc = nlohmann::json::parse(r.out);
    EXPECT_NEAR(doc["rate"].get<double>(), 1 - 2 * tristate::binary_entropy(0.05), 1e-9);
}

TEST(cli, evaluate_error_codes) {
    auto unphysical = stats_json(tristate::depolarizing_statistics(tristate::Probability(0.04), tristate::Alpha(std::sqrt(0.5))));
    unphysical["pa0"] = 0.95;
    EXPECT_EQ(run("evaluate --stats " + write_stats("unphysical", unphysical).string()).exit_code, 3);

    auto inconsistent =
        stats_json(tristate::depolarizing_statistics(tristate::Probability(0.2), tristate::Alpha(std::sqrt(0.2))));
    inconsistent["QA"] = 0.0;
    EXPECT_EQ(run("evaluate --stats " + write_stats("inconsistent", inconsistent).string()).exit_code, 4);

    auto missing = stats_json(tristate::depolarizing_statistics(tristate::Probability(0.1), tristate::Alpha(0.5)));
    missing.erase("p1a");
    EXPECT_EQ(run("evaluate --stats " + write_stats("missing", missing).string()).exit_code, 2);

    auto bad_alpha = stats_json(tristate::depolarizing_statistics(tristate::Probability(0.1), tristate::Alpha(0.5)));
    bad_alpha["alpha"] = 1.0;
    EXPECT_EQ(run("evaluate --stats " + write_stats("bad_alpha", bad_alpha).string()).exit_code, 2);

    const auto garbage = std::filesystem::temp_directory_path() / "tristate_cli_garbage.json";
    std::ofstream(garbage) << "{not json";
    EXPECT_EQ(run("evaluate --stats " + garbage.string()).exit_code, 2);
}

TEST(cli, validate_is_deterministic) {
    const auto a = run("validate --trials 10 --seed 7");
    const auto b = run("validate --trials 10 --seed 7 --threads 1");
    EXPECT_EQ(a.exit_code, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_NE(a.out.find("violations:           0"), std::string::npos);
}

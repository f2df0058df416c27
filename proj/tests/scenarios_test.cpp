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

#include "tristate/scenarios.hpp"

#include <cmath>

#include "gtest/gtest.h"
#include "test_util.hpp"

using namespace tristate;

namespace {

const Alpha kPlus(1.0 / std::sqrt(2.0));

ObservedStatistics run(Scenario s, double q, Alpha alpha) {
    return scenario_statistics(ScenarioSpec(s, Probability(q), alpha));
}

}  // namespace

TEST(scenario_names, parse_round_trip) {
    for (const auto &info : kScenarios) {
        ASSERT_TRUE(parse_scenario(info.name).has_value());
        EXPECT_EQ(*parse_scenario(info.name), info.id);
        EXPECT_EQ(scenario_name(info.id), info.name);
    }
    EXPECT_FALSE(parse_scenario("amplitude-damping").has_value());
}

TEST(depolarizing_statistics, identity_channel) {
    for (double a2 : {0.2, 0.5, 0.7}) {
        const auto stats = depolarizing_statistics(Probability(0.0), Alpha::from_squared(a2));
        EXPECT_EQ(stats.q, 0.0);
        EXPECT_EQ(stats.qa, 0.0);
        EXPECT_NEAR(stats.p0a, a2, 1e-15);
        EXPECT_NEAR(stats.p1a, 1 - a2, 1e-15);
        EXPECT_NEAR(stats.pa0, a2, 1e-15);
    }
}

TEST(depolarizing_statistics, examples) {
    EXPECT_NEAR(depolarizing_statistics(Probability(0.1), kPlus).p0a, 0.5, 1e-15);

    const auto alpha = Alpha::from_squared(0.3);
    const auto stats = depolarizing_statistics(Probability(0.1), alpha);
    EXPECT_NEAR(stats.p0a, 0.34, 1e-15);
    // same numbers from the explicit channel isometry
    const auto induced = induced_statistics(depolarizing_attack(0.1), alpha);
    EXPECT_NEAR(induced.p0a, stats.p0a, 1e-14);
    EXPECT_NEAR(induced.p1a, stats.p1a, 1e-14);
    EXPECT_NEAR(induced.pa0, stats.pa0, 1e-14);
    EXPECT_NEAR(induced.qa, stats.qa, 1e-14);
}

TEST(depolarizing_statistics, rejects_q_above_half) {
    EXPECT_THROW(depolarizing_statistics(Probability(0.51), kPlus), DomainError);
    EXPECT_THROW(ScenarioSpec(Scenario::kQaHalf, Probability(0.6), kPlus), DomainError);
}

TEST(scenario_statistics, overrides) {
    const auto dep = depolarizing_statistics(Probability(0.05), kPlus);
    const auto doubled = run(Scenario::kQaDouble, 0.05, kPlus);
    EXPECT_NEAR(doubled.qa, 0.10, 1e-15);
    EXPECT_EQ(doubled.p0a, dep.p0a);
    EXPECT_EQ(doubled.p1a, dep.p1a);
    EXPECT_EQ(doubled.pa0, dep.pa0);

    EXPECT_NEAR(run(Scenario::kQaHalf, 0.05, kPlus).qa, 0.025, 1e-15);

    const auto re02 = run(Scenario::kRe02Extremal, 0.04, kPlus);
    EXPECT_NEAR(re02.pa0, tristate::testing::kRe02ExtremalPa0At004, 1e-15);
    EXPECT_EQ(re02.qa, 0.04);
}

TEST(scenario_statistics, extremal_at_zero_noise_is_identity) {
    for (double a2 : {0.2, 0.5, 0.8}) {
        const auto alpha = Alpha::from_squared(a2);
        const auto identity = depolarizing_statistics(Probability(0.0), alpha);
        for (auto s : {Scenario::kRe02Extremal, Scenario::kRe23Extremal}) {
            const auto stats = run(s, 0.0, alpha);
            EXPECT_NEAR(stats.pa0, identity.pa0, 1e-15);
            EXPECT_NEAR(stats.p1a, identity.p1a, 1e-15);
            EXPECT_EQ(stats.qa, identity.qa);
        }
    }
}

// Each scenario's defining overlap targets come back out of the estimator.
TEST(scenario_statistics, estimation_recovers_targets) {
    for (double a2 : {0.2, 0.35, 0.5, 0.8}) {
        const auto alpha = Alpha::from_squared(a2);
        const double a2b2 = a2 * (1 - a2);
        for (int i = 0; i <= 25; ++i) {
            const double q = 0.5 * i / 25.0;
            const double cross = std::sqrt(q * (1 - q));

            const auto dep = estimate_inner_products(run(Scenario::kDepolarizing, q, alpha));
            EXPECT_NEAR(dep.re01, 0.0, 1e-12);
            EXPECT_NEAR(dep.re23, 0.0, 1e-12);
            EXPECT_NEAR(dep.re02, 0.0, 1e-12);
            EXPECT_NEAR(dep.re03_intercept, 1 - 2 * q, 1e-12);

            const auto dbl = estimate_inner_products(run(Scenario::kQaDouble, q, alpha));
            EXPECT_NEAR(dbl.re03_intercept, 1 - 2 * q - q / (2 * a2b2), 1e-9);

            const auto half = estimate_inner_products(run(Scenario::kQaHalf, q, alpha));
            EXPECT_NEAR(half.re03_intercept, 1 - 2 * q + 0.5 * q / (2 * a2b2), 1e-9);

            const auto re02 = estimate_inner_products(run(Scenario::kRe02Extremal, q, alpha));
            EXPECT_NEAR(re02.re02, -cross, 1e-9);
            EXPECT_NEAR(re02.re13, cross, 1e-9);
            EXPECT_NEAR(re02.re01, 0.0, 1e-12);

            const auto re23 = estimate_inner_products(run(Scenario::kRe23Extremal, q, alpha));
            EXPECT_NEAR(re23.re23, cross, 1e-9);
            EXPECT_NEAR(re23.re02, 0.0, 1e-12);
        }
    }
}

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

#include "tristate/estimation.hpp"

#include <cmath>
#include <random>

#include "gtest/gtest.h"
#include "test_util.hpp"

using namespace tristate;

namespace {

const Alpha kPlus(1.0 / std::sqrt(2.0));

}  // namespace

TEST(estimate_inner_products, depolarizing) {
    for (double a2 : {0.1, 0.5, 0.9}) {
        for (double q : {0.0, 0.05, 0.2, 0.5}) {
            const auto est = estimate_inner_products(depolarizing_statistics(Probability(q), Alpha::from_squared(a2)));
            EXPECT_NEAR(est.re01, 0.0, 1e-13);
            EXPECT_NEAR(est.re23, 0.0, 1e-13);
            EXPECT_NEAR(est.re02, 0.0, 1e-13);
            EXPECT_EQ(est.re13, -est.re02);
            EXPECT_EQ(est.re03_slope, -1.0);
            EXPECT_EQ(est.re12_interval, (Interval{-q, q}));
            for (double re12 : {-q, 0.0, q}) {
                EXPECT_NEAR(est.re03(re12), 1 - 2 * q - re12, 1e-13);
            }
        }
    }
}

TEST(estimate_inner_products, alpha_independent_for_depolarizing) {
    for (double q : {0.0, 0.03, 0.1, 0.3}) {
        const auto ref = estimate_inner_products(depolarizing_statistics(Probability(q), kPlus));
        for (double alpha : {0.3, 0.9}) {
            const auto est = estimate_inner_products(depolarizing_statistics(Probability(q), Alpha(alpha)));
            EXPECT_NEAR(est.re01, ref.re01, 1e-12);
            EXPECT_NEAR(est.re23, ref.re23, 1e-12);
            EXPECT_NEAR(est.re02, ref.re02, 1e-12);
            EXPECT_NEAR(est.re03_intercept, ref.re03_intercept, 1e-12);
        }
    }
}

TEST(estimate_inner_products, affine_slope) {
    const auto est = estimate_inner_products(
        scenario_statistics(ScenarioSpec(Scenario::kQaDouble, Probability(0.07), Alpha::from_squared(0.3))));
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        const double x = u(rng), y = u(rng);
        EXPECT_NEAR(est.re03(x) - est.re03(y), -(x - y), 1e-12);
    }
}

TEST(estimate_inner_products, round_trip_random_attacks) {
    Rng rng(1234);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const auto attack = sample_symmetric_attack(0.5 * u(rng), 2 + trial % 3, rng);
        const auto truth = exact_inner_products(attack);
        const auto est = estimate_inner_products(induced_statistics(attack, Alpha::from_squared(0.05 + 0.9 * u(rng))));
        worst = std::max({worst, std::abs(est.re01 - truth.re01), std::abs(est.re23 - truth.re23),
                          std::abs(est.re02 - truth.re02), std::abs(est.re03(truth.re12) - truth.re03)});
    }
    EXPECT_LT(worst, 1e-9);
}

TEST(estimate_inner_products, cauchy_schwarz_screens) {
    auto stats = depolarizing_statistics(Probability(0.04), kPlus);
    // pa0 = 0.5 + 2ab re02 with |re02| <= sqrt(0.04 * 0.96) ~ 0.196
    stats.pa0 = Probability(0.9);
    EXPECT_THROW(estimate_inner_products(stats), UnphysicalStatistics);

    stats = depolarizing_statistics(Probability(0.04), kPlus);
    stats.p0a = Probability(0.05);
    try {
        estimate_inner_products(stats);
        FAIL() << "expected UnphysicalStatistics";
    } catch (const UnphysicalStatistics &e) {
        EXPECT_NE(std::string(e.what()).find("re<e0|e1>"), std::string::npos);
    }

    // Q = 0 leaves no room for any cross term
    stats = depolarizing_statistics(Probability(0.0), kPlus);
    stats.p1a = Probability(0.6);
    EXPECT_THROW(estimate_inner_products(stats), UnphysicalStatistics);
}

TEST(feasible_re12_set, depolarizing) {
    const auto q10 = depolarizing_statistics(Probability(0.1), kPlus);
    const auto set = feasible_re12_set(estimate_inner_products(q10), q10.q);
    EXPECT_NEAR(set.lo, -0.1, 1e-15);
    EXPECT_NEAR(set.hi, 0.1, 1e-15);

    const auto q0 = depolarizing_statistics(Probability(0.0), kPlus);
    const auto est0 = estimate_inner_products(q0);
    const auto point = feasible_re12_set(est0, q0.q);
    EXPECT_EQ(point.lo, 0.0);
    EXPECT_EQ(point.hi, 0.0);
    EXPECT_NEAR(est0.re03(0.0), 1.0, 1e-15);
}

TEST(feasible_re12_set, partial_interval) {
    // alpha^2 = 0.2, QA = Q/2: intercept = 1 - 2Q + Q/(4 * 0.16) exceeds 1 - Q, so only
    // re12 >= intercept - (1 - Q) survives
    const auto stats = scenario_statistics(ScenarioSpec(Scenario::kQaHalf, Probability(0.1), Alpha::from_squared(0.2)));
    const auto est = estimate_inner_products(stats);
    const auto set = feasible_re12_set(est, stats.q);
    EXPECT_NEAR(set.lo, est.re03_intercept - 0.9, 1e-12);
    EXPECT_NEAR(set.hi, 0.1, 1e-15);
    EXPECT_LE(std::abs(est.re03(set.lo)), 0.9 + 1e-12);
}

// QA = 0 with Q = 0.2 at alpha^2 = 0.2 cannot come from any attack: the smallest A-basis
// error consistent with the other depolarizing statistics is Q (1 - 4 a^2 b^2) = 0.072.
TEST(feasible_re12_set, inconsistent_statistics) {
    const auto alpha = Alpha::from_squared(0.2);
    auto stats = depolarizing_statistics(Probability(0.2), alpha);
    stats.qa = Probability(0.0);
    EXPECT_THROW(feasible_re12_set(estimate_inner_products(stats), stats.q), InconsistentStatistics);

    // Brute force: random attacks matching the mismatched statistics never get QA near 0.
    const auto target = depolarizing_statistics(Probability(0.2), alpha);
    Rng rng(77);
    std::size_t matches = 0;
    double smallest_qa = 1.0;
    for (int trial = 0; trial < 200000; ++trial) {
        const auto attack = sample_symmetric_attack(0.2, 4, rng);
        const auto induced = induced_statistics(attack, alpha);
        if (std::abs(induced.p0a - target.p0a) < 0.03 && std::abs(induced.p1a - target.p1a) < 0.03 &&
            std::abs(induced.pa0 - target.pa0) < 0.03) {
            ++matches;
            smallest_qa = std::min(smallest_qa, induced.qa.value());
        }
    }
    EXPECT_GT(matches, 50u);
    EXPECT_GT(smallest_qa, 0.04);
}

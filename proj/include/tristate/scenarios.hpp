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

#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>

#include "tristate/entropy.hpp"
#include "tristate/errors.hpp"
#include "tristate/statistics.hpp"

namespace tristate {

enum class Scenario {
    kDepolarizing,
    kQaDouble,     // A-basis error twice the B-basis error
    kQaHalf,       // A-basis error half the B-basis error
    kRe02Extremal, // re<e0|e2> = -sqrt(Q(1-Q))
    kRe23Extremal, // re<e2|e3> = +sqrt(Q(1-Q))
};

struct ScenarioInfo {
    Scenario id;
    std::string_view name;
    std::string_view description;
};

inline constexpr std::array<ScenarioInfo, 5> kScenarios{{
    {Scenario::kDepolarizing, "depolarizing", "depolarizing channel (1-2Q)rho + QI"},
    {Scenario::kQaDouble, "qa-double", "depolarizing, but the A-basis error is 2Q"},
    {Scenario::kQaHalf, "qa-half", "depolarizing, but the A-basis error is Q/2"},
    {Scenario::kRe02Extremal, "re02-extremal", "p_{a,0} chosen so that re<e0|e2> = -sqrt(Q(1-Q))"},
    {Scenario::kRe23Extremal, "re23-extremal", "p_{1,a} chosen so that re<e2|e3> = +sqrt(Q(1-Q))"},
}};

inline std::string_view scenario_name(Scenario s) {
    for (const auto &info : kScenarios) {
        if (info.id == s) {
            return info.name;
        }
    }
    return "unknown";
}

inline std::optional<Scenario> parse_scenario(std::string_view name) {
    for (const auto &info : kScenarios) {
        if (info.name == name) {
            return info.id;
        }
    }
    return std::nullopt;
}

struct ScenarioSpec {
    Scenario scenario;
    Probability q;
    Alpha alpha;

    ScenarioSpec(Scenario s, Probability q_, Alpha a) : scenario(s), q(q_), alpha(a) {
        if (q_ > 0.5) {
            throw DomainError("scenario Q must not exceed 1/2");
        }
    }
};

inline ObservedStatistics depolarizing_statistics(Probability q, Alpha alpha) {
    if (q > 0.5) {
        throw DomainError("depolarizing_statistics: Q must not exceed 1/2");
    }
    const double shrink = 1.0 - 2.0 * q;
    return ObservedStatistics{
        .alpha = alpha,
        .q = q,
        .qa = q,
        .p0a = Probability(shrink * alpha.squared() + q),
        .p1a = Probability(shrink * (1.0 - alpha.squared()) + q),
        .pa0 = Probability(shrink * alpha.squared() + q),
    };
}

namespace detail {

inline Probability scenario_probability(const ScenarioSpec &spec, const char *field, double value) {
    if (!(value >= -Probability::kTolerance && value <= 1.0 + Probability::kTolerance)) {
        throw ScenarioInfeasible(std::string(scenario_name(spec.scenario)) + ": " + field + " = " +
                                 std::to_string(value) + " is not a probability at Q = " + std::to_string(spec.q.value()) +
                                 ", alpha^2 = " + std::to_string(spec.alpha.squared()));
    }
    return Probability(value);
}

}  // namespace detail

inline ObservedStatistics scenario_statistics(const ScenarioSpec &spec) {
    auto stats = depolarizing_statistics(spec.q, spec.alpha);
    const double q = spec.q;
    const double a2 = spec.alpha.squared();
    const double b2 = 1.0 - a2;
    const double ab = spec.alpha.value() * spec.alpha.beta();
    const double cross = std::sqrt(q * (1.0 - q));

    switch (spec.scenario) {
        case Scenario::kDepolarizing:
            break;
        case Scenario::kQaDouble:
            stats.qa = detail::scenario_probability(spec, "QA", 2.0 * q);
            break;
        case Scenario::kQaHalf:
            stats.qa = detail::scenario_probability(spec, "QA", 0.5 * q);
            break;
        case Scenario::kRe02Extremal:
            stats.pa0 = detail::scenario_probability(spec, "pa0", a2 * (1.0 - q) + b2 * q - 2.0 * ab * cross);
            break;
        case Scenario::kRe23Extremal:
            stats.p1a = detail::scenario_probability(spec, "p1a", a2 * q + b2 * (1.0 - q) + 2.0 * ab * cross);
            break;
    }
    return stats;
}

}  // namespace tristate

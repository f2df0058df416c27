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

#include <algorithm>
#include <cstddef>
#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "tristate/errors.hpp"
#include "tristate/keyrate.hpp"
#include "tristate/parallel.hpp"
#include "tristate/scenarios.hpp"

namespace tristate {

struct SweepConfig {
    Scenario scenario = Scenario::kDepolarizing;
    std::vector<double> alpha_squared{0.5};
    double q_min = 0.0;
    double q_max = 0.15;
    std::size_t steps = 16;
    bool include_bb84 = false;
    unsigned threads = 0;
};

struct SweepRow {
    double q = 0.0;
    double alpha_sq = 0.0;
    std::optional<double> rate;  // empty when the scenario is infeasible at this point
    std::optional<double> bb84_rate;
    std::optional<double> minimizing_re12;

    [[nodiscard]] bool feasible() const noexcept {
        return rate.has_value();
    }
};

/// Uniform grid on [lo, hi] with both endpoints included.
inline std::vector<double> inclusive_grid(double lo, double hi, std::size_t steps) {
    if (steps < 2) {
        throw DomainError("grid needs at least 2 steps");
    }
    std::vector<double> grid(steps);
    for (std::size_t i = 0; i < steps; ++i) {
        grid[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps - 1);
    }
    grid.back() = hi;
    return grid;
}

/// Evaluates the bound for every (Q, alpha^2) grid point. Rows come back ordered by Q,
/// then by ascending alpha^2, however the work was scheduled.
inline std::vector<SweepRow> run_sweep(const SweepConfig &config) {
    if (!(config.q_min >= 0.0 && config.q_min <= config.q_max && config.q_max <= 0.5)) {
        throw DomainError("sweep: need 0 <= q_min <= q_max <= 1/2");
    }
    if (config.alpha_squared.empty()) {
        throw DomainError("sweep: at least one alpha^2 is required");
    }
    auto alphas = config.alpha_squared;
    std::sort(alphas.begin(), alphas.end());
    for (double a2 : alphas) {
        (void)Alpha::from_squared(a2);
    }
    const auto qs = inclusive_grid(config.q_min, config.q_max, config.steps);

    std::vector<SweepRow> rows(qs.size() * alphas.size());
    parallel_for(rows.size(), config.threads, [&](std::size_t i) {
        SweepRow &row = rows[i];
        row.q = qs[i / alphas.size()];
        row.alpha_sq = alphas[i % alphas.size()];
        if (config.include_bb84) {
            row.bb84_rate = bb84_reference_rate(row.q);
        }
        try {
            const auto stats =
                scenario_statistics(ScenarioSpec(config.scenario, Probability(row.q), Alpha::from_squared(row.alpha_sq)));
            const auto result = keyrate_bound(stats);
            row.rate = result.rate;
            row.minimizing_re12 = result.minimizing_re12;
        } catch (const ScenarioInfeasible &) {
        } catch (const UnphysicalStatistics &) {
        } catch (const InconsistentStatistics &) {
        }
    });
    return rows;
}

inline constexpr const char *kSweepCsvHeader = "Q,alpha_sq,rate,bb84_rate,minimizing_re12,feasible";

/// 12 significant digits, or an empty field.
inline std::string format_number(std::optional<double> v) {
    if (!v) {
        return {};
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", *v == 0.0 ? 0.0 : *v);  // no "-0"
    return buf;
}

inline void write_sweep_csv(std::ostream &out, const std::vector<SweepRow> &rows) {
    out << kSweepCsvHeader << '\n';
    for (const auto &row : rows) {
        out << format_number(row.q) << ',' << format_number(row.alpha_sq) << ',' << format_number(row.rate) << ','
            << format_number(row.bb84_rate) << ',' << format_number(row.minimizing_re12) << ','
            << (row.feasible() ? 1 : 0) << '\n';
    }
}

}  // namespace tristate

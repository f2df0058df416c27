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
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "tristate/attack.hpp"
#include "tristate/entropy.hpp"
#include "tristate/errors.hpp"
#include "tristate/estimation.hpp"
#include "tristate/keyrate.hpp"
#include "tristate/parallel.hpp"
#include "tristate/statistics.hpp"

namespace tristate {

using Rng = std::mt19937_64;

/// Generator for trial `index` of a run seeded with `seed`. Independent of scheduling,
/// so serial and parallel runs draw identical attacks.
inline Rng trial_rng(std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    return Rng(seq);
}

/// Haar-random unit vector: normalized i.i.d. standard complex Gaussians.
inline AncillaVector random_unit_vector(std::size_t dimension, Rng &rng) {
    std::normal_distribution<double> normal;
    for (;;) {
        AncillaVector v(dimension);
        for (auto &z : v) {
            const double re = normal(rng);
            const double im = normal(rng);
            z = complex(re, im);
        }
        const double n = std::sqrt(norm_squared(v));
        if (n > 1e-8) {
            for (auto &z : v) {
                z /= n;
            }
            return v;
        }
    }
}

/// Random unit vector orthogonal to the unit vector `f`.
inline AncillaVector random_orthogonal_unit_vector(std::span<const complex> f, Rng &rng) {
    for (;;) {
        auto g = random_unit_vector(f.size(), rng);
        const complex overlap = inner(f, g);
        for (std::size_t k = 0; k < g.size(); ++k) {
            g[k] -= overlap * f[k];
        }
        const double n = std::sqrt(norm_squared(g));
        if (n > 1e-6) {
            for (auto &z : g) {
                z /= n;
            }
            return g;
        }
    }
}

/// Random collective attack with symmetric B-basis noise Q.
///
/// e0 = sqrt(1-Q) f0, e3 = sqrt(1-Q) f3, e1 = sqrt(Q) f1 with f0, f1, f3 Haar-random, and
/// e2 = sqrt(Q) (mu f0 + nu g) with g orthogonal to f0, mu = -<f1|f3>, nu = sqrt(1 - |mu|^2).
/// Then <e0|e2> = -<e1|e3> holds exactly, so every sample is an isometry.
inline AttackOperator sample_symmetric_attack(double q, std::size_t dimension, Rng &rng) {
    if (!(q >= 0.0 && q <= 1.0)) {
        throw DomainError("sample_symmetric_attack: Q must lie in [0,1]");
    }
    if (dimension == 0 || dimension > AttackOperator::kMaxDimension) {
        throw DomainError("sample_symmetric_attack: dimension must be in 1..4");
    }
    if (dimension < 2 && q > 0.0 && q < 1.0) {
        throw DomainError("sample_symmetric_attack: a noisy symmetric attack needs dimension >= 2");
    }
    const double s_keep = std::sqrt(1.0 - q);
    const double s_flip = std::sqrt(q);

    const auto f0 = random_unit_vector(dimension, rng);
    const auto f3 = random_unit_vector(dimension, rng);
    AncillaVector e0(dimension), e1(dimension), e2(dimension), e3(dimension);
    for (std::size_t k = 0; k < dimension; ++k) {
        e0[k] = s_keep * f0[k];
        e3[k] = s_keep * f3[k];
    }
    if (q > 0.0) {
        const auto f1 = random_unit_vector(dimension, rng);
        AncillaVector f2;
        if (dimension == 1) {
            // only reachable at Q = 1, where e0 = e3 = 0 and no overlap constraint remains
            f2 = random_unit_vector(dimension, rng);
        } else {
            const complex mu = -inner(f1, f3);
            const double nu = std::sqrt(std::max(0.0, 1.0 - std::norm(mu)));
            const auto g = random_orthogonal_unit_vector(f0, rng);
            f2.resize(dimension);
            for (std::size_t k = 0; k < dimension; ++k) {
                f2[k] = mu * f0[k] + nu * g[k];
            }
        }
        for (std::size_t k = 0; k < dimension; ++k) {
            e1[k] = s_flip * f1[k];
            e2[k] = s_flip * f2[k];
        }
    }
    return AttackOperator(std::move(e0), std::move(e1), std::move(e2), std::move(e3));
}

/// Bound versus truth for one attack at one alpha.
struct AttackCheck {
    ObservedStatistics stats;
    KeyRateResult bound;
    double exact_rate;  // S(A|E) - h(Q)
    double slack;       // exact_rate - bound.rate; negative means the bound failed
};

inline AttackCheck check_attack(const AttackOperator &attack, Alpha alpha) {
    auto stats = induced_statistics(attack, alpha);
    auto bound = keyrate_bound(stats);
    const double exact = exact_conditional_entropy(attack) - binary_entropy(stats.q);
    return AttackCheck{stats, bound, exact, exact - bound.rate};
}

inline constexpr double kSlackTolerance = 1e-9;

struct ValidationConfig {
    std::size_t trials = 1000;
    Interval q_range{0.0, 0.25};
    std::vector<double> alpha_squared{0.2, 0.5, 0.8};
    std::size_t dimension = 4;
    std::uint64_t seed = 42;
    unsigned threads = 0;
    /// Violations and failures are written here as JSON when set.
    std::optional<std::filesystem::path> dump_dir;
};

struct ValidationReport {
    std::size_t trials = 0;
    std::size_t evaluations = 0;  // trials x alpha values
    std::size_t violations = 0;   // slack < -1e-9
    std::size_t failures = 0;     // estimation/minimization threw on a sampled attack
    double max_gap = -std::numeric_limits<double>::infinity();
    double min_slack = std::numeric_limits<double>::infinity();
    double max_roundtrip_error = 0.0;  // re01/re23/re02 estimated vs exact
    double max_re03_error = 0.0;       // re03(true re12) vs exact re03
    std::uint64_t seed = 0;
    std::vector<double> alpha_values;

    [[nodiscard]] bool passed() const noexcept {
        return violations == 0 && failures == 0;
    }
    friend bool operator==(const ValidationReport &, const ValidationReport &) = default;
};

namespace detail {

struct TrialOutcome {
    std::vector<double> slacks;  // NaN where the evaluation failed
    double roundtrip_error = 0.0;
    double re03_error = 0.0;
    std::size_t failures = 0;
};

inline void dump_failure(const std::filesystem::path &dir, std::size_t trial, std::size_t alpha_index,
                         const AttackOperator &attack, double alpha, const nlohmann::json &detail) {
    std::filesystem::create_directories(dir);
    nlohmann::json doc;
    doc["trial"] = trial;
    doc["alpha"] = alpha;
    doc["attack"] = attack;
    doc.update(detail);
    std::ofstream out(dir / ("failure_" + std::to_string(trial) + "_" + std::to_string(alpha_index) + ".json"));
    out << doc.dump(2) << '\n';
}

}  // namespace detail

/// Samples `trials` symmetric attacks and checks bound <= exact rate for each at every alpha.
/// The report depends only on the config, never on the thread count.
inline ValidationReport run_validation(const ValidationConfig &config) {
    if (config.trials == 0) {
        throw DomainError("run_validation: trials must be >= 1");
    }
    if (config.alpha_squared.empty()) {
        throw DomainError("run_validation: at least one alpha is required");
    }
    if (!(config.q_range.lo >= 0.0 && config.q_range.lo <= config.q_range.hi && config.q_range.hi < 1.0)) {
        throw DomainError("run_validation: Q range must satisfy 0 <= lo <= hi < 1");
    }
    std::vector<Alpha> alphas;
    for (double a2 : config.alpha_squared) {
        alphas.push_back(Alpha::from_squared(a2));
    }

    std::vector<detail::TrialOutcome> outcomes(config.trials);
    parallel_for(config.trials, config.threads, [&](std::size_t trial) {
        auto rng = trial_rng(config.seed, trial);
        std::uniform_real_distribution<double> uniform(0.0, 1.0);
        const double q = config.q_range.lo + config.q_range.width() * uniform(rng);
        const auto attack = sample_symmetric_attack(q, config.dimension, rng);
        const auto truth = exact_inner_products(attack);

        auto &out = outcomes[trial];
        for (std::size_t ai = 0; ai < alphas.size(); ++ai) {
            try {
                const auto check = check_attack(attack, alphas[ai]);
                const auto &est = check.bound.estimates;
                out.roundtrip_error = std::max({out.roundtrip_error, std::abs(est.re01 - truth.re01),
                                                std::abs(est.re23 - truth.re23), std::abs(est.re02 - truth.re02)});
                out.re03_error = std::max(out.re03_error, std::abs(est.re03(truth.re12) - truth.re03));
                out.slacks.push_back(check.slack);
                if (check.slack < -kSlackTolerance && config.dump_dir) {
                    detail::dump_failure(*config.dump_dir, trial, ai, attack, alphas[ai].value(),
                                         {{"kind", "violation"},
                                          {"statistics", check.stats},
                                          {"bound_rate", check.bound.rate},
                                          {"exact_rate", check.exact_rate},
                                          {"slack", check.slack}});
                }
            } catch (const std::exception &e) {
                out.slacks.push_back(std::numeric_limits<double>::quiet_NaN());
                ++out.failures;
                if (config.dump_dir) {
                    detail::dump_failure(*config.dump_dir, trial, ai, attack, alphas[ai].value(),
                                         {{"kind", "error"}, {"message", e.what()}});
                }
            }
        }
    });

    ValidationReport report;
    report.trials = config.trials;
    report.seed = config.seed;
    report.alpha_values.reserve(alphas.size());
    for (const auto &a : alphas) {
        report.alpha_values.push_back(a.value());
    }
    for (const auto &out : outcomes) {
        report.failures += out.failures;
        report.max_roundtrip_error = std::max(report.max_roundtrip_error, out.roundtrip_error);
        report.max_re03_error = std::max(report.max_re03_error, out.re03_error);
        for (double s : out.slacks) {
            ++report.evaluations;
            if (std::isnan(s)) {
                continue;
            }
            report.min_slack = std::min(report.min_slack, s);
            report.max_gap = std::max(report.max_gap, s);
            if (s < -kSlackTolerance) {
                ++report.violations;
            }
        }
    }
    return report;
}

}  // namespace tristate

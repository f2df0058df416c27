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
#include <cstddef>
#include <string>

#include "tristate/entropy.hpp"
#include "tristate/errors.hpp"
#include "tristate/estimation.hpp"
#include "tristate/statistics.hpp"

namespace tristate {

/// Outcome of the key-rate minimization. `rate` may be negative (no secure key).
struct KeyRateResult {
    double rate = 0.0;
    double q = 0.0;
    double minimizing_re12 = 0.0;
    double re03_at_min = 0.0;
    double lambda_rho = 0.5;
    double lambda_sigma = 0.5;
    Interval feasible_interval;
    InnerProductEstimates estimates;
};

inline void to_json(nlohmann::json &j, const KeyRateResult &r) {
    j = nlohmann::json{{"rate", r.rate},
                       {"Q", r.q},
                       {"minimizing_re12", r.minimizing_re12},
                       {"re03_at_min", r.re03_at_min},
                       {"lambda_rho", r.lambda_rho},
                       {"lambda_sigma", r.lambda_sigma},
                       {"feasible_interval", r.feasible_interval},
                       {"secure", r.rate > 0.0}};
}

inline constexpr double kPhysicalityTolerance = 1e-9;

/// Relaxed top eigenvalue of Eve's state conditioned on no B-basis error:
/// 1/2 + |re<e0|e3>| / (2(1-Q)).
inline double lambda_rho(double re03, double q) {
    if (!(q >= 0.0 && q < 1.0)) {
        throw DomainError("lambda_rho: Q must lie in [0,1)");
    }
    const double norm = 1.0 - q;
    if (std::abs(re03) > norm + kPhysicalityTolerance) {
        throw UnphysicalStatistics("lambda_rho: |re<e0|e3>| = " + std::to_string(std::abs(re03)) + " exceeds 1-Q = " +
                                   std::to_string(norm));
    }
    return 0.5 + 0.5 * std::min(std::abs(re03) / norm, 1.0);
}

/// Relaxed top eigenvalue of Eve's state conditioned on a B-basis error:
/// 1/2 + |re<e1|e2>| / (2Q). Undefined at Q = 0; keyrate_bound drops the term there.
inline double lambda_sigma(double re12, double q) {
    if (!(q > 0.0 && q <= 1.0)) {
        throw DomainError("lambda_sigma: Q must lie in (0,1]; the Q = 0 case carries no sigma term");
    }
    if (std::abs(re12) > q + kPhysicalityTolerance) {
        throw UnphysicalStatistics("lambda_sigma: |re<e1|e2>| = " + std::to_string(std::abs(re12)) + " exceeds Q = " +
                                   std::to_string(q));
    }
    return 0.5 + 0.5 * std::min(std::abs(re12) / q, 1.0);
}

/// Four-state BB84 rate with equal error in both bases: 1 - 2h(Q).
inline double bb84_reference_rate(double q) {
    if (!(q >= 0.0 && q <= 0.5)) {
        throw DomainError("bb84_reference_rate: Q must lie in [0, 1/2]");
    }
    return 1.0 - 2.0 * binary_entropy(q);
}

/// Golden-section search for the minimum of a unimodal `f` on [lo, hi].
/// Returns the abscissa of the smallest value seen once the bracket is narrower than `tol`.
template <typename F>
double golden_section_minimize(F &&f, double lo, double hi, double tol = 1e-12) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    // 200 iterations shrink any bracket below double resolution
    for (int it = 0; it < 200 && (b - a) > tol; ++it) {
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return fc <= fd ? c : d;
}

namespace detail {

inline constexpr std::size_t kGridPoints = 2001;

struct RateTerms {
    double rate;
    double lambda_rho;
    double lambda_sigma;
};

inline RateTerms rate_terms(const InnerProductEstimates &est, double q, double re12) {
    const double lr = lambda_rho(est.re03(re12), q);
    if (q == 0.0) {
        return {1.0 - binary_entropy(lr), lr, 1.0};
    }
    const double ls = lambda_sigma(re12, q);
    return {1.0 - (1.0 - q) * binary_entropy(lr) - q * binary_entropy(ls) - binary_entropy(q), lr, ls};
}

}  // namespace detail

/// Key-rate bound 1 - (1-Q) h(lambda_rho) - Q h(lambda_sigma) - h(Q) evaluated at a given re12.
inline double rate_at(const InnerProductEstimates &est, Probability q, double re12) {
    return detail::rate_terms(est, q, re12).rate;
}

/// Lower bound on the asymptotic key rate for the given observations: the minimum of
/// rate_at over every re<e1|e2> consistent with them.
///
/// The objective is a sum of convex functions of re12 (h(1/2 + |t|/2) is concave in t), but
/// it has kinks at re12 = 0 and where re03 changes sign. A 2001-point grid plus those kinks
/// locates the best cell; golden-section search then refines inside it.
inline KeyRateResult keyrate_bound(const ObservedStatistics &stats) {
    const double q = stats.q;
    KeyRateResult result;
    result.q = q;
    result.estimates = estimate_inner_products(stats);

    if (q == 0.0) {
        // e1 = e2 = 0: the sigma branch has no weight and re12 is pinned at zero.
        const double c = result.estimates.re03(0.0);
        if (std::abs(c) > 1.0 + kPhysicalityTolerance) {
            throw InconsistentStatistics("Q = 0 but implied |re<e0|e3>| = " + std::to_string(std::abs(c)) + " > 1");
        }
        const auto terms = detail::rate_terms(result.estimates, 0.0, 0.0);
        result.rate = terms.rate;
        result.minimizing_re12 = 0.0;
        result.re03_at_min = c;
        result.lambda_rho = terms.lambda_rho;
        result.lambda_sigma = terms.lambda_sigma;
        result.feasible_interval = Interval{0.0, 0.0};
        return result;
    }

    const Interval feasible = feasible_re12_set(result.estimates, stats.q);
    result.feasible_interval = feasible;
    auto objective = [&](double x) { return detail::rate_terms(result.estimates, q, x).rate; };

    double best_x = feasible.lo;
    double best_f = objective(best_x);
    auto consider = [&](double x) {
        const double fx = objective(x);
        if (fx < best_f) {
            best_f = fx;
            best_x = x;
        }
    };

    if (feasible.width() > 0.0) {
        const double step = feasible.width() / static_cast<double>(detail::kGridPoints - 1);
        for (std::size_t k = 1; k < detail::kGridPoints; ++k) {
            consider(k + 1 == detail::kGridPoints ? feasible.hi : feasible.lo + step * static_cast<double>(k));
        }
        for (double kink : {0.0, result.estimates.re03_intercept}) {
            if (feasible.contains(kink)) {
                consider(kink);
            }
        }
        const double lo = std::max(feasible.lo, best_x - step);
        const double hi = std::min(feasible.hi, best_x + step);
        consider(golden_section_minimize(objective, lo, hi));
    }

    const auto terms = detail::rate_terms(result.estimates, q, best_x);
    result.rate = terms.rate;
    result.minimizing_re12 = best_x;
    result.re03_at_min = result.estimates.re03(best_x);
    result.lambda_rho = terms.lambda_rho;
    result.lambda_sigma = terms.lambda_sigma;
    return result;
}

}  // namespace tristate

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
#include <string>

#include "tristate/errors.hpp"
#include "tristate/statistics.hpp"

namespace tristate {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    [[nodiscard]] double width() const noexcept {
        return hi - lo;
    }
    [[nodiscard]] bool contains(double x, double tol = 0.0) const noexcept {
        return x >= lo - tol && x <= hi + tol;
    }
    friend bool operator==(const Interval &, const Interval &) = default;
};

/// Real parts of the pairwise ancilla overlaps that the observations pin down, plus the
/// one-parameter family re03(re12) = intercept + slope * re12 left free by them.
struct InnerProductEstimates {
    double re01 = 0.0;
    double re23 = 0.0;
    double re02 = 0.0;
    double re13 = 0.0;
    double re03_intercept = 0.0;
    double re03_slope = -1.0;
    Interval re12_interval;

    [[nodiscard]] double re03(double re12) const noexcept {
        return re03_intercept + re03_slope * re12;
    }
};

inline void to_json(nlohmann::json &j, const Interval &i) {
    j = nlohmann::json::array({i.lo, i.hi});
}

inline void to_json(nlohmann::json &j, const InnerProductEstimates &e) {
    j = nlohmann::json{{"re01", e.re01},
                       {"re23", e.re23},
                       {"re02", e.re02},
                       {"re13", e.re13},
                       {"re03_intercept", e.re03_intercept},
                       {"re03_slope", e.re03_slope},
                       {"re12_interval", e.re12_interval}};
}

namespace detail {

inline constexpr double kScreenTolerance = 1e-9;

inline void screen(const char *name, double value, double bound) {
    if (std::abs(value) > bound + kScreenTolerance) {
        throw UnphysicalStatistics(std::string(name) + " = " + std::to_string(value) +
                                   " violates the Cauchy-Schwarz bound " + std::to_string(bound));
    }
}

}  // namespace detail

/// Reconstructs the overlaps of Eve's ancilla states from observed statistics.
///
/// re01, re23 and re02 follow from the mismatched outcomes p0a, p1a and pa0. re13 = -re02 is
/// forced by the isometry. Solving the A-basis error for re03 leaves re12 free in [-Q, Q].
inline InnerProductEstimates estimate_inner_products(const ObservedStatistics &stats) {
    const double q = stats.q;
    if (!(q < 1.0)) {
        throw DomainError("estimate_inner_products: Q must be < 1");
    }
    const double a = stats.alpha.value();
    const double b = stats.alpha.beta();
    const double a2 = a * a;
    const double b2 = b * b;
    const double ab = a * b;

    InnerProductEstimates est;
    est.re01 = (stats.p0a - a2 * (1.0 - q) - b2 * q) / (2.0 * ab);
    est.re23 = (stats.p1a - a2 * q - b2 * (1.0 - q)) / (2.0 * ab);
    est.re02 = (stats.pa0 - a2 * (1.0 - q) - b2 * q) / (2.0 * ab);
    est.re13 = -est.re02;

    const double cross = std::sqrt(q * (1.0 - q));
    detail::screen("re<e0|e1>", est.re01, cross);
    detail::screen("re<e2|e3>", est.re23, cross);
    detail::screen("re<e0|e2>", est.re02, cross);

    // a^4 + b^4 = 1 - 2 a^2 b^2
    const double a2b2 = a2 * b2;
    est.re03_intercept = (2.0 * a2b2 * (1.0 - q) + (1.0 - 2.0 * a2b2) * q - stats.qa +
                          2.0 * ab * (b2 - a2) * est.re02 - 2.0 * a2 * ab * est.re01 - 2.0 * ab * b2 * est.re23) /
                         (2.0 * a2b2);
    est.re03_slope = -1.0;
    est.re12_interval = Interval{-q, q};
    return est;
}

/// The part of [-Q, Q] on which the implied re03 satisfies |re03| <= 1 - Q.
///
/// Slope -1 makes this a single interval. A gap of up to 2e-9 between the bounds is
/// roundoff and collapses to a point; anything wider means no attack fits the data.
inline Interval feasible_re12_set(const InnerProductEstimates &est, Probability q) {
    const double norm03 = 1.0 - q;
    // |c - x| <= norm03  <=>  c - norm03 <= x <= c + norm03
    const double c = est.re03_intercept;
    double lo = std::max(est.re12_interval.lo, c - norm03);
    double hi = std::min(est.re12_interval.hi, c + norm03);
    if (lo > hi) {
        if (lo - hi > 2.0 * detail::kScreenTolerance) {
            throw InconsistentStatistics("no re<e1|e2> in [" + std::to_string(est.re12_interval.lo) + ", " +
                                         std::to_string(est.re12_interval.hi) + "] keeps |re<e0|e3>| <= 1-Q (intercept " +
                                         std::to_string(c) + ")");
        }
        const double mid = std::clamp(0.5 * (lo + hi), est.re12_interval.lo, est.re12_interval.hi);
        lo = hi = mid;
    }
    return Interval{lo, hi};
}

}  // namespace tristate

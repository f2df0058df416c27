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

#include <cmath>
#include <string>

#include <json.hpp>

#include "tristate/entropy.hpp"
#include "tristate/errors.hpp"

namespace tristate {

/// Amplitude of |0> in the third state |a> = alpha|0> + beta|1>. Must lie strictly
/// inside (0, 1) so that both bases are genuinely distinct.
class Alpha {
   public:
    explicit Alpha(double value) : value_(value) {
        if (!(value > 0.0 && value < 1.0)) {
            throw DomainError("alpha must lie in the open interval (0,1): " + std::to_string(value));
        }
    }

    static Alpha from_squared(double alpha_sq) {
        if (!(alpha_sq > 0.0 && alpha_sq < 1.0)) {
            throw DomainError("alpha^2 must lie in the open interval (0,1): " + std::to_string(alpha_sq));
        }
        return Alpha(std::sqrt(alpha_sq));
    }

    [[nodiscard]] double value() const noexcept {
        return value_;
    }
    [[nodiscard]] double beta() const noexcept {
        return std::sqrt(1.0 - value_ * value_);
    }
    [[nodiscard]] double squared() const noexcept {
        return value_ * value_;
    }

    friend bool operator==(Alpha, Alpha) = default;

   private:
    double value_;
};

/// Everything Alice and Bob can estimate from the quantum stage.
///
/// `qa` is p(a -> abar), the error in the A basis. `p0a`, `p1a`, `pa0` are mismatched-basis
/// outcomes: the probability that Bob sees the second label when Alice sent the first.
struct ObservedStatistics {
    Alpha alpha;
    Probability q;
    Probability qa;
    Probability p0a;
    Probability p1a;
    Probability pa0;
};

inline void to_json(nlohmann::json &j, const ObservedStatistics &s) {
    j = nlohmann::json{{"alpha", s.alpha.value()}, {"Q", s.q.value()},     {"QA", s.qa.value()},
                       {"p0a", s.p0a.value()},     {"p1a", s.p1a.value()}, {"pa0", s.pa0.value()}};
}

namespace detail {

inline double required_number(const nlohmann::json &j, const char *field) {
    if (!j.is_object()) {
        throw SchemaError("statistics document must be a JSON object");
    }
    auto it = j.find(field);
    if (it == j.end()) {
        throw SchemaError(std::string("missing field '") + field + "'");
    }
    if (!it->is_number()) {
        throw SchemaError(std::string("field '") + field + "' must be a number");
    }
    return it->get<double>();
}

template <typename T>
T field_as(const nlohmann::json &j, const char *field) {
    const double v = required_number(j, field);
    try {
        return T(v);
    } catch (const DomainError &e) {
        throw SchemaError(std::string("field '") + field + "': " + e.what());
    }
}

}  // namespace detail

inline ObservedStatistics statistics_from_json(const nlohmann::json &j) {
    return ObservedStatistics{
        .alpha = detail::field_as<Alpha>(j, "alpha"),
        .q = detail::field_as<Probability>(j, "Q"),
        .qa = detail::field_as<Probability>(j, "QA"),
        .p0a = detail::field_as<Probability>(j, "p0a"),
        .p1a = detail::field_as<Probability>(j, "p1a"),
        .pa0 = detail::field_as<Probability>(j, "pa0"),
    };
}

}  // namespace tristate

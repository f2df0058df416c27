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
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "tristate/entropy.hpp"
#include "tristate/errors.hpp"
#include "tristate/statistics.hpp"

namespace tristate {

using AncillaVector = std::vector<complex>;

/// <u|v>, antilinear in the first argument.
inline complex inner(std::span<const complex> u, std::span<const complex> v) {
    complex s{};
    for (std::size_t i = 0; i < u.size(); ++i) {
        s += std::conj(u[i]) * v[i];
    }
    return s;
}

inline double norm_squared(std::span<const complex> v) {
    return inner(v, v).real();
}

/// Eve's collective attack, given by its action on Alice's B-basis states:
///   U|0,0> = |0,e0> + |1,e1>,   U|1,0> = |0,e2> + |1,e3>.
/// The ancilla vectors are not normalized; the two images must be orthonormal.
class AttackOperator {
   public:
    static constexpr std::size_t kMaxDimension = 4;
    static constexpr double kUnitarityTolerance = 1e-9;

    AttackOperator(AncillaVector e0, AncillaVector e1, AncillaVector e2, AncillaVector e3)
        : e_{std::move(e0), std::move(e1), std::move(e2), std::move(e3)} {
        const std::size_t d = e_[0].size();
        if (d == 0 || d > kMaxDimension) {
            throw InvalidAttack("ancilla dimension must be in 1..4, got " + std::to_string(d));
        }
        for (const auto &v : e_) {
            if (v.size() != d) {
                throw InvalidAttack("ancilla vectors have mismatched dimensions");
            }
        }
        const double col0 = norm_squared(e_[0]) + norm_squared(e_[1]);
        const double col1 = norm_squared(e_[2]) + norm_squared(e_[3]);
        const complex cross = inner(e_[0], e_[2]) + inner(e_[1], e_[3]);
        if (std::abs(col0 - 1.0) > kUnitarityTolerance) {
            throw InvalidAttack("<e0|e0> + <e1|e1> = " + std::to_string(col0) + ", expected 1");
        }
        if (std::abs(col1 - 1.0) > kUnitarityTolerance) {
            throw InvalidAttack("<e2|e2> + <e3|e3> = " + std::to_string(col1) + ", expected 1");
        }
        if (std::abs(cross) > kUnitarityTolerance) {
            throw InvalidAttack("<e0|e2> + <e1|e3> = " + std::to_string(std::abs(cross)) + " in modulus, expected 0");
        }
    }

    [[nodiscard]] std::size_t ancilla_dimension() const noexcept {
        return e_[0].size();
    }
    /// Ancilla vector e_i, i in 0..3.
    [[nodiscard]] std::span<const complex> e(std::size_t i) const {
        return e_.at(i);
    }

   private:
    std::array<AncillaVector, 4> e_;
};

struct SymmetryReport {
    double q_from_e1 = 0.0;
    double q_from_e2 = 0.0;
    double asymmetry = 0.0;
};

inline SymmetryReport symmetry_report(const AttackOperator &attack) {
    SymmetryReport r;
    r.q_from_e1 = norm_squared(attack.e(1));
    r.q_from_e2 = norm_squared(attack.e(2));
    r.asymmetry = std::abs(r.q_from_e1 - r.q_from_e2);
    return r;
}

/// Statistics Alice and Bob would observe if Eve runs `attack`.
/// The attack must have symmetric B-basis noise (<e1|e1> = <e2|e2> within `symmetry_tolerance`).
inline ObservedStatistics induced_statistics(const AttackOperator &attack, Alpha alpha,
                                             double symmetry_tolerance = 1e-9) {
    const auto sym = symmetry_report(attack);
    if (sym.asymmetry > symmetry_tolerance) {
        throw InvalidAttack("attack noise is asymmetric: <e1|e1> = " + std::to_string(sym.q_from_e1) +
                            ", <e2|e2> = " + std::to_string(sym.q_from_e2));
    }
    const double a = alpha.value();
    const double b = alpha.beta();
    const std::size_t d = attack.ancilla_dimension();

    auto combo = [&](std::initializer_list<std::pair<double, std::size_t>> terms) {
        AncillaVector v(d);
        for (auto [coef, idx] : terms) {
            const auto ei = attack.e(idx);
            for (std::size_t k = 0; k < d; ++k) {
                v[k] += coef * ei[k];
            }
        }
        return norm_squared(v);
    };

    return ObservedStatistics{
        .alpha = alpha,
        .q = Probability(sym.q_from_e1),
        // abar component of U|a>
        .qa = Probability(combo({{a * b, 0}, {b * b, 2}, {-a * a, 1}, {-a * b, 3}})),
        .p0a = Probability(combo({{a, 0}, {b, 1}})),
        .p1a = Probability(combo({{a, 2}, {b, 3}})),
        .pa0 = Probability(combo({{a, 0}, {b, 2}})),
    };
}

/// Joint state of Alice's key bit and Eve's ancilla after Bob's B-basis measurement,
/// with Bob traced out: 1/2 |0><0| (x) (P(e0) + P(e1)) + 1/2 |1><1| (x) (P(e2) + P(e3)).
inline HermitianMatrix alice_eve_state(const AttackOperator &attack) {
    const std::size_t d = attack.ancilla_dimension();
    HermitianMatrix chi(2 * d);
    chi.add_projector(attack.e(0), 0.5, 0);
    chi.add_projector(attack.e(1), 0.5, 0);
    chi.add_projector(attack.e(2), 0.5, d);
    chi.add_projector(attack.e(3), 0.5, d);
    return chi;
}

/// S(A|E) = S(AE) - S(E) of the state produced by `attack`, computed by diagonalization.
inline double exact_conditional_entropy(const AttackOperator &attack) {
    const auto chi = alice_eve_state(attack);
    return von_neumann_entropy(chi) - von_neumann_entropy(chi.partial_trace_first(2));
}

/// Real parts of all six pairwise overlaps of the ancilla vectors.
struct InnerProducts {
    double re01 = 0.0;
    double re02 = 0.0;
    double re03 = 0.0;
    double re12 = 0.0;
    double re13 = 0.0;
    double re23 = 0.0;
};

inline InnerProducts exact_inner_products(const AttackOperator &attack) {
    auto re = [&](std::size_t i, std::size_t j) { return inner(attack.e(i), attack.e(j)).real(); };
    return InnerProducts{re(0, 1), re(0, 2), re(0, 3), re(1, 2), re(1, 3), re(2, 3)};
}

// Reference attacks.

/// Eve does nothing: e0 = e3 = |0>, e1 = e2 = 0.
inline AttackOperator identity_attack(std::size_t dimension = AttackOperator::kMaxDimension) {
    AncillaVector unit(dimension), zero(dimension);
    unit.at(0) = 1.0;
    return AttackOperator(unit, zero, zero, unit);
}

/// Eve copies the B-basis value into her ancilla: e0 = |0>, e3 = |1>, no errors.
inline AttackOperator perfect_copy_attack(std::size_t dimension = AttackOperator::kMaxDimension) {
    if (dimension < 2) {
        throw InvalidAttack("perfect copy needs an ancilla of dimension >= 2");
    }
    AncillaVector e0(dimension), e3(dimension), zero(dimension);
    e0[0] = 1.0;
    e3[1] = 1.0;
    return AttackOperator(e0, zero, zero, e3);
}

/// Stinespring isometry of the Pauli channel rho -> sum_k p_k P_k rho P_k with
/// p_X = p_Z = Q - p_Y and p_I = 1 - p_X - p_Y - p_Z.
///
/// On real qubit states this acts as the depolarizing channel (1-2Q) rho + Q I for any
/// p_Y in [0, Q], so it induces depolarizing statistics for every alpha.
inline AttackOperator pauli_attack(double q, double p_y) {
    if (!(q >= 0.0 && q <= 0.5) || !(p_y >= 0.0 && p_y <= q)) {
        throw DomainError("pauli_attack: need 0 <= p_Y <= Q <= 1/2");
    }
    const double p_x = q - p_y;
    const double p_z = q - p_y;
    const double p_i = 1.0 - p_x - p_y - p_z;
    const double si = std::sqrt(p_i), sx = std::sqrt(p_x), sy = std::sqrt(p_y), sz = std::sqrt(p_z);
    const complex i{0.0, 1.0};
    // ancilla basis |I>, |X>, |Y>, |Z>; Y|0> = i|1>, Y|1> = -i|0>
    AncillaVector e0{si, 0.0, 0.0, sz};
    AncillaVector e1{0.0, sx, i * sy, 0.0};
    AncillaVector e2{0.0, sx, -i * sy, 0.0};
    AncillaVector e3{si, 0.0, 0.0, -sz};
    return AttackOperator(e0, e1, e2, e3);
}

/// The depolarizing-equivalent attack that is optimal for Eve: p_Y = Q^2, p_X = p_Z = Q(1-Q).
inline AttackOperator depolarizing_attack(double q) {
    return pauli_attack(q, q * q);
}

inline void to_json(nlohmann::json &j, const AttackOperator &attack) {
    j = nlohmann::json::object();
    j["dimension"] = attack.ancilla_dimension();
    for (std::size_t i = 0; i < 4; ++i) {
        auto arr = nlohmann::json::array();
        for (const auto &z : attack.e(i)) {
            arr.push_back({z.real(), z.imag()});
        }
        j["e" + std::to_string(i)] = std::move(arr);
    }
}

inline AttackOperator attack_from_json(const nlohmann::json &j) {
    if (!j.is_object()) {
        throw SchemaError("attack document must be a JSON object");
    }
    std::array<AncillaVector, 4> e;
    for (std::size_t i = 0; i < 4; ++i) {
        const std::string key = "e" + std::to_string(i);
        auto it = j.find(key);
        if (it == j.end() || !it->is_array()) {
            throw SchemaError("missing or non-array field '" + key + "'");
        }
        for (const auto &pair : *it) {
            if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number()) {
                throw SchemaError("field '" + key + "' entries must be [re, im] pairs");
            }
            e[i].emplace_back(pair[0].get<double>(), pair[1].get<double>());
        }
    }
    return AttackOperator(std::move(e[0]), std::move(e[1]), std::move(e[2]), std::move(e[3]));
}

}  // namespace tristate

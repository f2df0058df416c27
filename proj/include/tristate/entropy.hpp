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
#include <complex>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "tristate/errors.hpp"

namespace tristate {

using complex = std::complex<double>;

/// A real number in [0, 1]. Values within 1e-12 of the boundary are snapped onto it;
/// anything further out is rejected.
class Probability {
   public:
    static constexpr double kTolerance = 1e-12;

    constexpr Probability() = default;
    explicit Probability(double value) : value_(checked(value)) {
    }

    [[nodiscard]] constexpr double value() const noexcept {
        return value_;
    }
    constexpr operator double() const noexcept {  // NOLINT(google-explicit-constructor)
        return value_;
    }

    friend constexpr bool operator==(Probability, Probability) = default;

   private:
    static double checked(double v) {
        if (!(v >= -kTolerance && v <= 1.0 + kTolerance)) {
            throw DomainError("probability out of [0,1]: " + std::to_string(v));
        }
        return std::clamp(v, 0.0, 1.0);
    }

    double value_ = 0.0;
};

/// Dense d x d Hermitian matrix, row-major.
class HermitianMatrix {
   public:
    static constexpr double kHermiticityTolerance = 1e-12;

    HermitianMatrix() = default;

    /// Zero matrix of the given dimension.
    explicit HermitianMatrix(std::size_t dimension) : dim_(dimension), entries_(dimension * dimension) {
        if (dimension == 0) {
            throw DomainError("matrix dimension must be positive");
        }
    }

    /// Takes ownership of row-major entries; throws DomainError if the result is not Hermitian.
    HermitianMatrix(std::size_t dimension, std::vector<complex> entries) : dim_(dimension), entries_(std::move(entries)) {
        if (dimension == 0 || entries_.size() != dimension * dimension) {
            throw DomainError("entry count does not match dimension");
        }
        for (std::size_t i = 0; i < dim_; ++i) {
            for (std::size_t j = i; j < dim_; ++j) {
                if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > kHermiticityTolerance) {
                    throw DomainError("matrix is not Hermitian");
                }
            }
        }
    }

    [[nodiscard]] std::size_t dimension() const noexcept {
        return dim_;
    }
    [[nodiscard]] const complex &operator()(std::size_t row, std::size_t col) const {
        return entries_[row * dim_ + col];
    }
    [[nodiscard]] std::span<const complex> entries() const noexcept {
        return entries_;
    }

    [[nodiscard]] double trace() const {
        double t = 0.0;
        for (std::size_t i = 0; i < dim_; ++i) {
            t += (*this)(i, i).real();
        }
        return t;
    }

    [[nodiscard]] double frobenius_norm_squared() const {
        double s = 0.0;
        for (const auto &z : entries_) {
            s += std::norm(z);
        }
        return s;
    }

    /// this += weight * |v><v| on the diagonal block starting at `offset`.
    void add_projector(std::span<const complex> v, double weight = 1.0, std::size_t offset = 0) {
        if (offset + v.size() > dim_) {
            throw DomainError("projector does not fit in matrix");
        }
        for (std::size_t i = 0; i < v.size(); ++i) {
            for (std::size_t j = 0; j < v.size(); ++j) {
                entries_[(offset + i) * dim_ + offset + j] += weight * v[i] * std::conj(v[j]);
            }
        }
    }

    /// Traces out the first tensor factor of dimension `outer`, returning the
    /// (dimension / outer)-dimensional reduced operator on the second factor.
    [[nodiscard]] HermitianMatrix partial_trace_first(std::size_t outer) const {
        if (outer == 0 || dim_ % outer != 0) {
            throw DomainError("partial trace: dimension not divisible by factor");
        }
        const std::size_t inner = dim_ / outer;
        HermitianMatrix out(inner);
        for (std::size_t k = 0; k < outer; ++k) {
            for (std::size_t i = 0; i < inner; ++i) {
                for (std::size_t j = 0; j < inner; ++j) {
                    out.entries_[i * inner + j] += (*this)(k * inner + i, k * inner + j);
                }
            }
        }
        return out;
    }

   private:
    std::size_t dim_ = 0;
    std::vector<complex> entries_;
};

/// h(x) = -x log2 x - (1-x) log2(1-x), with h(0) = h(1) = 0.
inline double binary_entropy(double x) {
    if (!(x >= -1e-12 && x <= 1.0 + 1e-12)) {
        throw DomainError("binary_entropy: argument out of [0,1]: " + std::to_string(x));
    }
    x = std::clamp(x, 0.0, 1.0);
    if (x == 0.0 || x == 1.0) {
        return 0.0;
    }
    return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

/// Shannon entropy in bits; zero entries contribute nothing.
inline double shannon_entropy(std::span<const double> p) {
    double total = 0.0;
    for (double pi : p) {
        if (pi < 0.0) {
            throw DomainError("shannon_entropy: negative probability");
        }
        total += pi;
    }
    if (std::abs(total - 1.0) > 1e-9) {
        throw DomainError("shannon_entropy: distribution sums to " + std::to_string(total));
    }
    double s = 0.0;
    for (double pi : p) {
        if (pi > 0.0) {
            s -= pi * std::log2(pi);
        }
    }
    return s;
}

/// Eigenvalues of a Hermitian matrix, sorted descending.
inline std::vector<double> hermitian_eigenvalues(const HermitianMatrix &m) {
    const auto d = static_cast<Eigen::Index>(m.dimension());
    Eigen::MatrixXcd dense(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
            dense(i, j) = m(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(dense, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw ConvergenceError("hermitian_eigenvalues: eigensolver did not converge");
    }
    std::vector<double> values(solver.eigenvalues().data(), solver.eigenvalues().data() + d);
    std::sort(values.begin(), values.end(), std::greater<>());
    return values;
}

/// S(m) = -tr(m log2 m) for a density matrix.
///
/// Eigenvalues in [-1e-10, 0) are treated as roundoff and set to zero; the spectrum is
/// then renormalized if that moved its sum by less than 1e-9. More negative eigenvalues
/// or a trace away from one raise NonPhysicalState.
inline double von_neumann_entropy(const HermitianMatrix &m) {
    constexpr double kNegativeTolerance = 1e-10;
    constexpr double kTraceTolerance = 1e-9;

    if (std::abs(m.trace() - 1.0) > kTraceTolerance) {
        throw NonPhysicalState("von_neumann_entropy: trace is " + std::to_string(m.trace()));
    }
    auto eig = hermitian_eigenvalues(m);
    for (double &v : eig) {
        if (v < -kNegativeTolerance) {
            throw NonPhysicalState("von_neumann_entropy: negative eigenvalue " + std::to_string(v));
        }
        v = std::max(v, 0.0);
    }
    const double total = std::accumulate(eig.begin(), eig.end(), 0.0);
    if (std::abs(total - 1.0) >= kTraceTolerance) {
        throw NonPhysicalState("von_neumann_entropy: spectrum sums to " + std::to_string(total));
    }
    for (double &v : eig) {
        v /= total;
    }
    return shannon_entropy(eig);
}

}  // namespace tristate

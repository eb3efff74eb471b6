// Copyright 2026 The Contractis Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>

#include "contractis/linalg.hpp"
#include "contractis/random.hpp"

namespace contractis {

// Hermitian, positive semidefinite, unit-trace operator.
class DensityOperator {
public:
    static constexpr double kTraceTol = 1e-10;

    // Validates and stores the Hermitized matrix. Throws ValidationError.
    explicit DensityOperator(const ComplexMatrix& m);

    const ComplexMatrix& matrix() const { return matrix_; }
    std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }
    double purity() const;

private:
    ComplexMatrix matrix_;
};

// Human-readable reason why `m` is not a valid state, or empty if it is.
std::string state_violation(const ComplexMatrix& m);

DensityOperator pure_state(const ComplexVector& psi);
DensityOperator maximally_mixed(std::size_t d);

double trace_norm_distance(const DensityOperator& rho, const DensityOperator& sigma);

// Qubit Bloch vector r with rho = (I + r·σ)/2.
Eigen::Vector3d bloch_vector(const ComplexMatrix& rho);
ComplexMatrix from_bloch(const Eigen::Vector3d& r, double trace = 1.0);

// Pauli expansion of a two-qubit operator:
// rho = (I⊗I + Σ α_k σ_k⊗I + Σ β_k I⊗σ_k + Σ θ_kl σ_k⊗σ_l) / 4.
struct BipartiteDecomposition {
    Eigen::Vector3d alpha = Eigen::Vector3d::Zero();
    Eigen::Vector3d beta = Eigen::Vector3d::Zero();
    Eigen::Matrix3d theta = Eigen::Matrix3d::Zero();
};

BipartiteDecomposition decompose_two_qubit(const DensityOperator& rho);
BipartiteDecomposition decompose_two_qubit(const ComplexMatrix& rho);
// Hermitian with unit trace; positivity is up to the caller.
ComplexMatrix reconstruct_two_qubit(const BipartiteDecomposition& dec);

enum class LogBase { natural, two };

// -Σ λ log λ, eigenvalues below 1e-12 contribute nothing.
double von_neumann_entropy(const DensityOperator& rho, LogBase base = LogBase::natural);

// Hilbert-Schmidt random mixed state, Haar unitary, Haar pure vector.
DensityOperator random_state(std::size_t d, Rng& rng);
ComplexMatrix random_unitary(std::size_t d, Rng& rng);
ComplexVector random_pure(std::size_t d, Rng& rng);

DensityOperator random_state(std::size_t d, std::uint64_t seed);
ComplexMatrix random_unitary(std::size_t d, std::uint64_t seed);
ComplexVector random_pure(std::size_t d, std::uint64_t seed);

}  // namespace contractis

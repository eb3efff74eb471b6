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

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "contractis/linalg.hpp"
#include "contractis/random.hpp"
#include "contractis/states.hpp"

namespace contractis {

// d^2 x d^2 matrix acting on column-vectorized operators.
class Superoperator {
public:
    explicit Superoperator(ComplexMatrix matrix);

    const ComplexMatrix& matrix() const { return matrix_; }
    std::size_t dim() const { return dim_; }
    ComplexMatrix apply(const ComplexMatrix& x) const;

private:
    ComplexMatrix matrix_;
    std::size_t dim_;
};

// Provenance used by closed-form analyses. Composite channels lose it
// except for tensor products, which keep their factors.
enum class ChannelKind { generic, identity, depolarizing, unitary, constant, tensor };

// Linear map on d x d operators, X -> Σ A_i X B_i†. Genuine channels are
// stored in Kraus form (A_i = B_i); general operator pairs exist so non-CP
// maps can be loaded and inspected. Validation flags are computed once at
// construction.
class QuantumChannel {
public:
    static constexpr double kTraceTol = 1e-8;
    static constexpr double kChoiTol = 1e-10;

    // Kraus operators with Frobenius norm below 1e-12 are dropped.
    static QuantumChannel from_kraus(std::vector<ComplexMatrix> kraus);
    static QuantumChannel from_operator_pairs(std::vector<ComplexMatrix> left, std::vector<ComplexMatrix> right);
    // Choi matrix Σ_ij T(E_ij) ⊗ E_ij of a Hermiticity-preserving map.
    static QuantumChannel from_choi(const ComplexMatrix& choi);

    std::size_t dim() const { return dim_; }

    bool is_kraus_form() const { return right_.empty(); }
    // Kraus operators; for non-Kraus maps the left operators of each pair.
    const std::vector<ComplexMatrix>& kraus() const { return left_; }
    const std::vector<ComplexMatrix>& right_operators() const { return right_.empty() ? left_ : right_; }

    bool completely_positive() const { return cp_; }
    bool trace_preserving() const { return tp_; }
    bool unital() const { return unital_; }
    // Completely positive and trace preserving.
    bool is_channel() const { return cp_ && tp_; }
    double choi_min_eigenvalue() const { return choi_min_eig_; }
    double trace_preservation_deviation() const { return tp_dev_; }

    // Empty when the map is a valid channel, otherwise the first violation.
    std::string violation() const;
    // Throws ValidationError naming `op` unless the map is a channel.
    void require_channel(const std::string& op) const;

    ComplexMatrix apply(const ComplexMatrix& x) const;
    // Adjoint map X -> Σ A_i† X B_i (Heisenberg picture).
    ComplexMatrix apply_adjoint(const ComplexMatrix& x) const;

    ChannelKind kind() const { return kind_; }
    double depolarizing_parameter() const { return param_; }
    const std::vector<std::shared_ptr<const QuantumChannel>>& factors() const { return factors_; }

    QuantumChannel with_kind(ChannelKind kind, double param = 0.0) const;
    QuantumChannel with_factors(std::vector<std::shared_ptr<const QuantumChannel>> factors) const;

private:
    QuantumChannel(std::vector<ComplexMatrix> left, std::vector<ComplexMatrix> right);
    void validate();

    std::size_t dim_ = 0;
    std::vector<ComplexMatrix> left_;
    std::vector<ComplexMatrix> right_;
    bool cp_ = false;
    bool tp_ = false;
    bool unital_ = false;
    double choi_min_eig_ = 0.0;
    double tp_dev_ = 0.0;
    ChannelKind kind_ = ChannelKind::generic;
    double param_ = 0.0;
    std::vector<std::shared_ptr<const QuantumChannel>> factors_;
};

// Tρ = U [T_{v,t}(V ρ V†)] U†, where T_{v,t} maps the Bloch vector r to t + diag(v) r.
struct QubitCanonicalForm {
    ComplexMatrix u = linalg::identity(2);
    ComplexMatrix v_unitary = linalg::identity(2);
    Eigen::Vector3d v = Eigen::Vector3d::Ones();
    Eigen::Vector3d t = Eigen::Vector3d::Zero();
};

// Affine action of a qubit map on Bloch vectors: r -> m r + t.
struct BlochAffineMap {
    Eigen::Matrix3d m;
    Eigen::Vector3d t;
};

DensityOperator apply(const QuantumChannel& channel, const DensityOperator& rho);

QuantumChannel identity_channel(std::size_t d);
// p in [0, 1]; p = 1 is the completely depolarizing channel.
QuantumChannel depolarizing(std::size_t d, double p);
QuantumChannel qubit_canonical(const QubitCanonicalForm& form);
QuantumChannel constant_channel(const DensityOperator& sigma);
QuantumChannel unitary_channel(const ComplexMatrix& u);

// outer ∘ inner: `inner` acts first.
QuantumChannel compose(const QuantumChannel& outer, const QuantumChannel& inner);
QuantumChannel mix(const std::vector<std::pair<double, QuantumChannel>>& components);
QuantumChannel tensor(const QuantumChannel& a, const QuantumChannel& b);

Superoperator to_superoperator(const QuantumChannel& channel);
ComplexMatrix choi_matrix(const QuantumChannel& channel);

BlochAffineMap bloch_affine_map(const QuantumChannel& channel);
// Decomposes any qubit map into canonical form (U, V proper rotations, v possibly signed).
QubitCanonicalForm canonical_form(const QuantumChannel& channel);

// SU(2) element whose adjoint action on Pauli vectors is the rotation R.
ComplexMatrix rotation_to_unitary(const Eigen::Matrix3d& rotation);
// Rotation R with U σ_j U† = Σ_i R_ij σ_i.
Eigen::Matrix3d unitary_to_rotation(const ComplexMatrix& u);

// Random channel with `kraus_count` Kraus operators from a Haar-random isometry.
QuantumChannel random_channel(std::size_t d, std::size_t kraus_count, Rng& rng);

bool is_unitary(const ComplexMatrix& u, double tol = 1e-10);

}  // namespace contractis

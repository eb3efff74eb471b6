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

#include <cstddef>
#include <cstdint>
#include <vector>

#include "contractis/channels.hpp"
#include "contractis/linalg.hpp"

namespace contractis {

// A *-subalgebra of B(C^d), stored through a Hilbert-Schmidt orthonormal basis.
struct OperatorAlgebra {
    std::size_t dim = 0;
    std::vector<ComplexMatrix> basis;
    bool contains_identity = false;

    std::size_t size() const { return basis.size(); }
    // Columns are vec(B_j); orthonormal.
    ComplexMatrix coordinates() const;
    // Distance from x to the span, in Hilbert-Schmidt norm.
    double residual(const ComplexMatrix& x) const;
};

OperatorAlgebra algebra_from_span(std::size_t dim, const std::vector<ComplexMatrix>& elements);

// Unital *-algebra generated by the Kraus operators of a completely positive map.
OperatorAlgebra interaction_algebra(const QuantumChannel& channel);
OperatorAlgebra generated_algebra(std::size_t dim, const std::vector<ComplexMatrix>& generators);

OperatorAlgebra commutant(const OperatorAlgebra& a);

// Largest distance of a product B_i B_j or adjoint B_i† from the span.
double closure_residual(const OperatorAlgebra& a);

struct WedderburnBlock {
    std::size_t multiplicity;  // m_i
    std::size_t dimension;     // n_i
};

// Block structure H = ⊕ C^{m_i} ⊗ C^{n_i} with A = ⊕ I_{m_i} ⊗ M_{n_i}.
struct WedderburnProfile {
    std::vector<WedderburnBlock> blocks;  // sorted by (m, n)
    std::size_t algebra_dim = 0;
    std::size_t commutant_dim = 0;
    std::size_t center_dim = 0;
};

constexpr std::uint64_t kCentralElementSeed = 0x5eed;

WedderburnProfile wedderburn_profile(const OperatorAlgebra& a);

struct NoiselessSubsystems {
    WedderburnProfile profile;
    bool nontrivial = false;  // some block has multiplicity >= 2
    std::size_t commutant_dim = 0;
};

NoiselessSubsystems noiseless_subsystems(const QuantumChannel& channel);

struct KnillLaflammeResult {
    bool correctable = false;
    ComplexMatrix lambda;  // lambda_ij = tr(P K_i† K_j P) / dim K
    double max_residual = 0.0;
};

constexpr double kCorrectableTol = 1e-8;

// Compression test P K_i† K_j P = lambda_ij P. code_basis columns must be orthonormal.
KnillLaflammeResult knill_laflamme_check(const std::vector<ComplexMatrix>& errors, const ComplexMatrix& code_basis);
KnillLaflammeResult knill_laflamme_check(const QuantumChannel& channel, const ComplexMatrix& code_basis);

}  // namespace contractis

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

#include "contractis/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "contractis/error.hpp"
#include "contractis/random.hpp"

namespace contractis {

namespace {

constexpr double kRankTol = 1e-9;
constexpr double kEigenGroupTol = 1e-7;
constexpr double kOrthonormalTol = 1e-10;
constexpr int kCentralDraws = 5;

using Index = Eigen::Index;

ComplexMatrix stack(std::size_t dim, const std::vector<ComplexMatrix>& elements) {
    const Index n = static_cast<Index>(dim * dim);
    ComplexMatrix m(n, static_cast<Index>(elements.size()));
    for (std::size_t j = 0; j < elements.size(); ++j) {
        if (static_cast<std::size_t>(elements[j].rows()) != dim || static_cast<std::size_t>(elements[j].cols()) != dim) {
            throw DimensionError("operator algebra: element " + std::to_string(j) + " is not " + std::to_string(dim) +
                                 "x" + std::to_string(dim));
        }
        m.col(static_cast<Index>(j)) = linalg::vec(elements[j]);
    }
    return m;
}

OperatorAlgebra from_coordinates(std::size_t dim, const ComplexMatrix& q) {
    OperatorAlgebra a;
    a.dim = dim;
    for (Index j = 0; j < q.cols(); ++j) a.basis.push_back(linalg::unvec(q.col(j), dim, dim));
    a.contains_identity = a.residual(linalg::identity(dim)) < 1e-8;
    return a;
}

// rank with the same relative cut as the span computations
std::size_t span_rank(const ComplexMatrix& m) {
    return static_cast<std::size_t>(linalg::orthonormal_span(m, kRankTol).cols());
}

std::vector<ComplexMatrix> kraus_of(const QuantumChannel& channel) {
    if (!channel.completely_positive()) {
        throw ValidationError("interaction algebra: map is not completely positive (Choi matrix minimum eigenvalue " +
                              std::to_string(channel.choi_min_eigenvalue()) + ")");
    }
    if (channel.is_kraus_form()) return channel.kraus();
    return QuantumChannel::from_choi(choi_matrix(channel)).kraus();
}

}  // namespace

ComplexMatrix OperatorAlgebra::coordinates() const { return stack(dim, basis); }

double OperatorAlgebra::residual(const ComplexMatrix& x) const {
    const ComplexVector v = linalg::vec(x);
    if (basis.empty()) return v.norm();
    const ComplexMatrix q = coordinates();
    return (v - q * (q.adjoint() * v)).norm();
}

OperatorAlgebra algebra_from_span(std::size_t dim, const std::vector<ComplexMatrix>& elements) {
    return from_coordinates(dim, linalg::orthonormal_span(stack(dim, elements), kRankTol));
}

OperatorAlgebra generated_algebra(std::size_t dim, const std::vector<ComplexMatrix>& generators) {
    std::vector<ComplexMatrix> gens;
    for (const auto& g : generators) {
        gens.push_back(g);
        gens.push_back(g.adjoint());
    }
    std::vector<ComplexMatrix> seed = gens;
    seed.push_back(linalg::identity(dim));
    ComplexMatrix q = linalg::orthonormal_span(stack(dim, seed), kRankTol);

    // The span contains I, so closing it under left multiplication by the
    // generators yields the whole algebra.
    for (;;) {
        const Index k = q.cols();
        std::vector<ComplexMatrix> grown;
        grown.reserve(static_cast<std::size_t>(k) * (gens.size() + 1));
        for (Index j = 0; j < k; ++j) {
            const ComplexMatrix b = linalg::unvec(q.col(j), dim, dim);
            grown.push_back(b);
            for (const auto& g : gens) grown.push_back(g * b);
        }
        ComplexMatrix next = linalg::orthonormal_span(stack(dim, grown), kRankTol);
        if (next.cols() == k) break;
        q = std::move(next);
    }
    return from_coordinates(dim, q);
}

OperatorAlgebra interaction_algebra(const QuantumChannel& channel) {
    return generated_algebra(channel.dim(), kraus_of(channel));
}

OperatorAlgebra commutant(const OperatorAlgebra& a) {
    const Index d = static_cast<Index>(a.dim);
    const Index n = d * d;
    const ComplexMatrix id = linalg::identity(a.dim);
    // vec(XB - BX) = (Bᵀ ⊗ I - I ⊗ B) vec X
    ComplexMatrix system(n * static_cast<Index>(a.size()), n);
    for (std::size_t j = 0; j < a.size(); ++j) {
        const ComplexMatrix& b = a.basis[j];
        system.middleRows(static_cast<Index>(j) * n, n) = linalg::kron(b.transpose(), id) - linalg::kron(id, b);
    }
    return from_coordinates(a.dim, linalg::null_space(system, kRankTol));
}

double closure_residual(const OperatorAlgebra& a) {
    double worst = 0.0;
    for (const auto& x : a.basis) {
        worst = std::max(worst, a.residual(x.adjoint()));
        for (const auto& y : a.basis) worst = std::max(worst, a.residual(x * y));
    }
    return worst;
}

WedderburnProfile wedderburn_profile(const OperatorAlgebra& a) {
    if (!a.contains_identity) throw ValidationError("wedderburn_profile: algebra does not contain the identity");
    const Index d = static_cast<Index>(a.dim);
    const Index k = static_cast<Index>(a.size());
    const Index n = d * d;

    // centre: coefficients c with Σ c_i [B_i, B_j] = 0 for every j
    ComplexMatrix system(n * k, k);
    for (Index j = 0; j < k; ++j) {
        for (Index i = 0; i < k; ++i) {
            const ComplexMatrix& bi = a.basis[static_cast<std::size_t>(i)];
            const ComplexMatrix& bj = a.basis[static_cast<std::size_t>(j)];
            system.block(j * n, i, n, 1) = linalg::vec(bi * bj - bj * bi);
        }
    }
    const ComplexMatrix coeffs = linalg::null_space(system, kRankTol);
    std::vector<ComplexMatrix> hermitian;
    for (Index c = 0; c < coeffs.cols(); ++c) {
        ComplexMatrix z = ComplexMatrix::Zero(d, d);
        for (Index i = 0; i < k; ++i) z += coeffs(i, c) * a.basis[static_cast<std::size_t>(i)];
        // skip parts that are only rounding noise, normalizing them would amplify it
        for (const ComplexMatrix& part : {ComplexMatrix((z + z.adjoint()) / 2.0),
                                          ComplexMatrix((z - z.adjoint()) / Complex(0.0, 2.0))}) {
            if (part.norm() > kRankTol * z.norm()) hermitian.push_back(part);
        }
    }
    const ComplexMatrix herm_span = linalg::orthonormal_span(stack(a.dim, hermitian), kRankTol);
    const std::size_t center_dim = static_cast<std::size_t>(coeffs.cols());

    std::vector<ComplexMatrix> projections;
    Rng rng = make_rng(kCentralElementSeed);
    for (int draw = 0; draw < kCentralDraws && projections.size() != center_dim; ++draw) {
        ComplexMatrix h = ComplexMatrix::Zero(d, d);
        for (const auto& x : hermitian) h += uniform(rng, -1.0, 1.0) * x / x.norm();
        const auto eig = linalg::eigh(linalg::hermitize(h));
        projections.clear();
        Index start = 0;
        for (Index i = 1; i <= d; ++i) {
            if (i == d || eig.values(i) - eig.values(i - 1) > kEigenGroupTol) {
                const ComplexMatrix v = eig.vectors.middleCols(start, i - start);
                projections.push_back(v * v.adjoint());
                start = i;
            }
        }
    }
    if (projections.size() != center_dim || static_cast<std::size_t>(herm_span.cols()) != center_dim) {
        throw ConvergenceError("wedderburn_profile: could not separate the " + std::to_string(center_dim) +
                               " minimal central projections");
    }

    WedderburnProfile profile;
    profile.algebra_dim = a.size();
    profile.center_dim = center_dim;
    profile.commutant_dim = commutant(a).size();
    for (const auto& p : projections) {
        std::vector<ComplexMatrix> compressed;
        for (const auto& b : a.basis) compressed.push_back(p * b * p);
        const std::size_t block_dim = span_rank(stack(a.dim, compressed));
        const auto nb = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(block_dim))));
        const auto rank = static_cast<std::size_t>(std::llround(p.trace().real()));
        if (nb == 0 || nb * nb != block_dim || rank % nb != 0) {
            throw ConvergenceError("wedderburn_profile: block of rank " + std::to_string(rank) +
                                   " carries a compressed algebra of dimension " + std::to_string(block_dim));
        }
        profile.blocks.push_back({rank / nb, nb});
    }
    std::sort(profile.blocks.begin(), profile.blocks.end(), [](const auto& x, const auto& y) {
        return std::tie(x.multiplicity, x.dimension) < std::tie(y.multiplicity, y.dimension);
    });

    std::size_t sum_mn = 0, sum_nn = 0, sum_mm = 0;
    for (const auto& b : profile.blocks) {
        sum_mn += b.multiplicity * b.dimension;
        sum_nn += b.dimension * b.dimension;
        sum_mm += b.multiplicity * b.multiplicity;
    }
    if (sum_mn != a.dim || sum_nn != profile.algebra_dim || sum_mm != profile.commutant_dim) {
        throw ConvergenceError("wedderburn_profile: sum rules violated (sum m n = " + std::to_string(sum_mn) +
                               ", sum n^2 = " + std::to_string(sum_nn) + ", sum m^2 = " + std::to_string(sum_mm) +
                               "); closure is numerically broken");
    }
    return profile;
}

NoiselessSubsystems noiseless_subsystems(const QuantumChannel& channel) {
    NoiselessSubsystems out;
    out.profile = wedderburn_profile(interaction_algebra(channel));
    out.commutant_dim = out.profile.commutant_dim;
    out.nontrivial = std::any_of(out.profile.blocks.begin(), out.profile.blocks.end(),
                                 [](const auto& b) { return b.multiplicity >= 2; });
    return out;
}

KnillLaflammeResult knill_laflamme_check(const std::vector<ComplexMatrix>& errors, const ComplexMatrix& code_basis) {
    if (errors.empty()) throw ValidationError("knill_laflamme_check: empty error set");
    const Index d = code_basis.rows();
    const Index k = code_basis.cols();
    if (k == 0) throw ValidationError("knill_laflamme_check: empty code basis");
    for (std::size_t i = 0; i < errors.size(); ++i) {
        if (errors[i].rows() != d || errors[i].cols() != d) {
            throw DimensionError("knill_laflamme_check: error operator " + std::to_string(i) +
                                 " does not match the code dimension");
        }
    }
    const double gram_dev = (code_basis.adjoint() * code_basis - ComplexMatrix::Identity(k, k)).cwiseAbs().maxCoeff();
    if (gram_dev > kOrthonormalTol) {
        throw ValidationError("knill_laflamme_check: code basis is not orthonormal (deviation " +
                              std::to_string(gram_dev) + ")");
    }

    const Index m = static_cast<Index>(errors.size());
    std::vector<ComplexMatrix> compressed;
    for (const auto& e : errors) compressed.push_back(e * code_basis);
    KnillLaflammeResult out;
    out.lambda = ComplexMatrix::Zero(m, m);
    const ComplexMatrix id = ComplexMatrix::Identity(k, k);
    for (Index i = 0; i < m; ++i) {
        for (Index j = 0; j < m; ++j) {
            const ComplexMatrix block = compressed[static_cast<std::size_t>(i)].adjoint() *
                                        compressed[static_cast<std::size_t>(j)];
            const Complex lambda = block.trace() / static_cast<double>(k);
            out.lambda(i, j) = lambda;
            // spectral norm of P K_i† K_j P - lambda P restricted to the code
            const RealVector s = linalg::singular_values(block - lambda * id);
            out.max_residual = std::max(out.max_residual, s.size() ? s.maxCoeff() : 0.0);
        }
    }
    out.correctable = out.max_residual < kCorrectableTol;
    return out;
}

KnillLaflammeResult knill_laflamme_check(const QuantumChannel& channel, const ComplexMatrix& code_basis) {
    if (static_cast<std::size_t>(code_basis.rows()) != channel.dim()) {
        throw DimensionError("knill_laflamme_check: code basis dimension does not match the channel");
    }
    return knill_laflamme_check(kraus_of(channel), code_basis);
}

}  // namespace contractis

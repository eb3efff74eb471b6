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

#include "contractis/states.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "contractis/error.hpp"

namespace contractis {

namespace {

constexpr double kEntropyFloor = 1e-12;

}  // namespace

std::string state_violation(const ComplexMatrix& m) {
    std::ostringstream out;
    if (m.rows() != m.cols() || m.rows() == 0) {
        out << "density operator must be a nonempty square matrix, got " << m.rows() << "x" << m.cols();
        return out.str();
    }
    if (!m.allFinite()) return "density operator has non-finite entries";
    const double dev = linalg::hermiticity_deviation(m);
    if (dev > linalg::kHermitianTol) {
        out << "density operator is not Hermitian (max deviation " << dev << ")";
        return out.str();
    }
    const double tr = m.trace().real();
    if (std::abs(tr - 1.0) > DensityOperator::kTraceTol) {
        out.precision(15);
        out << "density operator trace is " << tr << ", expected 1";
        return out.str();
    }
    const double min_eig = linalg::eigh(m).values(0);
    if (min_eig < -linalg::kPsdTol) {
        out << "density operator is not positive semidefinite (min eigenvalue " << min_eig << ")";
        return out.str();
    }
    return {};
}

DensityOperator::DensityOperator(const ComplexMatrix& m) {
    if (const std::string why = state_violation(m); !why.empty()) throw ValidationError(why);
    matrix_ = linalg::hermitize(m);
}

double DensityOperator::purity() const {
    return (matrix_ * matrix_).trace().real();
}

DensityOperator pure_state(const ComplexVector& psi) {
    if (psi.size() == 0) throw ValidationError("pure_state: empty vector");
    const double norm = psi.norm();
    if (std::abs(norm - 1.0) > 1e-10) {
        throw ValidationError("pure_state: vector norm is " + std::to_string(norm) + ", expected 1");
    }
    return DensityOperator(linalg::ket_bra(psi, psi));
}

DensityOperator maximally_mixed(std::size_t d) {
    if (d == 0) throw ValidationError("maximally_mixed: dimension must be positive");
    return DensityOperator(linalg::identity(d) / static_cast<double>(d));
}

double trace_norm_distance(const DensityOperator& rho, const DensityOperator& sigma) {
    return linalg::trace_norm_distance(rho.matrix(), sigma.matrix());
}

Eigen::Vector3d bloch_vector(const ComplexMatrix& rho) {
    if (rho.rows() != 2 || rho.cols() != 2) throw DimensionError("bloch_vector: expected a 2x2 operator");
    Eigen::Vector3d r;
    for (int k = 1; k <= 3; ++k) r(k - 1) = (linalg::pauli(k) * rho).trace().real();
    return r;
}

ComplexMatrix from_bloch(const Eigen::Vector3d& r, double trace) {
    ComplexMatrix m = trace * linalg::pauli(0);
    for (int k = 1; k <= 3; ++k) m += r(k - 1) * linalg::pauli(k);
    return m * 0.5;
}

BipartiteDecomposition decompose_two_qubit(const ComplexMatrix& rho) {
    if (rho.rows() != 4 || rho.cols() != 4) {
        throw DimensionError("decompose_two_qubit: expected a 4x4 operator, got " + std::to_string(rho.rows()) + "x" +
                             std::to_string(rho.cols()));
    }
    using linalg::kron;
    using linalg::pauli;
    BipartiteDecomposition dec;
    for (int k = 1; k <= 3; ++k) {
        dec.alpha(k - 1) = (rho * kron(pauli(k), pauli(0))).trace().real();
        dec.beta(k - 1) = (rho * kron(pauli(0), pauli(k))).trace().real();
        for (int l = 1; l <= 3; ++l) dec.theta(k - 1, l - 1) = (rho * kron(pauli(k), pauli(l))).trace().real();
    }
    return dec;
}

BipartiteDecomposition decompose_two_qubit(const DensityOperator& rho) {
    return decompose_two_qubit(rho.matrix());
}

ComplexMatrix reconstruct_two_qubit(const BipartiteDecomposition& dec) {
    using linalg::kron;
    using linalg::pauli;
    ComplexMatrix m = kron(pauli(0), pauli(0));
    for (int k = 1; k <= 3; ++k) {
        m += dec.alpha(k - 1) * kron(pauli(k), pauli(0));
        m += dec.beta(k - 1) * kron(pauli(0), pauli(k));
        for (int l = 1; l <= 3; ++l) m += dec.theta(k - 1, l - 1) * kron(pauli(k), pauli(l));
    }
    return m * 0.25;
}

double von_neumann_entropy(const DensityOperator& rho, LogBase base) {
    const RealVector eig = linalg::eigh(rho.matrix()).values;
    double s = 0.0;
    for (double l : eig) {
        if (l < kEntropyFloor) continue;
        s -= l * std::log(l);
    }
    // pure states land within rounding of zero on either side
    if (std::abs(s) < 1e-12) s = 0.0;
    return base == LogBase::two ? s / std::log(2.0) : s;
}

DensityOperator random_state(std::size_t d, Rng& rng) {
    if (d == 0) throw ValidationError("random_state: dimension must be positive");
    const auto n = static_cast<Eigen::Index>(d);
    const ComplexMatrix g = gaussian_matrix(n, n, rng);
    ComplexMatrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    return DensityOperator(linalg::hermitize(rho));
}

ComplexMatrix random_unitary(std::size_t d, Rng& rng) {
    if (d == 0) throw ValidationError("random_unitary: dimension must be positive");
    const auto n = static_cast<Eigen::Index>(d);
    const ComplexMatrix g = gaussian_matrix(n, n, rng);
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(n, n);
    const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Fix the phase of R's diagonal so Q is Haar distributed.
    for (Eigen::Index j = 0; j < n; ++j) {
        const Complex diag = r(j, j);
        const double mag = std::abs(diag);
        if (mag > 0.0) q.col(j) *= diag / mag;
    }
    return q;
}

ComplexVector random_pure(std::size_t d, Rng& rng) {
    if (d == 0) throw ValidationError("random_pure: dimension must be positive");
    ComplexVector v = gaussian_matrix(static_cast<Eigen::Index>(d), 1, rng).col(0);
    return v / v.norm();
}

DensityOperator random_state(std::size_t d, std::uint64_t seed) {
    Rng rng = make_rng(seed);
    return random_state(d, rng);
}

ComplexMatrix random_unitary(std::size_t d, std::uint64_t seed) {
    Rng rng = make_rng(seed);
    return random_unitary(d, rng);
}

ComplexVector random_pure(std::size_t d, std::uint64_t seed) {
    Rng rng = make_rng(seed);
    return random_pure(d, rng);
}

}  // namespace contractis

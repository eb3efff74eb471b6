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

#include <complex>
#include <cstddef>
#include <limits>
#include <span>

#include <Eigen/Dense>

namespace contractis {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

namespace linalg {

// Max-abs deviation from X = X† accepted for nominally Hermitian inputs.
inline constexpr double kHermitianTol = 1e-8;
// Smallest eigenvalue still counted as nonnegative.
inline constexpr double kPsdTol = 1e-10;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

ComplexMatrix identity(std::size_t d);

// Pauli matrices: 0 -> I, 1 -> X, 2 -> Y, 3 -> Z.
ComplexMatrix pauli(int k);

ComplexMatrix ket_bra(const ComplexVector& ket, const ComplexVector& bra);

bool is_finite(const ComplexMatrix& x);

// Largest |X_ij - conj(X_ji)|. X must be square.
double hermiticity_deviation(const ComplexMatrix& x);

// (X + X†) / 2.
ComplexMatrix hermitize(const ComplexMatrix& x);

// Hermitized copy of `x`; throws ValidationError if the deviation exceeds `tol`.
ComplexMatrix require_hermitian(const ComplexMatrix& x, double tol = kHermitianTol);

struct HermitianEigen {
    RealVector values;     // ascending
    ComplexMatrix vectors; // columns
};

// Eigendecomposition of a nominally Hermitian matrix (hermitized first).
HermitianEigen eigh(const ComplexMatrix& x, double tol = kHermitianTol);

RealVector singular_values(const ComplexMatrix& x);

// Schatten p-norm, p a positive integer or kInfinity.
double schatten_norm(const ComplexMatrix& x, double p);

double trace_norm(const ComplexMatrix& x);

// ||A - B||_1 for equally sized square matrices.
double trace_norm_distance(const ComplexMatrix& a, const ComplexMatrix& b);

struct OrthogonalDecomposition {
    ComplexMatrix positive;
    ComplexMatrix negative;
};

// X = X+ - X-, X+ X- = 0, both PSD.
OrthogonalDecomposition orthogonal_decomposition(const ComplexMatrix& x);

// Projector onto the eigenspace of Hermitian X with eigenvalues >= threshold.
ComplexMatrix nonnegative_projector(const ComplexMatrix& x, double threshold = 0.0);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

enum class Subsystem { first, second };

// Traces out `which` from an operator on C^{d1} ⊗ C^{d2}.
ComplexMatrix partial_trace(const ComplexMatrix& x, std::size_t d1, std::size_t d2, Subsystem which);

// Column-major vectorization: vec(A X B) = (B^T ⊗ A) vec(X).
ComplexVector vec(const ComplexMatrix& x);
ComplexMatrix unvec(const ComplexVector& v, std::size_t rows, std::size_t cols);

// Hilbert-Schmidt inner product tr(A† B).
Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b);

// Orthonormal basis (columns) of the span of the columns of `a`, rank cut at
// singular values below rel_tol * largest singular value.
ComplexMatrix orthonormal_span(const ComplexMatrix& a, double rel_tol = 1e-9);

// Orthonormal basis (columns) of the null space of `a`; singular values below
// rel_tol * max(1, largest) count as zero.
ComplexMatrix null_space(const ComplexMatrix& a, double rel_tol = 1e-9);

}  // namespace linalg
}  // namespace contractis

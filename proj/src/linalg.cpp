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

#include "contractis/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "contractis/error.hpp"

namespace contractis::linalg {

namespace {

void require_square(const ComplexMatrix& x, const char* what) {
    if (x.rows() != x.cols() || x.rows() == 0) {
        throw DimensionError(std::string(what) + ": expected a nonempty square matrix, got " +
                             std::to_string(x.rows()) + "x" + std::to_string(x.cols()));
    }
}

}  // namespace

ComplexMatrix identity(std::size_t d) {
    return ComplexMatrix::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
}

ComplexMatrix pauli(int k) {
    using namespace std::complex_literals;
    ComplexMatrix s(2, 2);
    switch (k) {
    case 0: s << 1.0, 0.0, 0.0, 1.0; break;
    case 1: s << 0.0, 1.0, 1.0, 0.0; break;
    case 2: s << 0.0, -1.0i, 1.0i, 0.0; break;
    case 3: s << 1.0, 0.0, 0.0, -1.0; break;
    default: throw ValidationError("pauli: index must be in 0..3, got " + std::to_string(k));
    }
    return s;
}

ComplexMatrix ket_bra(const ComplexVector& ket, const ComplexVector& bra) {
    return ket * bra.adjoint();
}

bool is_finite(const ComplexMatrix& x) {
    return x.allFinite();
}

double hermiticity_deviation(const ComplexMatrix& x) {
    require_square(x, "hermiticity_deviation");
    return (x - x.adjoint()).cwiseAbs().maxCoeff();
}

ComplexMatrix hermitize(const ComplexMatrix& x) {
    return (x + x.adjoint()) * 0.5;
}

ComplexMatrix require_hermitian(const ComplexMatrix& x, double tol) {
    if (!is_finite(x)) throw ValidationError("matrix has non-finite entries");
    const double dev = hermiticity_deviation(x);
    if (dev > tol) {
        throw ValidationError("matrix is not Hermitian: max |X - X^dagger| = " + std::to_string(dev));
    }
    return hermitize(x);
}

HermitianEigen eigh(const ComplexMatrix& x, double tol) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(require_hermitian(x, tol));
    if (solver.info() != Eigen::Success) throw ConvergenceError("eigh: eigensolver failed");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

RealVector singular_values(const ComplexMatrix& x) {
    if (!is_finite(x)) throw ValidationError("matrix has non-finite entries");
    if (x.rows() == x.cols() && hermiticity_deviation(x) <= 1e-14 * std::max(1.0, x.cwiseAbs().maxCoeff())) {
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitize(x), Eigen::EigenvaluesOnly);
        RealVector s = solver.eigenvalues().cwiseAbs();
        std::sort(s.data(), s.data() + s.size(), std::greater<>());
        return s;
    }
    Eigen::JacobiSVD<ComplexMatrix> svd(x);
    return svd.singularValues();
}

double schatten_norm(const ComplexMatrix& x, double p) {
    require_square(x, "schatten_norm");
    if (std::isinf(p) && p > 0) return singular_values(x).maxCoeff();
    if (!(p >= 1.0) || std::floor(p) != p) {
        throw ValidationError("schatten_norm: p must be a positive integer or infinity, got " + std::to_string(p));
    }
    const RealVector s = singular_values(x);
    if (p == 1.0) return s.sum();
    const double top = s.maxCoeff();
    if (top == 0.0) return 0.0;
    // scale to avoid overflow for large p
    double acc = 0.0;
    for (double v : s) acc += std::pow(v / top, p);
    return top * std::pow(acc, 1.0 / p);
}

double trace_norm(const ComplexMatrix& x) {
    return schatten_norm(x, 1.0);
}

double trace_norm_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError("trace_norm_distance: dimension mismatch (" + std::to_string(a.rows()) + " vs " +
                             std::to_string(b.rows()) + ")");
    }
    require_square(a, "trace_norm_distance");
    const ComplexMatrix diff = a - b;
    if (hermiticity_deviation(diff) <= kHermitianTol) {
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitize(diff), Eigen::EigenvaluesOnly);
        return solver.eigenvalues().cwiseAbs().sum();
    }
    return singular_values(diff).sum();
}

OrthogonalDecomposition orthogonal_decomposition(const ComplexMatrix& x) {
    const HermitianEigen e = eigh(x);
    RealVector pos = e.values.cwiseMax(0.0);
    RealVector neg = (-e.values).cwiseMax(0.0);
    OrthogonalDecomposition out;
    out.positive = e.vectors * pos.cast<Complex>().asDiagonal() * e.vectors.adjoint();
    out.negative = e.vectors * neg.cast<Complex>().asDiagonal() * e.vectors.adjoint();
    return out;
}

ComplexMatrix nonnegative_projector(const ComplexMatrix& x, double threshold) {
    const HermitianEigen e = eigh(x);
    const auto d = x.rows();
    ComplexMatrix p = ComplexMatrix::Zero(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        if (e.values(i) >= threshold) p += e.vectors.col(i) * e.vectors.col(i).adjoint();
    }
    return p;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& x, std::size_t d1, std::size_t d2, Subsystem which) {
    const auto n1 = static_cast<Eigen::Index>(d1);
    const auto n2 = static_cast<Eigen::Index>(d2);
    if (d1 == 0 || d2 == 0 || x.rows() != n1 * n2 || x.cols() != n1 * n2) {
        throw DimensionError("partial_trace: " + std::to_string(x.rows()) + "x" + std::to_string(x.cols()) +
                             " operator does not factor as " + std::to_string(d1) + "*" + std::to_string(d2));
    }
    if (which == Subsystem::second) {
        ComplexMatrix out = ComplexMatrix::Zero(n1, n1);
        for (Eigen::Index i = 0; i < n1; ++i)
            for (Eigen::Index j = 0; j < n1; ++j) out(i, j) = x.block(i * n2, j * n2, n2, n2).trace();
        return out;
    }
    ComplexMatrix out = ComplexMatrix::Zero(n2, n2);
    for (Eigen::Index k = 0; k < n1; ++k) out += x.block(k * n2, k * n2, n2, n2);
    return out;
}

ComplexVector vec(const ComplexMatrix& x) {
    return Eigen::Map<const ComplexVector>(x.data(), x.size());
}

ComplexMatrix unvec(const ComplexVector& v, std::size_t rows, std::size_t cols) {
    if (static_cast<std::size_t>(v.size()) != rows * cols) {
        throw DimensionError("unvec: vector of length " + std::to_string(v.size()) + " cannot be reshaped to " +
                             std::to_string(rows) + "x" + std::to_string(cols));
    }
    return Eigen::Map<const ComplexMatrix>(v.data(), static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
}

Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
    return (a.adjoint() * b).trace();
}

ComplexMatrix orthonormal_span(const ComplexMatrix& a, double rel_tol) {
    if (a.cols() == 0) return ComplexMatrix(a.rows(), 0);
    Eigen::JacobiSVD<ComplexMatrix> svd(a, Eigen::ComputeThinU);
    const RealVector& s = svd.singularValues();
    if (s.size() == 0 || s(0) == 0.0) return ComplexMatrix(a.rows(), 0);
    Eigen::Index rank = 0;
    while (rank < s.size() && s(rank) > rel_tol * s(0)) ++rank;
    return svd.matrixU().leftCols(rank);
}

ComplexMatrix null_space(const ComplexMatrix& a, double rel_tol) {
    const Eigen::Index n = a.cols();
    if (a.rows() == 0) return ComplexMatrix::Identity(n, n);
    Eigen::JacobiSVD<ComplexMatrix> svd(a, Eigen::ComputeFullV);
    const RealVector& s = svd.singularValues();
    const double cut = rel_tol * std::max(1.0, s.size() > 0 ? s(0) : 0.0);
    Eigen::Index rank = 0;
    while (rank < s.size() && s(rank) > cut) ++rank;
    return svd.matrixV().rightCols(n - rank);
}

}  // namespace contractis::linalg

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

#include "contractis/channels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "contractis/error.hpp"

namespace contractis {

namespace {

constexpr double kDropNorm = 1e-12;

// Row-major flattening, the column that builds the Choi matrix.
ComplexVector row_major(const ComplexMatrix& a) {
    const ComplexMatrix t = a.transpose();
    return linalg::vec(t);
}

ComplexMatrix from_row_major(const ComplexVector& w, std::size_t d) {
    return linalg::unvec(w, d, d).transpose();
}

}  // namespace

// ---------------------------------------------------------------------------
// Superoperator

Superoperator::Superoperator(ComplexMatrix matrix) : matrix_(std::move(matrix)) {
    const auto n = matrix_.rows();
    const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(n))));
    if (matrix_.cols() != n || d * d != n || n == 0) {
        throw DimensionError("superoperator must be d^2 x d^2, got " + std::to_string(matrix_.rows()) + "x" +
                             std::to_string(matrix_.cols()));
    }
    dim_ = static_cast<std::size_t>(d);
}

ComplexMatrix Superoperator::apply(const ComplexMatrix& x) const {
    if (static_cast<std::size_t>(x.rows()) != dim_ || static_cast<std::size_t>(x.cols()) != dim_) {
        throw DimensionError("superoperator apply: operator dimension mismatch");
    }
    return linalg::unvec(matrix_ * linalg::vec(x), dim_, dim_);
}

// ---------------------------------------------------------------------------
// QuantumChannel

QuantumChannel::QuantumChannel(std::vector<ComplexMatrix> left, std::vector<ComplexMatrix> right)
    : left_(std::move(left)), right_(std::move(right)) {
    validate();
}

QuantumChannel QuantumChannel::from_kraus(std::vector<ComplexMatrix> kraus) {
    if (kraus.empty()) throw ValidationError("channel needs at least one Kraus operator");
    const auto d = kraus.front().rows();
    std::vector<ComplexMatrix> kept;
    for (auto& k : kraus) {
        if (k.rows() != d || k.cols() != d || d == 0) {
            throw DimensionError("Kraus operators must all be square of the same dimension");
        }
        if (!k.allFinite()) throw ValidationError("Kraus operator has non-finite entries");
        if (k.norm() >= kDropNorm) kept.push_back(std::move(k));
    }
    if (kept.empty()) kept.push_back(ComplexMatrix::Zero(d, d));
    return QuantumChannel(std::move(kept), {});
}

QuantumChannel QuantumChannel::from_operator_pairs(std::vector<ComplexMatrix> left, std::vector<ComplexMatrix> right) {
    if (left.empty() || left.size() != right.size()) {
        throw ValidationError("operator pairs: need equally many (nonzero) left and right operators");
    }
    const auto d = left.front().rows();
    std::vector<ComplexMatrix> l, r;
    bool same = true;
    for (std::size_t i = 0; i < left.size(); ++i) {
        for (const auto* m : {&left[i], &right[i]}) {
            if (m->rows() != d || m->cols() != d || d == 0) {
                throw DimensionError("operator pairs must all be square of the same dimension");
            }
            if (!m->allFinite()) throw ValidationError("operator pair has non-finite entries");
        }
        if (left[i].norm() < kDropNorm || right[i].norm() < kDropNorm) continue;
        same = same && left[i] == right[i];
        l.push_back(std::move(left[i]));
        r.push_back(std::move(right[i]));
    }
    if (l.empty()) return from_kraus({ComplexMatrix::Zero(d, d)});
    if (same) return QuantumChannel(std::move(l), {});
    return QuantumChannel(std::move(l), std::move(r));
}

QuantumChannel QuantumChannel::from_choi(const ComplexMatrix& choi) {
    const auto n = choi.rows();
    const auto d = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n))));
    if (choi.cols() != n || static_cast<Eigen::Index>(d * d) != n || n == 0) {
        throw DimensionError("Choi matrix must be d^2 x d^2");
    }
    const linalg::HermitianEigen e = linalg::eigh(choi);
    const double scale = std::max(1.0, e.values.cwiseAbs().maxCoeff());
    std::vector<ComplexMatrix> left, right;
    bool negative = false;
    for (Eigen::Index k = n - 1; k >= 0; --k) {
        const double lambda = e.values(k);
        if (std::abs(lambda) <= 1e-14 * scale) continue;
        const ComplexMatrix w = from_row_major(e.vectors.col(k), d) * std::sqrt(std::abs(lambda));
        left.push_back(w);
        right.push_back(lambda < 0 ? ComplexMatrix(-w) : w);
        negative = negative || lambda < 0;
    }
    if (left.empty()) return from_kraus({ComplexMatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d))});
    if (!negative) return from_kraus(std::move(left));
    return from_operator_pairs(std::move(left), std::move(right));
}

void QuantumChannel::validate() {
    dim_ = static_cast<std::size_t>(left_.front().rows());
    const auto d = static_cast<Eigen::Index>(dim_);
    const auto& right = right_operators();

    ComplexMatrix choi = ComplexMatrix::Zero(d * d, d * d);
    ComplexMatrix tp_sum = ComplexMatrix::Zero(d, d);
    ComplexMatrix unital_sum = ComplexMatrix::Zero(d, d);
    for (std::size_t k = 0; k < left_.size(); ++k) {
        choi += row_major(left_[k]) * row_major(right[k]).adjoint();
        tp_sum += right[k].adjoint() * left_[k];
        unital_sum += left_[k] * right[k].adjoint();
    }
    const ComplexMatrix id = linalg::identity(dim_);
    tp_dev_ = (tp_sum - id).cwiseAbs().maxCoeff();
    tp_ = tp_dev_ <= kTraceTol;
    unital_ = (unital_sum - id).cwiseAbs().maxCoeff() <= kTraceTol;

    const bool hermitian = linalg::hermiticity_deviation(choi) <= linalg::kHermitianTol;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(linalg::hermitize(choi), Eigen::EigenvaluesOnly);
    choi_min_eig_ = solver.eigenvalues()(0);
    cp_ = hermitian && choi_min_eig_ >= -kChoiTol;
}

std::string QuantumChannel::violation() const {
    std::ostringstream out;
    out.precision(12);
    if (!cp_) {
        out << "map is not completely positive: Choi matrix minimum eigenvalue " << choi_min_eig_;
        return out.str();
    }
    if (!tp_) {
        out << "map is not trace preserving: max |sum K^dagger K - I| = " << tp_dev_;
        return out.str();
    }
    return {};
}

void QuantumChannel::require_channel(const std::string& op) const {
    if (const std::string why = violation(); !why.empty()) throw ValidationError(op + ": " + why);
}

ComplexMatrix QuantumChannel::apply(const ComplexMatrix& x) const {
    if (static_cast<std::size_t>(x.rows()) != dim_ || static_cast<std::size_t>(x.cols()) != dim_) {
        throw DimensionError("channel of dimension " + std::to_string(dim_) + " applied to " +
                             std::to_string(x.rows()) + "x" + std::to_string(x.cols()) + " operator");
    }
    const auto& right = right_operators();
    ComplexMatrix out = ComplexMatrix::Zero(x.rows(), x.cols());
    for (std::size_t k = 0; k < left_.size(); ++k) out.noalias() += left_[k] * x * right[k].adjoint();
    return out;
}

ComplexMatrix QuantumChannel::apply_adjoint(const ComplexMatrix& x) const {
    if (static_cast<std::size_t>(x.rows()) != dim_ || static_cast<std::size_t>(x.cols()) != dim_) {
        throw DimensionError("adjoint channel applied to operator of wrong dimension");
    }
    const auto& right = right_operators();
    ComplexMatrix out = ComplexMatrix::Zero(x.rows(), x.cols());
    for (std::size_t k = 0; k < left_.size(); ++k) out.noalias() += left_[k].adjoint() * x * right[k];
    return out;
}

QuantumChannel QuantumChannel::with_kind(ChannelKind kind, double param) const {
    QuantumChannel out = *this;
    out.kind_ = kind;
    out.param_ = param;
    return out;
}

QuantumChannel QuantumChannel::with_factors(std::vector<std::shared_ptr<const QuantumChannel>> factors) const {
    QuantumChannel out = *this;
    out.kind_ = ChannelKind::tensor;
    out.factors_ = std::move(factors);
    return out;
}

// ---------------------------------------------------------------------------
// Application and constructors

DensityOperator apply(const QuantumChannel& channel, const DensityOperator& rho) {
    channel.require_channel("apply");
    ComplexMatrix out = linalg::hermitize(channel.apply(rho.matrix()));
    // renormalize away accumulated rounding in the trace
    out /= out.trace().real();
    return DensityOperator(out);
}

bool is_unitary(const ComplexMatrix& u, double tol) {
    if (u.rows() != u.cols() || u.rows() == 0) return false;
    return (u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff() <= tol;
}

QuantumChannel identity_channel(std::size_t d) {
    if (d == 0) throw ValidationError("identity_channel: dimension must be positive");
    return QuantumChannel::from_kraus({linalg::identity(d)}).with_kind(ChannelKind::identity);
}

QuantumChannel depolarizing(std::size_t d, double p) {
    if (d == 0) throw ValidationError("depolarizing: dimension must be positive");
    if (!(p >= 0.0 && p <= 1.0)) {
        throw ValidationError("depolarizing: p must lie in [0, 1], got " + std::to_string(p));
    }
    const double dd = static_cast<double>(d * d);
    std::vector<ComplexMatrix> kraus;
    kraus.push_back(std::sqrt(1.0 - p + p / dd) * linalg::identity(d));
    const double w = std::sqrt(p / dd);
    if (d == 2) {
        for (int k = 1; k <= 3; ++k) kraus.push_back(w * linalg::pauli(k));
    } else {
        // Weyl operators X^a Z^b, (a, b) != (0, 0).
        const auto n = static_cast<Eigen::Index>(d);
        const double two_pi = 2.0 * std::numbers::pi;
        for (Eigen::Index a = 0; a < n; ++a) {
            for (Eigen::Index b = 0; b < n; ++b) {
                if (a == 0 && b == 0) continue;
                ComplexMatrix weyl = ComplexMatrix::Zero(n, n);
                for (Eigen::Index j = 0; j < n; ++j) {
                    weyl((j + a) % n, j) = std::polar(1.0, two_pi * static_cast<double>(b * j) / static_cast<double>(n));
                }
                kraus.push_back(w * weyl);
            }
        }
    }
    return QuantumChannel::from_kraus(std::move(kraus)).with_kind(ChannelKind::depolarizing, p);
}

QuantumChannel qubit_canonical(const QubitCanonicalForm& form) {
    if (!is_unitary(form.u) || form.u.rows() != 2) throw ValidationError("qubit_canonical: u must be a 2x2 unitary");
    if (!is_unitary(form.v_unitary) || form.v_unitary.rows() != 2) {
        throw ValidationError("qubit_canonical: vmat must be a 2x2 unitary");
    }
    if (!form.v.allFinite() || !form.t.allFinite()) throw ValidationError("qubit_canonical: non-finite v or t");
    // Choi matrix of T_{v,t}: X = w0 I + w·σ maps to w0 I + (w0 t + diag(v) w)·σ,
    // i.e. Bloch vectors r -> t + diag(v) r.
    ComplexMatrix choi = ComplexMatrix::Zero(4, 4);
    for (Eigen::Index i = 0; i < 2; ++i) {
        for (Eigen::Index j = 0; j < 2; ++j) {
            ComplexMatrix e = ComplexMatrix::Zero(2, 2);
            e(i, j) = 1.0;
            const Complex w0 = e.trace() * 0.5;
            ComplexMatrix image = w0 * linalg::pauli(0);
            for (int k = 1; k <= 3; ++k) {
                const Complex wk = (linalg::pauli(k) * e).trace() * 0.5;
                image += (w0 * form.t(k - 1) + form.v(k - 1) * wk) * linalg::pauli(k);
            }
            choi += linalg::kron(image, e);
        }
    }
    const QuantumChannel core = QuantumChannel::from_choi(choi);
    if (!core.completely_positive()) {
        std::ostringstream out;
        out.precision(12);
        out << "qubit_canonical: (v, t) does not define a completely positive map; Choi minimum eigenvalue "
            << core.choi_min_eigenvalue();
        throw ValidationError(out.str());
    }
    return compose(unitary_channel(form.u), compose(core, unitary_channel(form.v_unitary)));
}

QuantumChannel constant_channel(const DensityOperator& sigma) {
    const linalg::HermitianEigen e = linalg::eigh(sigma.matrix());
    const auto d = static_cast<Eigen::Index>(sigma.dim());
    std::vector<ComplexMatrix> kraus;
    for (Eigen::Index i = 0; i < d; ++i) {
        const double lambda = e.values(i);
        if (lambda <= 0.0) continue;
        for (Eigen::Index j = 0; j < d; ++j) {
            ComplexMatrix k = ComplexMatrix::Zero(d, d);
            k.col(j) = std::sqrt(lambda) * e.vectors.col(i);
            kraus.push_back(std::move(k));
        }
    }
    // eigenvalues were clamped at zero; restore exact trace preservation
    const double total = e.values.cwiseMax(0.0).sum();
    for (auto& k : kraus) k /= std::sqrt(total);
    return QuantumChannel::from_kraus(std::move(kraus)).with_kind(ChannelKind::constant);
}

QuantumChannel unitary_channel(const ComplexMatrix& u) {
    if (!is_unitary(u)) throw ValidationError("unitary_channel: matrix is not unitary within 1e-10");
    return QuantumChannel::from_kraus({u}).with_kind(ChannelKind::unitary);
}

QuantumChannel compose(const QuantumChannel& outer, const QuantumChannel& inner) {
    if (outer.dim() != inner.dim()) {
        throw DimensionError("compose: dimension mismatch (" + std::to_string(outer.dim()) + " vs " +
                             std::to_string(inner.dim()) + ")");
    }
    std::vector<ComplexMatrix> left, right;
    for (std::size_t i = 0; i < outer.kraus().size(); ++i) {
        for (std::size_t j = 0; j < inner.kraus().size(); ++j) {
            left.push_back(outer.kraus()[i] * inner.kraus()[j]);
            right.push_back(outer.right_operators()[i] * inner.right_operators()[j]);
        }
    }
    if (outer.is_kraus_form() && inner.is_kraus_form()) return QuantumChannel::from_kraus(std::move(left));
    return QuantumChannel::from_operator_pairs(std::move(left), std::move(right));
}

QuantumChannel mix(const std::vector<std::pair<double, QuantumChannel>>& components) {
    if (components.empty()) throw ValidationError("mix: no components");
    double total = 0.0;
    const std::size_t d = components.front().second.dim();
    bool kraus_form = true;
    for (const auto& [w, ch] : components) {
        if (!(w >= 0.0)) throw ValidationError("mix: weights must be nonnegative, got " + std::to_string(w));
        if (ch.dim() != d) throw DimensionError("mix: channels have different dimensions");
        total += w;
        kraus_form = kraus_form && ch.is_kraus_form();
    }
    if (std::abs(total - 1.0) > 1e-12) {
        throw ValidationError("mix: weights must sum to 1, got " + std::to_string(total));
    }
    std::vector<ComplexMatrix> left, right;
    for (const auto& [w, ch] : components) {
        const double s = std::sqrt(w);
        for (std::size_t i = 0; i < ch.kraus().size(); ++i) {
            left.push_back(s * ch.kraus()[i]);
            right.push_back(s * ch.right_operators()[i]);
        }
    }
    if (kraus_form) return QuantumChannel::from_kraus(std::move(left));
    return QuantumChannel::from_operator_pairs(std::move(left), std::move(right));
}

QuantumChannel tensor(const QuantumChannel& a, const QuantumChannel& b) {
    std::vector<ComplexMatrix> left, right;
    for (std::size_t i = 0; i < a.kraus().size(); ++i) {
        for (std::size_t j = 0; j < b.kraus().size(); ++j) {
            left.push_back(linalg::kron(a.kraus()[i], b.kraus()[j]));
            right.push_back(linalg::kron(a.right_operators()[i], b.right_operators()[j]));
        }
    }
    QuantumChannel out = (a.is_kraus_form() && b.is_kraus_form())
                             ? QuantumChannel::from_kraus(std::move(left))
                             : QuantumChannel::from_operator_pairs(std::move(left), std::move(right));
    std::vector<std::shared_ptr<const QuantumChannel>> factors;
    for (const QuantumChannel* part : {&a, &b}) {
        if (part->kind() == ChannelKind::tensor) {
            factors.insert(factors.end(), part->factors().begin(), part->factors().end());
        } else {
            factors.push_back(std::make_shared<const QuantumChannel>(*part));
        }
    }
    return out.with_factors(std::move(factors));
}

Superoperator to_superoperator(const QuantumChannel& channel) {
    const auto d = static_cast<Eigen::Index>(channel.dim());
    ComplexMatrix s = ComplexMatrix::Zero(d * d, d * d);
    const auto& right = channel.right_operators();
    for (std::size_t k = 0; k < channel.kraus().size(); ++k) {
        // vec(A X B†) = (conj(B) ⊗ A) vec(X)
        s += linalg::kron(right[k].conjugate(), channel.kraus()[k]);
    }
    return Superoperator(std::move(s));
}

ComplexMatrix choi_matrix(const QuantumChannel& channel) {
    const auto d = static_cast<Eigen::Index>(channel.dim());
    ComplexMatrix choi = ComplexMatrix::Zero(d * d, d * d);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
            ComplexMatrix e = ComplexMatrix::Zero(d, d);
            e(i, j) = 1.0;
            choi += linalg::kron(channel.apply(e), e);
        }
    }
    return choi;
}

BlochAffineMap bloch_affine_map(const QuantumChannel& channel) {
    if (channel.dim() != 2) throw DimensionError("bloch_affine_map: channel must act on a qubit");
    BlochAffineMap out;
    const ComplexMatrix image_of_identity = channel.apply(linalg::pauli(0));
    for (int k = 1; k <= 3; ++k) {
        out.t(k - 1) = 0.5 * (linalg::pauli(k) * image_of_identity).trace().real();
        for (int l = 1; l <= 3; ++l) {
            out.m(k - 1, l - 1) = 0.5 * (linalg::pauli(k) * channel.apply(linalg::pauli(l))).trace().real();
        }
    }
    return out;
}

Eigen::Matrix3d unitary_to_rotation(const ComplexMatrix& u) {
    if (u.rows() != 2 || !is_unitary(u)) throw ValidationError("unitary_to_rotation: expected a 2x2 unitary");
    Eigen::Matrix3d r;
    for (int j = 1; j <= 3; ++j) {
        const ComplexMatrix img = u * linalg::pauli(j) * u.adjoint();
        for (int i = 1; i <= 3; ++i) r(i - 1, j - 1) = 0.5 * (linalg::pauli(i) * img).trace().real();
    }
    return r;
}

ComplexMatrix rotation_to_unitary(const Eigen::Matrix3d& rotation) {
    // U = q0 I - i (q1 X + q2 Y + q3 Z) rotates Bloch vectors by R(q).
    const Eigen::Quaterniond q(rotation);
    using namespace std::complex_literals;
    ComplexMatrix u = q.w() * linalg::pauli(0) -
                      1.0i * (q.x() * linalg::pauli(1) + q.y() * linalg::pauli(2) + q.z() * linalg::pauli(3));
    return u;
}

QubitCanonicalForm canonical_form(const QuantumChannel& channel) {
    const BlochAffineMap affine = bloch_affine_map(channel);
    Eigen::JacobiSVD<Eigen::Matrix3d> svd(affine.m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Eigen::Matrix3d left = svd.matrixU();
    Eigen::Matrix3d right = svd.matrixV();
    Eigen::Vector3d v = svd.singularValues();
    if (left.determinant() < 0) {
        left.col(2) *= -1.0;
        v(2) *= -1.0;
    }
    if (right.determinant() < 0) {
        right.col(2) *= -1.0;
        v(2) *= -1.0;
    }
    QubitCanonicalForm form;
    form.u = rotation_to_unitary(left);
    form.v_unitary = rotation_to_unitary(right.transpose());
    form.v = v;
    form.t = left.transpose() * affine.t;
    return form;
}

QuantumChannel random_channel(std::size_t d, std::size_t kraus_count, Rng& rng) {
    if (d == 0 || kraus_count == 0) throw ValidationError("random_channel: dimension and Kraus count must be positive");
    const auto n = static_cast<Eigen::Index>(d);
    const auto k = static_cast<Eigen::Index>(kraus_count);
    const ComplexMatrix g = gaussian_matrix(n * k, n, rng);
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    const ComplexMatrix iso = qr.householderQ() * ComplexMatrix::Identity(n * k, n);
    std::vector<ComplexMatrix> kraus;
    for (Eigen::Index i = 0; i < k; ++i) kraus.push_back(iso.block(i * n, 0, n, n));
    return QuantumChannel::from_kraus(std::move(kraus));
}

}  // namespace contractis

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

#include "contractis/contractivity.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <thread>
#include <vector>

#include "contractis/error.hpp"

namespace contractis {

namespace {

constexpr double kAscentTol = 1e-12;
constexpr std::size_t kMaxAscentSteps = 2000;

// Runs fn(i) for i in [0, count) on `workers` threads. Each index writes only
// its own slot, so the outcome is independent of the worker count.
void for_each_restart(std::size_t count, std::size_t workers, const std::function<void(std::size_t)>& fn) {
    workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(count, 1));
    if (workers == 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < count; i += workers) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

// X -> Σ c_i L_i X R_i†, a Hermiticity-preserving linear map.
struct LinearMap {
    std::vector<ComplexMatrix> left;
    std::vector<ComplexMatrix> right;
    std::vector<double> coeff;

    void add(const QuantumChannel& ch, double c, std::size_t ancilla) {
        const ComplexMatrix id = linalg::identity(ancilla);
        for (std::size_t i = 0; i < ch.kraus().size(); ++i) {
            left.push_back(ancilla == 1 ? ch.kraus()[i] : linalg::kron(ch.kraus()[i], id));
            right.push_back(ancilla == 1 ? ch.right_operators()[i] : linalg::kron(ch.right_operators()[i], id));
            coeff.push_back(c);
        }
    }

    ComplexMatrix apply(const ComplexMatrix& x) const {
        ComplexMatrix out = ComplexMatrix::Zero(x.rows(), x.cols());
        for (std::size_t i = 0; i < left.size(); ++i) out.noalias() += coeff[i] * (left[i] * x * right[i].adjoint());
        return linalg::hermitize(out);
    }

    ComplexMatrix adjoint(const ComplexMatrix& x) const {
        ComplexMatrix out = ComplexMatrix::Zero(x.rows(), x.cols());
        for (std::size_t i = 0; i < left.size(); ++i) out.noalias() += coeff[i] * (left[i].adjoint() * x * right[i]);
        return linalg::hermitize(out);
    }
};

struct SignedNorm {
    double norm;
    ComplexMatrix sign;  // V sign(Λ) V†, the dual witness for the trace norm
};

SignedNorm trace_norm_with_sign(const ComplexMatrix& hermitian) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian);
    const RealVector& lambda = es.eigenvalues();
    RealVector s(lambda.size());
    for (Eigen::Index i = 0; i < lambda.size(); ++i) s(i) = lambda(i) > 0 ? 1.0 : (lambda(i) < 0 ? -1.0 : 0.0);
    return {lambda.cwiseAbs().sum(), es.eigenvectors() * s.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint()};
}

ComplexVector orthogonal_to(const ComplexVector& psi, ComplexVector phi) {
    phi -= psi.dot(phi) * psi;
    return phi / phi.norm();
}

// ---------------------------------------------------------------------------
// kappa search

struct PairCandidate {
    double value = -1.0;  // ||T(psi psi† - phi phi†)||_1
    ComplexVector psi;
    ComplexVector phi;
};

double pair_objective(const LinearMap& map, const ComplexVector& psi, const ComplexVector& phi) {
    const ComplexMatrix delta = psi * psi.adjoint() - phi * phi.adjoint();
    return trace_norm_with_sign(map.apply(delta)).norm;
}

// Alternating ascent: for fixed dual S = sign(T(Δ)), the best orthogonal pair
// is the top/bottom eigenvector pair of T*(S). The objective never decreases.
PairCandidate ascend_pair(const LinearMap& map, PairCandidate start) {
    PairCandidate best = start;
    ComplexVector psi = start.psi, phi = start.phi;
    double previous = -1.0;
    for (std::size_t step = 0; step < kMaxAscentSteps; ++step) {
        const ComplexMatrix delta = psi * psi.adjoint() - phi * phi.adjoint();
        const SignedNorm y = trace_norm_with_sign(map.apply(delta));
        if (y.norm > best.value) best = {y.norm, psi, phi};
        if (step > 0 && y.norm - previous < kAscentTol) break;
        previous = y.norm;
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(map.adjoint(y.sign));
        const auto n = es.eigenvalues().size();
        if (es.eigenvalues()(n - 1) - es.eigenvalues()(0) < 1e-15) break;
        psi = es.eigenvectors().col(n - 1);
        phi = orthogonal_to(psi, es.eigenvectors().col(0));
    }
    return best;
}

KappaEstimate from_pair(const QuantumChannel& channel, const ComplexVector& psi, const ComplexVector& phi,
                        bool exact, KappaMethod method, std::optional<double> value = std::nullopt) {
    DensityOperator rho = pure_state(psi);
    DensityOperator sigma = pure_state(phi);
    double ratio = value.value_or(0.0);
    if (!value) {
        ratio = linalg::trace_norm_distance(channel.apply(rho.matrix()), channel.apply(sigma.matrix())) /
                trace_norm_distance(rho, sigma);
    }
    return KappaEstimate{ratio, exact, method, std::move(rho), std::move(sigma)};
}

struct QubitClosedForm {
    double kappa;
    ComplexVector psi;
    ComplexVector phi;
};

// kappa of a qubit channel is the largest singular value of its Bloch matrix;
// the witness pair is the antipodal pair along the top right singular vector.
QubitClosedForm qubit_closed_form(const QuantumChannel& channel) {
    const BlochAffineMap affine = bloch_affine_map(channel);
    Eigen::JacobiSVD<Eigen::Matrix3d> svd(affine.m, Eigen::ComputeFullV);
    const Eigen::Vector3d n = svd.matrixV().col(0);
    const linalg::HermitianEigen e = linalg::eigh(from_bloch(n));
    return {svd.singularValues()(0), e.vectors.col(1), e.vectors.col(0)};
}

ComplexVector basis_vector(std::size_t d, std::size_t i) {
    ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(d));
    v(static_cast<Eigen::Index>(i)) = 1.0;
    return v;
}

std::optional<KappaEstimate> closed_form_kappa(const QuantumChannel& channel) {
    const std::size_t d = channel.dim();
    if (d == 1) return std::nullopt;
    switch (channel.kind()) {
    case ChannelKind::depolarizing:
        return from_pair(channel, basis_vector(d, 0), basis_vector(d, 1), true, KappaMethod::closed_form_depolarizing,
                         1.0 - channel.depolarizing_parameter());
    case ChannelKind::identity:
    case ChannelKind::unitary:
        return from_pair(channel, basis_vector(d, 0), basis_vector(d, 1), true, KappaMethod::closed_form_structural, 1.0);
    case ChannelKind::constant:
        return from_pair(channel, basis_vector(d, 0), basis_vector(d, 1), true, KappaMethod::closed_form_structural, 0.0);
    default: break;
    }
    if (d == 2) {
        const QubitClosedForm q = qubit_closed_form(channel);
        return from_pair(channel, q.psi, q.phi, true, KappaMethod::closed_form_qubit, q.kappa);
    }
    if (channel.kind() == ChannelKind::tensor) {
        const auto& factors = channel.factors();
        const bool all_unital_qubits = std::all_of(factors.begin(), factors.end(), [](const auto& f) {
            return f->dim() == 2 && f->unital() && f->is_channel();
        });
        if (!all_unital_qubits) return std::nullopt;
        std::size_t best = 0;
        std::vector<QubitClosedForm> forms;
        for (std::size_t i = 0; i < factors.size(); ++i) {
            forms.push_back(qubit_closed_form(*factors[i]));
            if (forms[i].kappa > forms[best].kappa) best = i;
        }
        // witness: antipodal pair on the worst factor, maximally mixed elsewhere
        ComplexMatrix rho = ComplexMatrix::Ones(1, 1), sigma = ComplexMatrix::Ones(1, 1);
        for (std::size_t i = 0; i < factors.size(); ++i) {
            if (i == best) {
                rho = linalg::kron(rho, linalg::ket_bra(forms[i].psi, forms[i].psi));
                sigma = linalg::kron(sigma, linalg::ket_bra(forms[i].phi, forms[i].phi));
            } else {
                rho = linalg::kron(rho, linalg::identity(2) / 2.0);
                sigma = linalg::kron(sigma, linalg::identity(2) / 2.0);
            }
        }
        return KappaEstimate{forms[best].kappa, true, KappaMethod::closed_form_tensor, DensityOperator(rho),
                             DensityOperator(sigma)};
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// cb-distance search

struct VectorCandidate {
    double value = -1.0;
    ComplexVector psi;
};

VectorCandidate ascend_vector(const LinearMap& map, ComplexVector psi) {
    VectorCandidate best;
    double previous = -1.0;
    for (std::size_t step = 0; step < kMaxAscentSteps; ++step) {
        const SignedNorm y = trace_norm_with_sign(map.apply(psi * psi.adjoint()));
        if (y.norm > best.value) best = {y.norm, psi};
        if (step > 0 && y.norm - previous < kAscentTol) break;
        previous = y.norm;
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(map.adjoint(y.sign));
        const auto n = es.eigenvalues().size();
        psi = es.eigenvectors().col(n - 1);
    }
    return best;
}

double vector_objective(const LinearMap& map, const ComplexVector& psi) {
    return trace_norm_with_sign(map.apply(psi * psi.adjoint())).norm;
}

ComplexVector embed_ancilla(const ComplexVector& psi, std::size_t d, std::size_t from_k, std::size_t to_k) {
    ComplexVector out = ComplexVector::Zero(static_cast<Eigen::Index>(d * to_k));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t a = 0; a < from_k; ++a)
            out(static_cast<Eigen::Index>(i * to_k + a)) = psi(static_cast<Eigen::Index>(i * from_k + a));
    return out;
}

// Best ||((A - B) ⊗ id_k)(psi psi†)||_1 found, growing the ancilla from 1 to k
// and seeding each level with the previous optimum so the value never drops.
double search_cb(const QuantumChannel& a, const QuantumChannel& b, std::size_t ancilla, const SearchBudget& budget) {
    if (a.dim() != b.dim()) {
        throw DimensionError("cb distance: dimension mismatch (" + std::to_string(a.dim()) + " vs " +
                             std::to_string(b.dim()) + ")");
    }
    const std::size_t d = a.dim();
    const std::size_t restarts = std::max<std::size_t>(budget.restarts, 1);
    const std::size_t per_restart = std::max<std::size_t>(budget.samples / restarts, 1);
    VectorCandidate overall{0.0, basis_vector(d, 0)};
    for (std::size_t k = 1; k <= ancilla; ++k) {
        LinearMap map;
        map.add(a, 1.0, k);
        map.add(b, -1.0, k);
        const std::size_t n = d * k;

        std::vector<VectorCandidate> results(restarts);
        for_each_restart(restarts, budget.workers, [&](std::size_t r) {
            Rng rng = make_rng(budget.seed, (k << 32) + r);
            VectorCandidate start;
            for (std::size_t s = 0; s < per_restart; ++s) {
                ComplexVector psi = random_pure(n, rng);
                const double v = vector_objective(map, psi);
                if (v > start.value) start = {v, std::move(psi)};
            }
            results[r] = ascend_vector(map, start.psi);
        });

        VectorCandidate level = ascend_vector(map, embed_ancilla(overall.psi, d, k == 1 ? 1 : k - 1, k));
        if (k >= 2) {
            ComplexVector omega = ComplexVector::Zero(static_cast<Eigen::Index>(n));
            const std::size_t rank = std::min(d, k);
            for (std::size_t i = 0; i < rank; ++i) omega(static_cast<Eigen::Index>(i * k + i)) = 1.0;
            omega /= omega.norm();
            const VectorCandidate ent = ascend_vector(map, omega);
            if (ent.value > level.value) level = ent;
        }
        for (const auto& r : results)
            if (r.value > level.value) level = r;
        if (level.value >= overall.value) overall = level;
        else overall.psi = embed_ancilla(overall.psi, d, k == 1 ? 1 : k - 1, k);
    }
    return overall.value;
}

std::size_t smallest_n_below(double epsilon) {
    // smallest positive integer n with 1/n < epsilon
    auto n = static_cast<std::size_t>(std::max(1.0, std::floor(1.0 / epsilon)));
    while (n > 1 && 1.0 / static_cast<double>(n - 1) < epsilon) --n;
    while (!(1.0 / static_cast<double>(n) < epsilon)) ++n;
    return n;
}

}  // namespace

std::string to_string(KappaMethod method) {
    switch (method) {
    case KappaMethod::closed_form_qubit: return "closed_form_qubit";
    case KappaMethod::closed_form_depolarizing: return "closed_form_depolarizing";
    case KappaMethod::closed_form_tensor: return "closed_form_tensor";
    case KappaMethod::closed_form_structural: return "closed_form_structural";
    case KappaMethod::multistart_search: return "multistart_search";
    }
    return "unknown";
}

std::string to_string(FixedPointMethod method) {
    return method == FixedPointMethod::nullspace ? "nullspace" : "iteration";
}

KappaEstimate kappa_search(const QuantumChannel& channel, const SearchBudget& budget) {
    channel.require_channel("kappa");
    const std::size_t d = channel.dim();
    if (d == 1) throw ValidationError("kappa: undefined for one-dimensional systems (no distinct states)");
    LinearMap map;
    map.add(channel, 1.0, 1);
    const std::size_t restarts = std::max<std::size_t>(budget.restarts, 1);
    const std::size_t per_restart = std::max<std::size_t>(budget.samples / restarts, 1);

    std::vector<PairCandidate> results(restarts);
    for_each_restart(restarts, budget.workers, [&](std::size_t r) {
        Rng rng = make_rng(budget.seed, r);
        PairCandidate start;
        for (std::size_t s = 0; s < per_restart; ++s) {
            ComplexVector psi = random_pure(d, rng);
            ComplexVector phi = orthogonal_to(psi, random_pure(d, rng));
            const double v = pair_objective(map, psi, phi);
            if (v > start.value) start = {v, std::move(psi), std::move(phi)};
        }
        results[r] = ascend_pair(map, std::move(start));
    });
    std::size_t best = 0;
    for (std::size_t r = 1; r < restarts; ++r)
        if (results[r].value > results[best].value) best = r;
    return from_pair(channel, results[best].psi, results[best].phi, false, KappaMethod::multistart_search);
}

KappaEstimate kappa(const QuantumChannel& channel, const SearchBudget& budget) {
    channel.require_channel("kappa");
    if (auto closed = closed_form_kappa(channel)) return std::move(*closed);
    return kappa_search(channel, budget);
}

FixedPointResult fixed_point(const QuantumChannel& channel, FixedPointMethod method, double tol,
                             std::size_t max_iter) {
    channel.require_channel("fixed_point");
    const std::size_t d = channel.dim();
    if (!(tol > 0.0)) throw ValidationError("fixed_point: tolerance must be positive");

    if (method == FixedPointMethod::iteration) {
        ComplexMatrix rho = linalg::identity(d) / static_cast<double>(d);
        // iterations = n for the first iterate rho_n with ||T rho_n - rho_n||_1 < tol
        for (std::size_t k = 0; k <= max_iter; ++k) {
            ComplexMatrix next = linalg::hermitize(channel.apply(rho));
            next /= next.trace().real();
            const double residual = linalg::trace_norm_distance(next, rho);
            if (residual < tol) return {DensityOperator(rho), residual, k, method};
            rho = std::move(next);
        }
        throw ConvergenceError("fixed_point: iteration did not converge within " + std::to_string(max_iter) +
                               " steps (contractivity modulus close to 1?)");
    }

    const ComplexMatrix s = to_superoperator(channel).matrix();
    const auto n = s.rows();
    Eigen::JacobiSVD<ComplexMatrix> svd(s - ComplexMatrix::Identity(n, n), Eigen::ComputeFullV);
    const RealVector& sv = svd.singularValues();
    // sv is descending: sv(n-1) ~ 0 for a trace-preserving map
    if (n >= 2 && sv(n - 2) < 1e-8) {
        throw DegenerateFixedPointError("fixed_point: the fixed-point set of the channel is degenerate "
                                        "(eigenvalue-1 eigenspace has dimension > 1)");
    }
    ComplexMatrix x = linalg::unvec(svd.matrixV().col(n - 1), d, d);
    const Complex tr = x.trace();
    if (std::abs(tr) < 1e-12) throw ValidationError("fixed_point: kernel vector has vanishing trace");
    x = linalg::hermitize(x / tr);
    const linalg::HermitianEigen e = linalg::eigh(x);
    if (e.values(0) < -1e-8) {
        throw DegenerateFixedPointError("fixed_point: kernel vector is not positive semidefinite (min eigenvalue " +
                                        std::to_string(e.values(0)) + ")");
    }
    const RealVector clamped = e.values.cwiseMax(0.0);
    x = e.vectors * (clamped / clamped.sum()).cast<Complex>().asDiagonal() * e.vectors.adjoint();
    DensityOperator state(linalg::hermitize(x));
    const double residual = linalg::trace_norm_distance(channel.apply(state.matrix()), state.matrix());
    return {std::move(state), residual, 0, method};
}

double cb_dist_lower(const QuantumChannel& a, const QuantumChannel& b, std::size_t ancilla_dim,
                     const SearchBudget& budget) {
    if (a.dim() != b.dim()) {
        throw DimensionError("cb_dist_lower: dimension mismatch (" + std::to_string(a.dim()) + " vs " +
                             std::to_string(b.dim()) + ")");
    }
    return search_cb(a, b, ancilla_dim == 0 ? a.dim() : ancilla_dim, budget);
}

double cb_dist_upper(const QuantumChannel& a, const QuantumChannel& b, const SearchBudget& budget) {
    return static_cast<double>(a.dim()) * search_cb(a, b, 1, budget);
}

ContractiveApproximation contractive_approximation(const QuantumChannel& channel, const DensityOperator& sigma,
                                                   double epsilon) {
    channel.require_channel("contractive_approximation");
    if (!(epsilon > 0.0)) throw ValidationError("contractive_approximation: epsilon must be positive");
    if (sigma.dim() != channel.dim()) throw DimensionError("contractive_approximation: sigma dimension mismatch");
    const std::size_t n = smallest_n_below(epsilon);
    const double w = 1.0 / (2.0 * static_cast<double>(n));
    QuantumChannel tn = mix({{w, constant_channel(sigma)}, {1.0 - w, channel}});
    return {std::move(tn), n, 1.0 - w, 1.0 / static_cast<double>(n)};
}

DepolarizingProxy depolarizing_indistinguishability_n(const QuantumChannel& channel, double epsilon,
                                                      const SearchBudget& budget) {
    channel.require_channel("depolarizing_indistinguishability_n");
    const QuantumChannel id = identity_channel(channel.dim());
    const double to_identity = cb_dist_upper(channel, id, budget);
    if (!(epsilon > to_identity)) {
        throw ValidationError("depolarizing_indistinguishability_n: epsilon must exceed the ||T - id||_cb estimate " +
                              std::to_string(to_identity));
    }
    // ||M - id||_cb <= 2 for the completely depolarizing M
    const double threshold = 2.0 / (epsilon - to_identity);
    auto n = static_cast<std::size_t>(std::floor(threshold)) + 1;
    n = std::max<std::size_t>(n, 1);
    QuantumChannel dep = depolarizing(channel.dim(), 1.0 / static_cast<double>(n));
    const double achieved = cb_dist_lower(channel, dep, 0, budget);
    return {n, std::move(dep), to_identity, achieved, achieved < epsilon};
}

ResidualBound approx_ec_residual_bound(const QuantumChannel& channel, std::size_t n, const SearchBudget& budget) {
    channel.require_channel("approx_ec_residual_bound");
    const double delta = cb_dist_upper(channel, identity_channel(channel.dim()), budget);
    return {delta, std::pow(delta, static_cast<double>(n)), false};
}

}  // namespace contractis

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
#include <string>

#include "contractis/channels.hpp"
#include "contractis/states.hpp"

namespace contractis {

// Budget for the randomized searches (kappa, cb-distance estimators).
// Results depend only on (samples, restarts, seed); `workers` only changes
// how restarts are scheduled.
struct SearchBudget {
    std::size_t samples = 2000;
    std::size_t restarts = 16;
    std::uint64_t seed = 0;
    std::size_t workers = 1;
};

enum class KappaMethod {
    closed_form_qubit,
    closed_form_depolarizing,
    closed_form_tensor,
    closed_form_structural,  // unitary, identity and constant channels
    multistart_search,
};

std::string to_string(KappaMethod method);

// lower_bound = ||T rho - T sigma||_1 / ||rho - sigma||_1 at the witness pair.
// When `exact` is set, lower_bound is the contractivity modulus itself.
struct KappaEstimate {
    double lower_bound;
    bool exact;
    KappaMethod method;
    DensityOperator witness_rho;
    DensityOperator witness_sigma;
};

// Contractivity modulus sup ||T rho - T sigma||_1 / ||rho - sigma||_1.
// Closed forms are used for qubit channels, depolarizing channels, tensor
// products of unital qubit channels, and unitary/constant channels; anything
// else falls back to kappa_search.
KappaEstimate kappa(const QuantumChannel& channel, const SearchBudget& budget = {});

// Multistart ascent over orthogonal pure-state pairs; always a lower bound.
KappaEstimate kappa_search(const QuantumChannel& channel, const SearchBudget& budget = {});

enum class FixedPointMethod { nullspace, iteration };

std::string to_string(FixedPointMethod method);

struct FixedPointResult {
    DensityOperator state;
    double residual;  // ||T rho - rho||_1
    std::size_t iterations;
    FixedPointMethod method;
};

// nullspace: kernel of (S - I) for the superoperator S, which must be
// one-dimensional (DegenerateFixedPointError otherwise).
// iteration: rho_{k+1} = T rho_k from I/d; returns the first iterate rho_n
// with ||T rho_n - rho_n||_1 < tol and iterations = n (ConvergenceError
// after max_iter steps).
FixedPointResult fixed_point(const QuantumChannel& channel, FixedPointMethod method = FixedPointMethod::nullspace,
                             double tol = 1e-10, std::size_t max_iter = 1'000'000);

// Certified lower bound on ||A - B||_cb: the best ||((A - B) ⊗ id_k)(psi)||_1
// found over pure psi on C^d ⊗ C^k. ancilla_dim = 0 means k = d.
// Nondecreasing in the ancilla dimension and never above 2.
double cb_dist_lower(const QuantumChannel& a, const QuantumChannel& b, std::size_t ancilla_dim = 0,
                     const SearchBudget& budget = {});

// Heuristic upper estimate d * n11 where n11 is the best-found
// ||(A - B)(psi)||_1 over pure inputs. Not certified: the 1->1 maximum is
// a local search result. Homogeneous: upper(λ(A - B)) = λ upper(A - B).
double cb_dist_upper(const QuantumChannel& a, const QuantumChannel& b, const SearchBudget& budget = {});

struct ContractiveApproximation {
    QuantumChannel channel;  // T_n = K_sigma / (2n) + (1 - 1/(2n)) T
    std::size_t n;           // smallest n with 1/n < epsilon
    double kappa_ceiling;    // 1 - 1/(2n)
    double cb_ceiling;       // 1/n
};

ContractiveApproximation contractive_approximation(const QuantumChannel& channel, const DensityOperator& sigma,
                                                   double epsilon);

struct DepolarizingProxy {
    std::size_t n;
    QuantumChannel depolarizing;  // D_{1/n}
    double distance_to_identity;  // upper estimate of ||T - id||_cb
    double achieved_lower;        // cb_dist_lower(T, D_{1/n})
    bool check_passed;            // achieved_lower < epsilon
};

// For T close to the identity, a depolarizing channel D_{1/n} that is
// epsilon-indistinguishable from T, with n > 2 / (epsilon - ||T - id||_cb).
DepolarizingProxy depolarizing_indistinguishability_n(const QuantumChannel& channel, double epsilon,
                                                      const SearchBudget& budget = {});

struct ResidualBound {
    double delta;  // estimate of ||T - id||_cb
    double bound;  // delta^n
    bool is_certified;
};

// delta^n bound on ||(T - id)^{⊗n}||_cb using cb-norm multiplicativity.
ResidualBound approx_ec_residual_bound(const QuantumChannel& channel, std::size_t n, const SearchBudget& budget = {});

}  // namespace contractis

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

#include "doctest.h"

#include <cmath>
#include <vector>

#include "contractis/discrimination.hpp"
#include "contractis/dynamics.hpp"
#include "contractis/error.hpp"
#include "helpers.hpp"

using namespace contractis;
using namespace contractis::testing;

namespace {

QuantumChannel amplitude_damping_019() {
    QubitCanonicalForm form;
    form.v = Eigen::Vector3d(0.9, 0.9, 0.81);
    form.t = Eigen::Vector3d(0, 0, 0.19);
    return qubit_canonical(form);
}

std::vector<ComplexMatrix> random_gates(std::size_t d, std::size_t count, Rng& rng) {
    std::vector<ComplexMatrix> gates;
    for (std::size_t i = 0; i < count; ++i) gates.push_back(random_unitary(d, rng));
    return gates;
}

}  // namespace

TEST_CASE("memory decoherence example") {
    const auto traj = simulate_memory(amplitude_damping_019(), pure_state(basis(2, 1)), 10);
    REQUIRE(traj.points.size() == 11);
    CHECK(traj.kappa_exact);
    CHECK(traj.kappa == doctest::Approx(0.9).epsilon(1e-12));
    CHECK(traj.points[0].distance == doctest::Approx(2.0));
    CHECK(std::abs(traj.points[10].bound - 0.69735688) < 1e-6);
    for (const auto& p : traj.points) CHECK(p.distance <= p.bound + 1e-9);

    const double p = helstrom(traj.final_state, traj.reference, 0.5).p_correct;
    CHECK(p <= 0.5 + 0.25 * traj.points[10].bound + 1e-12);
    CHECK(std::abs(0.5 + 0.25 * traj.points[10].bound - 0.67433922) < 1e-6);
}

TEST_CASE("constant channel forgets the input after one step") {
    Rng rng = make_rng(3);
    const auto sigma = random_state(3, rng);
    const auto traj = simulate_memory(constant_channel(sigma), random_state(3, rng), 4);
    CHECK(traj.kappa == 0.0);
    for (std::size_t n = 1; n < traj.points.size(); ++n) {
        CHECK(traj.points[n].distance < 1e-10);
        CHECK(traj.points[n].bound == 0.0);
    }
}

TEST_CASE("memory with a degenerate fixed point propagates the error") {
    CHECK_THROWS_AS(simulate_memory(identity_channel(2), pure_state(basis(2, 0)), 3), DegenerateFixedPointError);
}

TEST_CASE("noiseless circuit keeps pairwise distance") {
    Rng rng = make_rng(4);
    NoisyCircuit c{random_gates(3, 6, rng), identity_channel(3), {random_state(3, rng), random_state(3, rng)}};
    const auto traj = simulate_circuit(c);
    REQUIRE(traj.points.size() == 7);
    for (const auto& p : traj.points) CHECK(p.distance == doctest::Approx(traj.points[0].distance).epsilon(1e-9));
}

TEST_CASE("random qubit circuit with depolarizing noise obeys the bound") {
    Rng rng = make_rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        NoisyCircuit c{random_gates(2, 10, rng), depolarizing(2, 0.1),
                       {pure_state(random_pure(2, rng)), pure_state(random_pure(2, rng))}};
        const auto traj = simulate_circuit(c);
        CHECK(traj.kappa_exact);
        for (const auto& p : traj.points) {
            CHECK(p.bound == doctest::Approx(std::pow(0.9, double(p.step)) * traj.points[0].distance));
            CHECK(p.distance <= p.bound + 1e-9);
        }
    }
}

TEST_CASE("single-state circuit with unital noise decays to the maximally mixed state") {
    Rng rng = make_rng(6);
    NoisyCircuit c{random_gates(2, 5, rng), depolarizing(2, 0.2), {pure_state(random_pure(2, rng))}, 30};
    const auto traj = simulate_circuit(c);
    REQUIRE(traj.points.size() == 31);
    CHECK(max_abs(traj.reference.matrix() - maximally_mixed(2).matrix()) < 1e-12);
    for (std::size_t n = 1; n < traj.points.size(); ++n) {
        CHECK(traj.points[n].distance <= traj.points[n - 1].distance + 1e-12);
    }
    CHECK(traj.points.back().distance < 1e-2);
}

TEST_CASE("bound sequence does not depend on gates or on dimension") {
    Rng rng = make_rng(7);
    const auto form = random_unital_form(rng, 0.8);
    const QuantumChannel q = qubit_canonical(form);
    const QuantumChannel qq = tensor(q, q);
    const auto rho = pure_state(random_pure(4, rng)), sigma = pure_state(random_pure(4, rng));

    NoisyCircuit with_gates{random_gates(4, 8, rng), qq, {rho, sigma}};
    NoisyCircuit without_gates{std::vector<ComplexMatrix>(8, linalg::identity(4)), qq, {rho, sigma}};
    const auto a = simulate_circuit(with_gates);
    const auto b = simulate_circuit(without_gates);
    REQUIRE(a.points.size() == b.points.size());
    CHECK(a.kappa_exact);
    for (std::size_t n = 0; n < a.points.size(); ++n) {
        CHECK(a.points[n].bound == b.points[n].bound);
        CHECK(a.points[n].distance <= a.points[n].bound + 1e-9);
    }

    // same decay ratio for the qubit factor alone
    const auto one = simulate_memory(q, pure_state(random_pure(2, rng)), 8);
    CHECK(one.kappa_exact);
    for (std::size_t n = 1; n < one.points.size(); ++n) {
        const double r2 = one.points[n].bound / one.points[0].distance;
        const double r4 = a.points[n].bound / a.points[0].distance;
        CHECK(std::abs(r2 - r4) < 1e-9);
    }
}

TEST_CASE("circuit validation") {
    Rng rng = make_rng(8);
    const auto rho = random_state(2, rng);
    ComplexMatrix bad = linalg::identity(2);
    bad(0, 0) = 2.0;
    CHECK_THROWS_AS(simulate_circuit({{bad}, depolarizing(2, 0.1), {rho}}), ValidationError);
    CHECK_THROWS_AS(simulate_circuit({{linalg::identity(3)}, depolarizing(2, 0.1), {rho}}), DimensionError);
    CHECK_THROWS_AS(simulate_circuit({{}, depolarizing(2, 0.1), {}}), ValidationError);
    CHECK_THROWS_AS(simulate_circuit({{}, depolarizing(2, 0.1), {random_state(3, rng)}}), DimensionError);
}

TEST_CASE("distinguishability horizon") {
    CHECK(distinguishability_horizon(0.9, 0.01) == 51);
    CHECK(std::pow(0.9, 51) <= 0.005);
    CHECK(std::pow(0.9, 50) > 0.005);
    CHECK(distinguishability_horizon(0.5, 1.0) == 1);
    CHECK(distinguishability_horizon(0.5, 1.5) == 1);

    Rng rng = make_rng(9);
    for (int i = 0; i < 200; ++i) {
        const double k = uniform(rng, 0.01, 0.99), e = uniform(rng, 1e-6, 1.99);
        const auto n = distinguishability_horizon(k, e);
        CHECK(std::pow(k, double(n)) <= e / 2);
        if (n > 0) CHECK(std::pow(k, double(n - 1)) > e / 2);
    }

    CHECK_THROWS_AS(distinguishability_horizon(1.0, 0.1), ValidationError);
    CHECK_THROWS_AS(distinguishability_horizon(0.0, 0.1), ValidationError);
    CHECK_THROWS_AS(distinguishability_horizon(0.5, 2.0), ValidationError);
    CHECK_THROWS_AS(distinguishability_horizon(0.5, 0.0), ValidationError);
}

TEST_CASE("static algorithm fixed points") {
    const QuantumChannel ad = amplitude_damping_019();
    const auto plain = fixed_point(ad);
    const auto trivial = static_algorithm_fixed_point(ad, linalg::identity(2));
    CHECK(max_abs(trivial.fixed_point.state.matrix() - plain.state.matrix()) < 1e-10);

    Rng rng = make_rng(10);
    for (int i = 0; i < 5; ++i) {
        const ComplexMatrix u = random_unitary(3, rng);
        const auto r = static_algorithm_fixed_point(depolarizing(3, 0.3), u);
        CHECK(max_abs(r.fixed_point.state.matrix() - maximally_mixed(3).matrix()) < 1e-10);
    }

    // unitary invariance of kappa for exact qubit forms, and decay towards rho_S
    const ComplexMatrix u = random_unitary(2, rng);
    const auto r = static_algorithm_fixed_point(ad, u);
    CHECK(r.kappa.exact);
    CHECK(r.kappa.lower_bound == doctest::Approx(0.9).epsilon(1e-10));
    const QuantumChannel s = compose(ad, unitary_channel(u));
    ComplexMatrix rho = random_state(2, rng).matrix();
    const double initial = linalg::trace_norm_distance(rho, r.fixed_point.state.matrix());
    for (int n = 1; n <= 20; ++n) {
        rho = s.apply(rho);
        CHECK(linalg::trace_norm_distance(rho, r.fixed_point.state.matrix()) <= std::pow(0.9, n) * initial + 1e-9);
    }

    CHECK_THROWS_AS(static_algorithm_fixed_point(unitary_channel(u), u), ValidationError);
}

TEST_CASE("named gates") {
    const std::size_t q0[] = {0}, q1[] = {1}, cn[] = {0, 1}, rev[] = {1, 0};
    CHECK(max_abs(named_gate("X", q0, 4) - linalg::kron(linalg::pauli(1), linalg::identity(2))) < 1e-15);
    CHECK(max_abs(named_gate("Z", q1, 4) - linalg::kron(linalg::identity(2), linalg::pauli(3))) < 1e-15);
    const ComplexMatrix h = named_gate("H", q0, 2);
    CHECK(max_abs(h * h - linalg::identity(2)) < 1e-15);
    const ComplexMatrix s = named_gate("S", q0, 2);
    CHECK(max_abs(s * s - linalg::pauli(3)) < 1e-15);

    const ComplexMatrix cnot = named_gate("CNOT", cn, 4);
    CHECK(max_abs(cnot * basis(4, 2) - basis(4, 3)) < 1e-15);
    CHECK(max_abs(cnot * basis(4, 1) - basis(4, 1)) < 1e-15);
    const ComplexMatrix cnot_rev = named_gate("CNOT", rev, 4);
    CHECK(max_abs(cnot_rev * basis(4, 1) - basis(4, 3)) < 1e-15);
    CHECK(is_unitary(named_gate("Y", q1, 8)));

    CHECK_THROWS_AS(named_gate("T", q0, 2), ValidationError);
    CHECK_THROWS_AS(named_gate("X", q1, 2), ValidationError);
    CHECK_THROWS_AS(named_gate("X", q0, 3), ValidationError);
    CHECK_THROWS_AS(named_gate("CNOT", q0, 4), ValidationError);
}

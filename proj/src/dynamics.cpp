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

#include "contractis/dynamics.hpp"

#include <cmath>
#include <optional>

#include "contractis/error.hpp"

namespace contractis {

namespace {

std::size_t qubit_count(std::size_t dim) {
    std::size_t n = 0;
    while ((std::size_t{1} << n) < dim) ++n;
    if ((std::size_t{1} << n) != dim) {
        throw ValidationError("named gates need a 2^n-dimensional register, got dimension " + std::to_string(dim));
    }
    return n;
}

ComplexMatrix single_qubit(const std::string& name) {
    using namespace std::complex_literals;
    if (name == "I") return linalg::pauli(0);
    if (name == "X") return linalg::pauli(1);
    if (name == "Y") return linalg::pauli(2);
    if (name == "Z") return linalg::pauli(3);
    ComplexMatrix g(2, 2);
    if (name == "H") {
        g << 1.0, 1.0, 1.0, -1.0;
        return g / std::sqrt(2.0);
    }
    if (name == "S") {
        g << 1.0, 0.0, 0.0, 1.0i;
        return g;
    }
    throw ValidationError("unknown gate '" + name + "' (expected I, X, Y, Z, H, S or CNOT)");
}

ComplexMatrix conjugate(const ComplexMatrix& u, const ComplexMatrix& rho) {
    return u * rho * u.adjoint();
}

}  // namespace

Trajectory simulate_memory(const QuantumChannel& noise, const DensityOperator& rho0, std::size_t steps,
                           const SearchBudget& budget) {
    noise.require_channel("simulate_memory");
    if (rho0.dim() != noise.dim()) throw DimensionError("simulate_memory: initial state dimension mismatch");
    const FixedPointResult fp = fixed_point(noise);
    const KappaEstimate est = kappa(noise, budget);

    std::vector<TrajectoryPoint> points;
    ComplexMatrix rho = rho0.matrix();
    const double initial = linalg::trace_norm_distance(rho, fp.state.matrix());
    points.push_back({0, initial, initial});
    for (std::size_t n = 1; n <= steps; ++n) {
        rho = linalg::hermitize(noise.apply(rho));
        points.push_back({n, linalg::trace_norm_distance(rho, fp.state.matrix()),
                          std::pow(est.lower_bound, static_cast<double>(n)) * initial});
    }
    return {std::move(points), est.lower_bound, est.exact, DensityOperator(rho / rho.trace().real()), fp.state};
}

void NoisyCircuit::validate() const {
    noise.require_channel("noisy circuit");
    if (initial_states.empty() || initial_states.size() > 2) {
        throw ValidationError("noisy circuit: expected one or two initial states, got " +
                              std::to_string(initial_states.size()));
    }
    for (const auto& s : initial_states) {
        if (s.dim() != noise.dim()) throw DimensionError("noisy circuit: initial state dimension mismatch");
    }
    for (std::size_t i = 0; i < gates.size(); ++i) {
        if (static_cast<std::size_t>(gates[i].rows()) != noise.dim()) {
            throw DimensionError("noisy circuit: gate " + std::to_string(i) + " has the wrong dimension");
        }
        if (!is_unitary(gates[i])) throw ValidationError("noisy circuit: gate " + std::to_string(i) + " is not unitary");
    }
}

Trajectory simulate_circuit(const NoisyCircuit& circuit, const SearchBudget& budget) {
    circuit.validate();
    const std::size_t d = circuit.noise.dim();
    const KappaEstimate est = kappa(circuit.noise, budget);
    const std::size_t steps = circuit.steps != 0 ? circuit.steps : circuit.gates.size();

    ComplexMatrix rho = circuit.initial_states[0].matrix();
    ComplexMatrix sigma = circuit.initial_states.size() == 2 ? circuit.initial_states[1].matrix()
                                                             : maximally_mixed(d).matrix();
    const double initial = linalg::trace_norm_distance(rho, sigma);
    std::vector<TrajectoryPoint> points{{0, initial, initial}};
    for (std::size_t n = 1; n <= steps; ++n) {
        if (!circuit.gates.empty()) {
            const ComplexMatrix& u = circuit.gates[(n - 1) % circuit.gates.size()];
            rho = conjugate(u, rho);
            sigma = conjugate(u, sigma);
        }
        rho = linalg::hermitize(circuit.noise.apply(rho));
        sigma = linalg::hermitize(circuit.noise.apply(sigma));
        points.push_back({n, linalg::trace_norm_distance(rho, sigma),
                          std::pow(est.lower_bound, static_cast<double>(n)) * initial});
    }
    return {std::move(points), est.lower_bound, est.exact, DensityOperator(rho / rho.trace().real()),
            DensityOperator(sigma / sigma.trace().real())};
}

std::size_t distinguishability_horizon(double kappa, double epsilon) {
    if (!(kappa > 0.0 && kappa < 1.0)) {
        throw ValidationError("horizon: kappa must lie in (0, 1), got " + std::to_string(kappa));
    }
    if (!(epsilon > 0.0 && epsilon < 2.0)) {
        throw ValidationError("horizon: epsilon must lie in (0, 2), got " + std::to_string(epsilon));
    }
    const double target = epsilon / 2.0;
    auto n = static_cast<std::size_t>(std::max(0.0, std::ceil(std::log(target) / std::log(kappa))));
    // guard the ceiling against rounding in the logarithms
    while (std::pow(kappa, static_cast<double>(n)) > target) ++n;
    while (n > 0 && std::pow(kappa, static_cast<double>(n - 1)) <= target) --n;
    return n;
}

StaticAlgorithmResult static_algorithm_fixed_point(const QuantumChannel& noise, const ComplexMatrix& u,
                                                   const SearchBudget& budget) {
    noise.require_channel("static_algorithm_fixed_point");
    const KappaEstimate noise_kappa = kappa(noise, budget);
    if (noise_kappa.exact && noise_kappa.lower_bound >= 1.0) {
        throw ValidationError("static_algorithm_fixed_point: noise channel is not strictly contractive (kappa = 1)");
    }
    const QuantumChannel step = compose(noise, unitary_channel(u));
    FixedPointResult fp = fixed_point(step);
    return {std::move(fp), kappa(step, budget)};
}

ComplexMatrix named_gate(const std::string& name, std::span<const std::size_t> qubits, std::size_t dim) {
    const std::size_t n = qubit_count(dim);
    for (std::size_t q : qubits) {
        if (q >= n) {
            throw ValidationError("gate " + name + ": qubit index " + std::to_string(q) + " out of range for " +
                                  std::to_string(n) + " qubits");
        }
    }
    if (name == "CNOT") {
        if (qubits.size() != 2 || qubits[0] == qubits[1]) {
            throw ValidationError("gate CNOT needs two distinct qubits (control, target)");
        }
        const std::size_t control = std::size_t{1} << (n - 1 - qubits[0]);
        const std::size_t target = std::size_t{1} << (n - 1 - qubits[1]);
        ComplexMatrix g = ComplexMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
        for (std::size_t b = 0; b < dim; ++b) {
            const std::size_t image = (b & control) ? (b ^ target) : b;
            g(static_cast<Eigen::Index>(image), static_cast<Eigen::Index>(b)) = 1.0;
        }
        return g;
    }
    if (qubits.size() != 1) throw ValidationError("gate " + name + " acts on exactly one qubit");
    const ComplexMatrix single = single_qubit(name);
    ComplexMatrix g = ComplexMatrix::Ones(1, 1);
    for (std::size_t q = 0; q < n; ++q) g = linalg::kron(g, q == qubits[0] ? single : linalg::identity(2));
    return g;
}

}  // namespace contractis

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
#include <span>
#include <string>
#include <vector>

#include "contractis/channels.hpp"
#include "contractis/contractivity.hpp"
#include "contractis/states.hpp"

namespace contractis {

struct TrajectoryPoint {
    std::size_t step;
    double distance;  // to the fixed point (memory) or between the two runs (circuit)
    double bound;     // kappa^step * initial distance
};

struct Trajectory {
    std::vector<TrajectoryPoint> points;  // steps 0..n
    double kappa;
    bool kappa_exact;
    DensityOperator final_state;
    DensityOperator reference;  // rho_T for memories, the second run's final state for circuits
};

// rho_n = T^n rho0 compared against the fixed point rho_T of T.
Trajectory simulate_memory(const QuantumChannel& noise, const DensityOperator& rho0, std::size_t steps,
                           const SearchBudget& budget = {});

// T-noisy circuit with an error location after every gate:
// rho_n = (T ∘ U_n) ... (T ∘ U_1) rho_0. Gates are reused cyclically when
// steps exceeds their number; no gates means identity steps.
struct NoisyCircuit {
    std::vector<ComplexMatrix> gates;
    QuantumChannel noise;
    std::vector<DensityOperator> initial_states;  // one or two; with one, the second run starts at I/d
    std::size_t steps = 0;                        // 0: one step per gate

    void validate() const;
};

Trajectory simulate_circuit(const NoisyCircuit& circuit, const SearchBudget& budget = {});

// N0 = ceil(log(epsilon/2) / log kappa): after N0 steps every pair of
// trajectories is closer than epsilon in trace norm.
std::size_t distinguishability_horizon(double kappa, double epsilon);

struct StaticAlgorithmResult {
    FixedPointResult fixed_point;
    KappaEstimate kappa;  // of S = T ∘ U
};

// Fixed point of the repeated step S = T ∘ (U · U†).
StaticAlgorithmResult static_algorithm_fixed_point(const QuantumChannel& noise, const ComplexMatrix& u,
                                                   const SearchBudget& budget = {});

// Named gate {I, X, Y, Z, H, S, CNOT} on qubits of a 2^n-dimensional register,
// qubit 0 being the most significant tensor factor. CNOT takes (control, target).
ComplexMatrix named_gate(const std::string& name, std::span<const std::size_t> qubits, std::size_t dim);

}  // namespace contractis

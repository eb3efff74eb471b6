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

#include "contractis/channels.hpp"
#include "contractis/contractivity.hpp"
#include "contractis/states.hpp"

namespace contractis {

// Optimal two-outcome discrimination of rho1 (prior pi1) against rho2 (prior pi2).
struct DiscriminationResult {
    double p_correct;             // 1/2 + ||pi1 rho1 - pi2 rho2||_1 / 2
    ComplexMatrix optimal_effect; // projector onto the nonnegative part of pi1 rho1 - pi2 rho2
    double pi1;
    double pi2;
};

DiscriminationResult helstrom(const DensityOperator& rho1, const DensityOperator& rho2, double pi1 = 0.5);

// Success probability of the two-outcome measurement {F, I - F}.
double success_probability(const DensityOperator& rho1, const DensityOperator& rho2, double pi1,
                           const ComplexMatrix& effect);

struct DiscriminationBound {
    double bound;  // (1 + kappa) / 2
    double kappa;
    bool certified;  // false when kappa is only a search lower bound
};

// Ceiling on equiprobable discrimination after the channel acts.
DiscriminationBound discrimination_ceiling(const QuantumChannel& channel, const SearchBudget& budget = {});

}  // namespace contractis

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

#include "contractis/discrimination.hpp"

#include <string>

#include "contractis/error.hpp"

namespace contractis {

namespace {

// Zero-eigenspace wobble below this is folded into P+.
constexpr double kProjectorSlack = 1e-12;

void check_priors(double pi1) {
    if (!(pi1 >= 0.0 && pi1 <= 1.0)) throw ValidationError("prior pi1 must lie in [0, 1], got " + std::to_string(pi1));
}

}  // namespace

DiscriminationResult helstrom(const DensityOperator& rho1, const DensityOperator& rho2, double pi1) {
    check_priors(pi1);
    if (rho1.dim() != rho2.dim()) {
        throw DimensionError("helstrom: dimension mismatch (" + std::to_string(rho1.dim()) + " vs " +
                             std::to_string(rho2.dim()) + ")");
    }
    const double pi2 = 1.0 - pi1;
    const ComplexMatrix gamma = pi1 * rho1.matrix() - pi2 * rho2.matrix();
    const double p = 0.5 + 0.5 * linalg::trace_norm(linalg::hermitize(gamma));
    return {p, linalg::nonnegative_projector(gamma, -kProjectorSlack), pi1, pi2};
}

double success_probability(const DensityOperator& rho1, const DensityOperator& rho2, double pi1,
                           const ComplexMatrix& effect) {
    check_priors(pi1);
    const ComplexMatrix complement = linalg::identity(rho2.dim()) - effect;
    return pi1 * (effect * rho1.matrix()).trace().real() + (1.0 - pi1) * (complement * rho2.matrix()).trace().real();
}

DiscriminationBound discrimination_ceiling(const QuantumChannel& channel, const SearchBudget& budget) {
    const KappaEstimate est = kappa(channel, budget);
    return {(1.0 + est.lower_bound) / 2.0, est.lower_bound, est.exact};
}

}  // namespace contractis

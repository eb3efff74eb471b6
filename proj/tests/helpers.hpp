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

#include <cmath>
#include <vector>

#include "contractis/channels.hpp"
#include "contractis/error.hpp"
#include "contractis/linalg.hpp"
#include "contractis/random.hpp"
#include "contractis/states.hpp"

namespace contractis::testing {

inline ComplexVector basis(std::size_t d, std::size_t i) {
    ComplexVector e = ComplexVector::Zero(static_cast<Eigen::Index>(d));
    e(static_cast<Eigen::Index>(i)) = 1.0;
    return e;
}

inline ComplexVector bell_phi_plus() {
    ComplexVector v = ComplexVector::Zero(4);
    v(0) = v(3) = 1.0 / std::sqrt(2.0);
    return v;
}

inline double max_abs(const ComplexMatrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

// 0 <= F <= I with Haar eigenbasis and uniform eigenvalues.
inline ComplexMatrix random_effect(std::size_t d, Rng& rng) {
    const ComplexMatrix u = random_unitary(d, rng);
    RealVector lambda(static_cast<Eigen::Index>(d));
    for (auto& l : lambda) l = uniform(rng);
    return u * lambda.cast<Complex>().asDiagonal() * u.adjoint();
}

// Random unital qubit channel in canonical form with max |v_i| <= vmax,
// rejection-sampled until completely positive.
inline QubitCanonicalForm random_unital_form(Rng& rng, double vmax) {
    for (;;) {
        QubitCanonicalForm form;
        form.u = random_unitary(2, rng);
        form.v_unitary = random_unitary(2, rng);
        for (int k = 0; k < 3; ++k) form.v(k) = uniform(rng, -vmax, vmax);
        form.t.setZero();
        // CP region of unital qubit maps: |v1 ± v2| <= |1 ± v3|
        const auto& v = form.v;
        if (std::abs(v(0) + v(1)) <= 1.0 + v(2) && std::abs(v(0) - v(1)) <= 1.0 - v(2)) return form;
    }
}

// Random qubit channel (generally non-unital) with max |v_i| <= vmax: a random
// Stinespring channel mixed with the completely depolarizing one.
inline QuantumChannel random_contractive_qubit(Rng& rng, double vmax) {
    const QuantumChannel base = random_channel(2, 3, rng);
    const double keep = vmax * uniform(rng, 0.3, 1.0);
    return mix({{keep, base}, {1.0 - keep, depolarizing(2, 1.0)}});
}

// Random qubit channel in canonical form with max |v_i| <= vmax and a random
// translation, rejection-sampled until completely positive.
inline QuantumChannel random_canonical_qubit(Rng& rng, double vmax) {
    for (;;) {
        QubitCanonicalForm form;
        form.u = random_unitary(2, rng);
        form.v_unitary = random_unitary(2, rng);
        for (int k = 0; k < 3; ++k) form.v(k) = uniform(rng, -vmax, vmax);
        for (int k = 0; k < 3; ++k) form.t(k) = uniform(rng, -0.3, 0.3);
        try {
            return qubit_canonical(form);
        } catch (const ValidationError&) {
        }
    }
}

}  // namespace contractis::testing

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

#include <cstdint>
#include <random>

#include "contractis/linalg.hpp"

namespace contractis {

using Rng = std::mt19937_64;

// Independent stream for (seed, stream). Used to give each multistart restart
// its own generator so results do not depend on scheduling.
Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0);

// Matrix with i.i.d. standard complex Gaussian entries (real and imaginary
// parts N(0, 1/2)).
ComplexMatrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng);

double uniform(Rng& rng, double lo = 0.0, double hi = 1.0);

}  // namespace contractis

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

#include <stdexcept>
#include <string>

namespace contractis {

// Base of every exception the library throws.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Shape or dimension incompatibility between operands.
class DimensionError : public Error {
public:
    using Error::Error;
};

// A value violates a domain invariant (non-Hermitian, not PSD, not CPTP, bad range...).
class ValidationError : public Error {
public:
    using Error::Error;
};

// Iterative procedure exhausted its budget.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

// The eigenvalue-1 eigenspace of a channel is more than one-dimensional.
class DegenerateFixedPointError : public Error {
public:
    using Error::Error;
};

// Malformed or unreadable input (file, JSON document, missing field).
class InputError : public Error {
public:
    using Error::Error;
};

}  // namespace contractis

// Copyright 2026 The cstomo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace cstomo {

using complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

/// Thrown for invalid arguments (ranges, probabilities, ranks).
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Operand shapes do not agree.
class DimensionMismatch : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

/// A matrix failed a Hermiticity / positivity / trace check.
class NotPhysical : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

/// A measurement or budget plan cannot be executed as requested.
class InfeasiblePlan : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Qubit count -> Hilbert-space dimension 2^n.
inline std::size_t dimension_of(int n) {
    if (n < 1 || n > 30)
        throw InvalidArgument("qubit count must be in [1, 30], got " + std::to_string(n));
    return std::size_t{1} << n;
}

}  // namespace cstomo

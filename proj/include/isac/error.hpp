// SPDX-License-Identifier: Apache-2.0
//
// isacmi: uplink MIMO-OFDM sensing/communication information metrics
// Copyright (C) 2026 The isacmi authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef ISAC_ERROR_HPP
#define ISAC_ERROR_HPP

#include <stdexcept>
#include <string>

namespace isac {

// Invalid sizes, out-of-range coefficients, mismatched dimensions.
class ParameterError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

// A quantity that must be real/positive/PSD came out otherwise.
class NumericalError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Bracket expansion or bisection ran out of iterations.
class ConvergenceError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// No mode can carry power (every eigenvalue pair is zero).
class InfeasibleError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace isac

#endif

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

#ifndef ISAC_ORACLE_HPP
#define ISAC_ORACLE_HPP

// Reference computations used to check the library: a generic concave
// maximizer over the scaled simplex, scalar root finding on the stationarity
// condition, and a Monte Carlo estimate of scalar mutual information. None of
// this shares code with the closed-form allocator.

#include "isac/optimizer.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace isac::oracle {

struct SimplexResult {
    std::vector<double> xis;
    double objective = 0.0;
    double gap_bound = 0.0;  // Frank-Wolfe certificate: objective* - objective <= gap_bound
    std::size_t iterations = 0;
};

// Pairwise-exchange ascent on the weighted objective: each step moves power
// from the mode with the smallest gradient to the one with the largest, with an
// exact one-dimensional line search. Uses only values and gradients. Stops once
// the Frank-Wolfe gap drops below rel_gap * |objective|.
SimplexResult maximize_on_simplex(const WeightedObjective& obj, double budget, double rel_gap = 1e-11,
                                  std::size_t max_iterations = 200000);

// Root of eta nu/(1 + nu xi) + eps phi/(1 + phi xi) = alpha by plain bisection;
// 0 when the left side at xi = 0 is already <= alpha.
double stationary_xi_bisect(double nu, double phi, double epsilon, double eta, double alpha);

// Random allocation problem with 1..max_modes modes, some degenerate.
WeightedObjective random_objective(Rng& rng, std::size_t max_modes);
double random_budget(Rng& rng);

struct SelftestReport {
    std::size_t instances = 0;
    double max_objective_gap = 0.0;     // relative, closed form vs simplex maximizer
    double max_kkt_residual = 0.0;
    double max_budget_error = 0.0;      // relative |sum xi - E| / E
    double max_root_residual = 0.0;     // closed form vs scalar bisection, relative
    double max_waterfill_error = 0.0;   // one-term limits vs textbook water level
    std::size_t failures = 0;
    double seconds = 0.0;

    bool passed() const;
    std::string summary() const;
};

SelftestReport run_selftest(std::size_t instances, std::uint64_t seed);

// ---------- scalar entropy check ----------

// Y = x h + x g + w with x ~ CN(0, p), g ~ CN(0, s), w ~ CN(0, sigma2), h known.
struct ScalarLink {
    double p = 1.0;
    double h_abs2 = 1.0;
    double s = 0.5;
    double sigma2 = 0.5;
};

// log p(y) for the link above as a function of |y|, by quadrature over |x|.
double scalar_log_density(const ScalarLink& link, double y_abs);

struct MonteCarloMi {
    double mean = 0.0;  // bits
    double stderr_ = 0.0;
    std::size_t samples = 0;
};

MonteCarloMi scalar_mi_monte_carlo(const ScalarLink& link, std::size_t samples, Rng& rng);

// E[log2(|x|^2 s + sigma2)] for x ~ CN(0, p), closed form via the exponential integral.
double expected_log2_interference(const ScalarLink& link);

} // namespace isac::oracle

#endif

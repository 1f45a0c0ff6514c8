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

#ifndef ISAC_OPTIMIZER_HPP
#define ISAC_OPTIMIZER_HPP

// Weighted sensing/communication power allocation.
//
// With nu_i = lambda_i / sigma'^2 and phi_i = mu_i / sigma^2 the problem is
//
//   max  sum_i  eta * ln(1 + nu_i xi_i) + eps * ln(1 + phi_i xi_i)
//   s.t. sum_i xi_i = E,  xi_i >= 0,
//
// where eta = (1 - w) n_x / (F_c ln 2) and eps = w n_r / (F_r ln 2). This is the
// weighted MI sum_i (1-w)/F_c * n_x log2(1 + nu xi) + w/F_r * n_r log2(1 + phi xi).
// Stationarity on an active mode reads
//
//   eta nu / (1 + nu xi) + eps phi / (1 + phi xi) = alpha,
//
// a quadratic in xi whose larger root gives the two-term water level. The
// multiplier alpha is found by bisection on the total power.

#include "isac/channel.hpp"
#include "isac/linalg.hpp"
#include "isac/rng.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace isac {

struct EigenPairing {
    std::vector<double> lambdas;  // eig(Hbd Hbd^H), descending
    std::vector<double> mus;      // eig(Sigma_G), descending
    CMatrix basis_h;              // U_H, block diagonal per subcarrier
    CMatrix basis_g;              // U_G

    std::size_t size() const { return lambdas.size(); }
    void validate() const;
};

// Pairs the i-th largest channel eigenvalue with the i-th largest sensing
// eigenvalue. Eigenvalues below kPsdClampTolerance * max are set to zero.
EigenPairing pair_eigenmodes(const ChannelRealization& real, const HermitianEigen& sigma_g_eig);
EigenPairing pair_eigenmodes(const ChannelRealization& real, const CMatrix& sigma_g);

struct PowerAllocation {
    std::vector<double> xis;
    double alpha = 0.0;          // 0 for allocations that were not solved (EA, RA)
    double budget = 0.0;
    double objective = 0.0;      // weighted MI of this allocation
    double kkt_residual = 0.0;   // max relative stationarity/slackness violation
    std::size_t iterations = 0;  // bracket expansions + bisection steps

    double total() const;
};

struct Normalizers {
    double f_r = 0.0;  // best sensing MI (bits); 0 disables the sensing term
    double f_c = 0.0;  // best communication MI (bits); 0 disables the comm term
};

struct WeightedObjective {
    double omega_r = 0.0;
    double f_r = 0.0;
    double f_c = 0.0;
    double epsilon = 0.0;
    double eta = 0.0;
    double sigma_n_prime_sq = 0.0;
    double noise_power = 0.0;
    std::vector<double> nu;
    std::vector<double> phi;

    // eta and eps are set from omega_r, normalizers and dimensions; a zero
    // normalizer removes its term.
    static WeightedObjective make(double omega_r, const Normalizers& norms, const EigenPairing& pairing,
                                  double sigma_n_prime_sq, double noise_power, std::size_t n_x, std::size_t n_r);

    // Raw weights, bypassing the normalizers.
    static WeightedObjective from_weights(double epsilon, double eta, std::vector<double> nu,
                                          std::vector<double> phi);

    double value(std::span<const double> xis) const;            // weighted MI
    double marginal(std::size_t i, double xi) const;            // d value / d xi_i
    std::size_t size() const { return nu.size(); }
};

// sigma'^2 = E * sum(mu) / n_x + sigma^2: the effective comm noise with the
// whole sensing covariance treated as interference.
double sigma_n_prime_sq(double budget, std::span<const double> mus, std::size_t n_x, double noise_power);

// Nonnegative root of the stationarity condition for one mode at multiplier alpha.
double xi_closed_form(double nu, double phi, double epsilon, double eta, double alpha);

// Options for the multiplier search.
struct SolveOptions {
    std::size_t max_expansions = 200;
    std::size_t max_bisections = 100;
    double budget_tolerance = 1e-9;  // relative |sum xi - E| / E
};

PowerAllocation solve_alpha(const WeightedObjective& obj, double budget, const SolveOptions& opts = {});

// Relative KKT violation of an allocation under `obj` at multiplier alpha.
double kkt_residual(const WeightedObjective& obj, std::span<const double> xis, double alpha);

enum class Scheme { isac, opc, ops, ea, ra };

std::string_view scheme_name(Scheme s);
Scheme parse_scheme(std::string_view name);  // throws ParameterError

// One channel instance at one noise level: everything the allocators need.
class WaveformProblem {
  public:
    WaveformProblem(const SystemConfig& cfg, EigenPairing pairing);

    const EigenPairing& pairing() const { return pairing_; }
    const Normalizers& normalizers() const { return norms_; }
    double sigma_n_prime_sq() const { return sigma_prime_sq_; }
    const SystemConfig& config() const { return cfg_; }

    WeightedObjective objective(double omega_r) const;

    // ISAC solves at `omega_r`; OPC and OPS are ISAC at 0 and 1; EA splits
    // evenly; RA draws a Dirichlet(1, ..., 1) split from `rng`.
    PowerAllocation solve(Scheme scheme, double omega_r, Rng* rng = nullptr) const;

    // (comm bits, sense bits) of the eigen-domain forms
    std::pair<double, double> eigen_mi(std::span<const double> xis) const;

  private:
    SystemConfig cfg_;
    EigenPairing pairing_;
    double sigma_prime_sq_ = 0.0;
    Normalizers norms_;
};

Normalizers normalizers(const EigenPairing& pairing, const SystemConfig& cfg);

PowerAllocation optimize_waveform(const SystemConfig& cfg, const EigenPairing& pairing, double sigma_n_prime_sq,
                                  const Normalizers& norms, Scheme mode, double omega_r, Rng* rng = nullptr);

} // namespace isac

#endif

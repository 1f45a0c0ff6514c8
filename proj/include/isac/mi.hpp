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

#ifndef ISAC_MI_HPP
#define ISAC_MI_HPP

// Mutual-information bounds for the uplink link. All values are in bits.
//
// Communication treats the sensing echo X G as interference:
//   Y = X H + W1,  W1 = X G + W,  R_W1 = rho1 * I.
// Sensing subtracts the decoded payload and keeps the demodulation error:
//   Y_rad = Xhat G + W2,  W2 = E G + W,  R_W2 = rho2 * I.
//
// Signal covariances carry the whole block energy: tr(Sigma_X) = E, the
// same budget that constrains tr(X X^H).

#include "isac/channel.hpp"
#include "isac/linalg.hpp"
#include "isac/rng.hpp"

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace isac {

struct MiDims {
    std::size_t n_t = 0;
    std::size_t n_r = 0;
    std::size_t n_c = 0;
    std::size_t n_x = 0;

    static MiDims from(const SystemConfig& cfg) { return {cfg.n_t, cfg.n_r, cfg.n_c, cfg.n_x}; }
};

struct CovarianceSet {
    CMatrix sigma_x;      // n_c*n_t square
    CMatrix sigma_g;      // n_c*n_t square
    CMatrix sigma_e_bar;  // n_t square, one subcarrier
    double r_w1 = 0.0;    // R_W1 = r_w1 * I_{n_r}
    double r_w2 = 0.0;    // R_W2 = r_w2 * I_{n_x n_c}
    double noise_power = 0.0;

    void validate() const;
};

struct ModeContribution {
    double lambda = 0.0;
    double mu = 0.0;
    double xi = 0.0;
    double comm_bits = 0.0;
    double sense_bits = 0.0;
};

struct MiReport {
    double comm_lower = 0.0;
    double comm_upper = 0.0;
    double sense_lower = 0.0;
    double sense_upper = 0.0;
    double rho1 = 0.0;
    double rho2 = 0.0;
    std::vector<ModeContribution> modes;
};

// Which noise level sits in the second correction term of the sensing upper
// bound. `matched` uses sigma_n^2, so the bound collapses onto the lower bound
// when the demodulation error vanishes; `unit` keeps the identity as printed in
// the original derivation and only collapses at sigma_n^2 = 1.
enum class SensingCorrection { matched, unit };

// rho1 = tr(Sigma_X Sigma_G) / n_x + sigma_n^2
double r_w1(const CMatrix& sigma_x, const CMatrix& sigma_g, std::size_t n_x, double noise_power);

// rho2 = tr(gram * Sigma_Ebar) / n_r + sigma_n^2 with gram = E[sum_l G_l G_l^H]
// (or a realized estimate of it).
double r_w2(const CMatrix& sense_tap_gram, const CMatrix& sigma_e_bar, std::size_t n_r, double noise_power);

// n_x log2 det(I + Hbd^H Sigma_X Hbd / rho1), Hbd = diag{H(p)}.
double comm_mi_lower(const CMatrix& h_block_diag, const CMatrix& sigma_x, double rho1, std::size_t n_x);
double comm_mi_lower(const ChannelRealization& real, const CMatrix& sigma_x, double rho1, std::size_t n_x);

// log2 det(X Sigma_G X^H + sigma_n^2 I) for a block signal X (n_c n_x by n_c n_t).
double signal_interference_log2det(const CMatrix& x_block, const CMatrix& sigma_g, double noise_power);

// lower + n_x n_c n_r log2 rho1 - n_r * interference_log2det
double comm_mi_upper_from_parts(double lower, double rho1, double interference_log2det, const MiDims& dims);

double comm_mi_upper(const ChannelRealization& real, const CMatrix& x_block, const CMatrix& sigma_x,
                     const CMatrix& sigma_g, double rho1, double noise_power, const MiDims& dims);

// n_r log2 det(I + Xhat Sigma_G Xhat^H / rho2), evaluated on the n_x n_c side.
double sensing_mi_lower(const CMatrix& x_hat, const CMatrix& sigma_g, double rho2, std::size_t n_r);

// Same quantity through Sylvester's identity: n_r log2 det(I + Sigma_G Xhat^H Xhat / rho2),
// taking only the signal Gram Xhat^H Xhat.
double sensing_mi_lower_gram(const CMatrix& signal_gram, const CMatrix& sigma_g, double rho2, std::size_t n_r);

// lower + n_r n_x n_c log2 rho2 - n_x log2 det(Gbar^H Sigma_E Gbar + c I), with
// c = sigma_n^2 (matched) or 1 (unit).
double sensing_mi_upper_from_lower(double lower, const CMatrix& sigma_e, const CMatrix& g_bar, double rho2,
                                   double noise_power, const MiDims& dims,
                                   SensingCorrection form = SensingCorrection::matched);

double sensing_mi_upper(const CMatrix& x_hat, const CMatrix& sigma_g, const CMatrix& sigma_e, const CMatrix& g_bar,
                        double rho2, double noise_power, const MiDims& dims,
                        SensingCorrection form = SensingCorrection::matched);

// Eigen-domain forms: comm = sum_i n_x log2(1 + lambda_i xi_i / sigma'^2),
// sense = sum_i n_r log2(1 + mu_i xi_i / sigma^2).
std::pair<double, double> eigen_mi_pair(std::span<const double> lambdas, std::span<const double> mus,
                                        std::span<const double> xis, double sigma_n_prime_sq, double noise_power,
                                        std::size_t n_x, std::size_t n_r);

// ---------- signal realizations ----------

// Block signal whose Gram X(p)^H X(p) equals the diagonal block Sigma_X(p, p)
// exactly. Needs rank(Sigma_X(p, p)) <= n_x.
CMatrix sqrt_signal_block(const CMatrix& sigma_x, const MiDims& dims);

// Block signal with i.i.d. rows X(p)_k ~ CN(0, Sigma_X(p, p) / n_x).
CMatrix gaussian_signal_block(const CMatrix& sigma_x, const MiDims& dims, Rng& rng);

// Sigma_E = I_{n_c} (x) Sigma_Ebar
CMatrix block_error_covariance(const CMatrix& sigma_e_bar, std::size_t n_c);

// ---------- full report ----------

// Everything needed to evaluate the four bounds for one allocation.
struct BoundInputs {
    const ChannelRealization* real = nullptr;
    const CMatrix* sigma_g = nullptr;
    const CMatrix* sigma_g_factor = nullptr;  // F with F F^H = Sigma_G; optional
    const CMatrix* comm_basis = nullptr;      // U_H
    const CMatrix* sense_basis = nullptr;     // U_G
    std::span<const double> lambdas;
    std::span<const double> mus;
    std::span<const double> xis;
    CMatrix sigma_e_bar;
    double noise_power = 0.0;
    double sigma_n_prime_sq = 0.0;
    MiDims dims;
    // 0: deterministic square-root signal; n > 0: average the interference
    // term over n Gaussian signal draws from `rng`.
    std::size_t signal_draws = 0;
    Rng* rng = nullptr;
    SensingCorrection sensing_form = SensingCorrection::matched;
};

MiReport evaluate_bounds(const BoundInputs& in);

// Low-rank factor F (n x rank) with F F^H = A for a PSD matrix A.
CMatrix psd_factor(const CMatrix& a);

} // namespace isac

#endif

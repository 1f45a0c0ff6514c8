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

#ifndef ISAC_CHANNEL_HPP
#define ISAC_CHANNEL_HPP

#include "isac/linalg.hpp"
#include "isac/rng.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace isac {

// System dimensions and link budget.
//
// Path counts are the largest tap delay, so a channel with `l_c = 3` has four
// taps H_0..H_3. The budget is the total energy tr(X X^H) of one block of
// n_x symbols on n_c subcarriers and n_t antennas.
struct SystemConfig {
    std::size_t n_t = 4;          // UE transmit antennas
    std::size_t n_r = 4;          // BS receive antennas
    std::size_t n_c = 8;          // subcarriers
    std::size_t n_x = 10;         // symbols per block
    std::size_t l_c = 3;          // communication channel max delay
    std::size_t l_s = 3;          // sensing channel max delay
    double noise_power = 1.0;     // sigma_n^2, linear
    double budget = 320.0;        // E
    double omega_r = 0.5;         // sensing weight
    double rho = 0.5;             // adjacent-antenna correlation coefficient
    double demod_error = 0.0;     // per-entry demodulation error variance
    std::uint64_t seed = 1;

    void validate() const;  // throws ParameterError
};

// Per-path transmit correlation matrices and path powers.
struct CorrelationModel {
    std::vector<CMatrix> correlations;  // R_{s,l}, n_t x n_t each
    std::vector<double> path_powers;    // sigma_l^2, sums to one

    std::size_t antennas() const;
    std::size_t max_delay() const { return correlations.empty() ? 0 : correlations.size() - 1; }

    void validate() const;

    // Same exponential correlation on every path, uniform power delay profile.
    static CorrelationModel exponential(std::size_t n_t, std::size_t max_delay, double rho);
};

struct ChannelModel {
    CorrelationModel comm;
    CorrelationModel sense;

    static ChannelModel from_config(const SystemConfig& cfg);
};

// Time-domain DFT operator mapping stacked taps to stacked subcarrier matrices.
//
// Row block p is I_{n_t} (x) w(p) with w(p) = [1, e^{-j2 pi p/n_c}, ..., e^{-j2 pi pL/n_c}].
// Tap stacks use antenna-major order: row mu*(L+1) + l holds h_{mu,nu}(l).
class OmegaMatrix {
  public:
    OmegaMatrix(std::size_t n_c, std::size_t n_t, std::size_t max_delay);

    const CMatrix& matrix() const { return matrix_; }
    CMatrix block(std::size_t p) const;     // Omega(p), n_t x n_t(L+1)
    CVector dft_row(std::size_t p) const;   // w(p), length L+1

    std::size_t subcarriers() const { return n_c_; }
    std::size_t antennas() const { return n_t_; }
    std::size_t max_delay() const { return max_delay_; }

  private:
    std::size_t n_c_, n_t_, max_delay_;
    CMatrix matrix_;
};

OmegaMatrix build_omega(std::size_t n_c, std::size_t n_t, std::size_t max_delay);

struct ChannelRealization {
    std::vector<CMatrix> comm_taps;   // H_l, n_t x n_r
    std::vector<CMatrix> sense_taps;  // G_l, n_t x n_r
    CMatrix freq_comm;                // [H(0); ...; H(n_c-1)], n_c*n_t x n_r
    CMatrix freq_sense;               // [G(0); ...; G(n_c-1)]
    std::size_t n_c = 0;

    CMatrix comm_at(std::size_t p) const;
    CMatrix sense_at(std::size_t p) const;
    CMatrix block_diag_comm() const;   // diag{H(p)}, n_c*n_t x n_c*n_r
    CMatrix block_diag_sense() const;  // diag{G(p)}
};

// R[i][j] = rho^|i-j|
CMatrix build_exponential_correlation(std::size_t n_t, double rho);

// Stacks taps into the (n_t(L+1)) x n_r layout consumed by Omega.
CMatrix stack_taps(const std::vector<CMatrix>& taps);

// Omega * stack_taps(taps)
CMatrix taps_to_frequency(const std::vector<CMatrix>& taps, const OmegaMatrix& omega);

// Covariance of one column of the tap stack, in Omega's antenna-major order.
CMatrix tap_stack_covariance(const CorrelationModel& corr);

// Sigma_G = Omega * cov(g^nu) * Omega^H. Block (p, p') equals
// sum_l sigma_l^2 R_l e^{-j2 pi l (p - p') / n_c}.
CMatrix build_sigma_g(const CorrelationModel& corr, const OmegaMatrix& omega);

// E[sum_l G_l G_l^H] = n_r * sum_l sigma_l^2 R_l
CMatrix expected_tap_gram(const CorrelationModel& corr, std::size_t n_r);

// (1/n_c) sum_p G(p) G(p)^H of one realization; equals sum_l G_l G_l^H when
// the taps fit inside the DFT (L < n_c) and has the same expectation otherwise.
CMatrix realized_sense_gram(const ChannelRealization& real);

// Draws channel realizations for a fixed model. Square roots and DFT operators
// are computed once; draws are const and thread-safe given distinct Rngs.
class ChannelGenerator {
  public:
    ChannelGenerator(const SystemConfig& cfg, ChannelModel model);

    ChannelRealization draw(Rng& rng) const;

    const ChannelModel& model() const { return model_; }
    const OmegaMatrix& comm_omega() const { return comm_omega_; }
    const OmegaMatrix& sense_omega() const { return sense_omega_; }

  private:
    std::size_t n_t_, n_r_, n_c_;
    ChannelModel model_;
    std::vector<CMatrix> comm_roots_, sense_roots_;
    OmegaMatrix comm_omega_, sense_omega_;
};

// One-shot form of ChannelGenerator::draw. Taps are
// G_l = R_l^{1/2} G_w with G_w entries i.i.d. CN(0, sigma_l^2).
ChannelRealization draw_taps(const SystemConfig& cfg, const ChannelModel& model, Rng& rng);

} // namespace isac

#endif

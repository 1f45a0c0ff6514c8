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

#include "isac/channel.hpp"

#include "isac/error.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <utility>

namespace isac {

void SystemConfig::validate() const
{
    if (n_t == 0 || n_r == 0 || n_c == 0 || n_x == 0)
        throw ParameterError("antenna, subcarrier and symbol counts must be >= 1");
    if (!(noise_power > 0.0) || !std::isfinite(noise_power))
        throw ParameterError("noise_power must be positive");
    if (!(budget > 0.0) || !std::isfinite(budget))
        throw ParameterError("budget must be positive");
    if (!(omega_r >= 0.0 && omega_r <= 1.0))
        throw ParameterError("omega_r must lie in [0, 1]");
    if (!(rho >= 0.0 && rho < 1.0))
        throw ParameterError("rho must lie in [0, 1)");
    if (!(demod_error >= 0.0) || !std::isfinite(demod_error))
        throw ParameterError("demod_error must be nonnegative");
}

std::size_t CorrelationModel::antennas() const
{
    return correlations.empty() ? 0 : static_cast<std::size_t>(correlations.front().rows());
}

void CorrelationModel::validate() const
{
    if (correlations.empty())
        throw ParameterError("correlation model has no paths");
    if (correlations.size() != path_powers.size())
        throw ParameterError("correlation model: path count mismatch");
    const auto n = correlations.front().rows();
    double total = 0.0;
    for (std::size_t l = 0; l < correlations.size(); ++l) {
        const CMatrix& r = correlations[l];
        if (r.rows() != n || r.cols() != n)
            throw ParameterError("correlation model: inconsistent matrix sizes");
        if (hermitian_defect(r) > 1e-12)
            throw ParameterError("correlation model: R_l is not Hermitian");
        for (Eigen::Index i = 0; i < n; ++i)
            if (std::abs(r(i, i) - 1.0) > 1e-12)
                throw ParameterError("correlation model: R_l must have unit diagonal");
        if (eigh_descending(r).values.minCoeff() < -kPsdClampTolerance)
            throw ParameterError("correlation model: R_l is not PSD");
        if (!(path_powers[l] >= 0.0))
            throw ParameterError("correlation model: negative path power");
        total += path_powers[l];
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw ParameterError("correlation model: path powers must sum to one");
}

CorrelationModel CorrelationModel::exponential(std::size_t n_t, std::size_t max_delay, double rho)
{
    CorrelationModel out;
    const CMatrix r = build_exponential_correlation(n_t, rho);
    const std::size_t paths = max_delay + 1;
    out.correlations.assign(paths, r);
    out.path_powers.assign(paths, 1.0 / static_cast<double>(paths));
    return out;
}

ChannelModel ChannelModel::from_config(const SystemConfig& cfg)
{
    cfg.validate();
    return {CorrelationModel::exponential(cfg.n_t, cfg.l_c, cfg.rho),
            CorrelationModel::exponential(cfg.n_t, cfg.l_s, cfg.rho)};
}

CMatrix build_exponential_correlation(std::size_t n_t, double rho)
{
    if (n_t == 0)
        throw ParameterError("build_exponential_correlation: n_t must be >= 1");
    if (!(rho >= 0.0 && rho < 1.0))
        throw ParameterError("build_exponential_correlation: rho must lie in [0, 1)");
    const auto n = static_cast<Eigen::Index>(n_t);
    CMatrix r(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            r(i, j) = std::pow(rho, static_cast<double>(std::abs(i - j)));
    return r;
}

// ---------- DFT operator ----------

OmegaMatrix::OmegaMatrix(std::size_t n_c, std::size_t n_t, std::size_t max_delay)
    : n_c_(n_c), n_t_(n_t), max_delay_(max_delay)
{
    if (n_c == 0 || n_t == 0)
        throw ParameterError("build_omega: n_c and n_t must be >= 1");
    const auto taps = static_cast<Eigen::Index>(max_delay + 1);
    const auto nt = static_cast<Eigen::Index>(n_t);
    matrix_ = CMatrix::Zero(static_cast<Eigen::Index>(n_c) * nt, nt * taps);
    for (std::size_t p = 0; p < n_c; ++p) {
        const CVector w = dft_row(p);
        for (Eigen::Index mu = 0; mu < nt; ++mu)
            matrix_.block(static_cast<Eigen::Index>(p) * nt + mu, mu * taps, 1, taps) = w.transpose();
    }
}

CVector OmegaMatrix::dft_row(std::size_t p) const
{
    const auto taps = static_cast<Eigen::Index>(max_delay_ + 1);
    CVector w(taps);
    // reduce l*p mod n_c before the trig call so phases stay exact for large products
    for (Eigen::Index l = 0; l < taps; ++l) {
        const std::size_t k = (static_cast<std::size_t>(l) * p) % n_c_;
        const double phase = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n_c_);
        w(l) = std::polar(1.0, phase);
    }
    return w;
}

CMatrix OmegaMatrix::block(std::size_t p) const
{
    if (p >= n_c_)
        throw ParameterError("OmegaMatrix::block: subcarrier index out of range");
    const auto nt = static_cast<Eigen::Index>(n_t_);
    return matrix_.middleRows(static_cast<Eigen::Index>(p) * nt, nt);
}

OmegaMatrix build_omega(std::size_t n_c, std::size_t n_t, std::size_t max_delay)
{
    return OmegaMatrix(n_c, n_t, max_delay);
}

CMatrix stack_taps(const std::vector<CMatrix>& taps)
{
    if (taps.empty())
        throw ParameterError("stack_taps: no taps");
    const auto nt = taps.front().rows();
    const auto nr = taps.front().cols();
    const auto n_taps = static_cast<Eigen::Index>(taps.size());
    CMatrix h(nt * n_taps, nr);
    for (Eigen::Index l = 0; l < n_taps; ++l) {
        const CMatrix& t = taps[static_cast<std::size_t>(l)];
        if (t.rows() != nt || t.cols() != nr)
            throw ParameterError("stack_taps: inconsistent tap sizes");
        for (Eigen::Index mu = 0; mu < nt; ++mu)
            h.row(mu * n_taps + l) = t.row(mu);
    }
    return h;
}

CMatrix taps_to_frequency(const std::vector<CMatrix>& taps, const OmegaMatrix& omega)
{
    if (taps.size() != omega.max_delay() + 1)
        throw ParameterError("taps_to_frequency: tap count does not match Omega");
    if (static_cast<std::size_t>(taps.front().rows()) != omega.antennas())
        throw ParameterError("taps_to_frequency: antenna count does not match Omega");
    return omega.matrix() * stack_taps(taps);
}

CMatrix tap_stack_covariance(const CorrelationModel& corr)
{
    const auto nt = static_cast<Eigen::Index>(corr.antennas());
    const auto n_taps = static_cast<Eigen::Index>(corr.correlations.size());
    CMatrix c = CMatrix::Zero(nt * n_taps, nt * n_taps);
    for (Eigen::Index l = 0; l < n_taps; ++l) {
        const CMatrix& r = corr.correlations[static_cast<std::size_t>(l)];
        const double s2 = corr.path_powers[static_cast<std::size_t>(l)];
        for (Eigen::Index mu = 0; mu < nt; ++mu)
            for (Eigen::Index mv = 0; mv < nt; ++mv)
                c(mu * n_taps + l, mv * n_taps + l) = s2 * r(mu, mv);
    }
    return c;
}

CMatrix build_sigma_g(const CorrelationModel& corr, const OmegaMatrix& omega)
{
    corr.validate();
    if (corr.antennas() != omega.antennas() || corr.max_delay() != omega.max_delay())
        throw ParameterError("build_sigma_g: correlation model does not match Omega");
    const CMatrix& om = omega.matrix();
    return hermitian_part(om * tap_stack_covariance(corr) * om.adjoint());
}

CMatrix expected_tap_gram(const CorrelationModel& corr, std::size_t n_r)
{
    const auto nt = static_cast<Eigen::Index>(corr.antennas());
    CMatrix g = CMatrix::Zero(nt, nt);
    for (std::size_t l = 0; l < corr.correlations.size(); ++l)
        g += corr.path_powers[l] * corr.correlations[l];
    return static_cast<double>(n_r) * g;
}

CMatrix realized_sense_gram(const ChannelRealization& real)
{
    if (real.n_c == 0)
        throw ParameterError("realized_sense_gram: empty realization");
    const auto nt = real.freq_sense.rows() / static_cast<Eigen::Index>(real.n_c);
    CMatrix g = CMatrix::Zero(nt, nt);
    for (std::size_t p = 0; p < real.n_c; ++p) {
        const CMatrix gp = real.sense_at(p);
        g += gp * gp.adjoint();
    }
    return hermitian_part(g / static_cast<double>(real.n_c));
}

// ---------- realizations ----------

namespace {

CMatrix subcarrier_block(const CMatrix& stacked, std::size_t n_c, std::size_t p)
{
    if (p >= n_c)
        throw ParameterError("subcarrier index out of range");
    const auto nt = stacked.rows() / static_cast<Eigen::Index>(n_c);
    return stacked.middleRows(static_cast<Eigen::Index>(p) * nt, nt);
}

CMatrix stacked_to_block_diag(const CMatrix& stacked, std::size_t n_c)
{
    std::vector<CMatrix> blocks;
    blocks.reserve(n_c);
    for (std::size_t p = 0; p < n_c; ++p)
        blocks.push_back(subcarrier_block(stacked, n_c, p));
    return block_diagonal(blocks);
}

std::vector<CMatrix> correlation_roots(const CorrelationModel& corr)
{
    std::vector<CMatrix> roots;
    roots.reserve(corr.correlations.size());
    for (const auto& r : corr.correlations)
        roots.push_back(psd_sqrt(r));
    return roots;
}

std::vector<CMatrix> draw_tap_set(const std::vector<CMatrix>& roots, const std::vector<double>& powers,
                                  Eigen::Index n_r, Rng& rng)
{
    std::vector<CMatrix> taps;
    taps.reserve(roots.size());
    for (std::size_t l = 0; l < roots.size(); ++l) {
        const Eigen::Index nt = roots[l].rows();
        CMatrix white(nt, n_r);
        // column-major fill order is part of the reproducibility contract
        for (Eigen::Index c = 0; c < n_r; ++c)
            for (Eigen::Index r = 0; r < nt; ++r)
                white(r, c) = rng.complex_normal(powers[l]);
        taps.push_back(roots[l] * white);
    }
    return taps;
}

} // namespace

CMatrix ChannelRealization::comm_at(std::size_t p) const
{
    return subcarrier_block(freq_comm, n_c, p);
}

CMatrix ChannelRealization::sense_at(std::size_t p) const
{
    return subcarrier_block(freq_sense, n_c, p);
}

CMatrix ChannelRealization::block_diag_comm() const
{
    return stacked_to_block_diag(freq_comm, n_c);
}

CMatrix ChannelRealization::block_diag_sense() const
{
    return stacked_to_block_diag(freq_sense, n_c);
}

ChannelGenerator::ChannelGenerator(const SystemConfig& cfg, ChannelModel model)
    : n_t_(cfg.n_t), n_r_(cfg.n_r), n_c_(cfg.n_c), model_(std::move(model)),
      comm_omega_(cfg.n_c, cfg.n_t, model_.comm.max_delay()),
      sense_omega_(cfg.n_c, cfg.n_t, model_.sense.max_delay())
{
    cfg.validate();
    model_.comm.validate();
    model_.sense.validate();
    if (model_.comm.antennas() != n_t_ || model_.sense.antennas() != n_t_)
        throw ParameterError("channel model antenna count does not match n_t");
    comm_roots_ = correlation_roots(model_.comm);
    sense_roots_ = correlation_roots(model_.sense);
}

ChannelRealization ChannelGenerator::draw(Rng& rng) const
{
    const auto nr = static_cast<Eigen::Index>(n_r_);
    ChannelRealization out;
    out.n_c = n_c_;
    out.comm_taps = draw_tap_set(comm_roots_, model_.comm.path_powers, nr, rng);
    out.sense_taps = draw_tap_set(sense_roots_, model_.sense.path_powers, nr, rng);
    out.freq_comm = taps_to_frequency(out.comm_taps, comm_omega_);
    out.freq_sense = taps_to_frequency(out.sense_taps, sense_omega_);
    return out;
}

ChannelRealization draw_taps(const SystemConfig& cfg, const ChannelModel& model, Rng& rng)
{
    return ChannelGenerator(cfg, model).draw(rng);
}

} // namespace isac

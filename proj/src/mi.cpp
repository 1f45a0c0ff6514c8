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

#include "isac/mi.hpp"

#include "isac/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace isac {

namespace {

void require_square(const CMatrix& a, Eigen::Index n, const char* what)
{
    if (a.rows() != n || a.cols() != n)
        throw ParameterError(std::string(what) + ": expected a " + std::to_string(n) + "x" + std::to_string(n) +
                             " matrix, got " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
}

// tr(A B) with a check that the result is real
double real_trace_product(const CMatrix& a, const CMatrix& b, const char* what)
{
    const cdouble t = a.cwiseProduct(b.transpose()).sum();
    if (std::abs(t.imag()) > 1e-8 * std::max(1.0, std::abs(t.real())))
        throw NumericalError(std::string(what) + ": trace has imaginary part " + std::to_string(t.imag()));
    return t.real();
}

void require_positive(double v, const char* what)
{
    if (!(v > 0.0) || !std::isfinite(v))
        throw ParameterError(std::string(what) + " must be positive and finite");
}

Eigen::Index idx(std::size_t v)
{
    return static_cast<Eigen::Index>(v);
}

} // namespace

void CovarianceSet::validate() const
{
    require_positive(noise_power, "noise_power");
    if (r_w1 < noise_power || r_w2 < noise_power)
        throw NumericalError("effective noise below thermal noise");
    for (const CMatrix* m : {&sigma_x, &sigma_g, &sigma_e_bar}) {
        if (m->size() == 0)
            continue;
        if (hermitian_defect(*m) > 1e-9 * std::max(1.0, m->cwiseAbs().maxCoeff()))
            throw NumericalError("covariance is not Hermitian");
        if (eigh_descending(*m).values.minCoeff() < -1e-10)
            throw NumericalError("covariance is not PSD");
    }
}

double r_w1(const CMatrix& sigma_x, const CMatrix& sigma_g, std::size_t n_x, double noise_power)
{
    require_square(sigma_g, sigma_x.rows(), "r_w1");
    if (n_x == 0)
        throw ParameterError("r_w1: n_x must be >= 1");
    require_positive(noise_power, "r_w1: noise_power");
    return real_trace_product(sigma_x, sigma_g, "r_w1") / static_cast<double>(n_x) + noise_power;
}

double r_w2(const CMatrix& sense_tap_gram, const CMatrix& sigma_e_bar, std::size_t n_r, double noise_power)
{
    require_square(sigma_e_bar, sense_tap_gram.rows(), "r_w2");
    if (n_r == 0)
        throw ParameterError("r_w2: n_r must be >= 1");
    require_positive(noise_power, "r_w2: noise_power");
    return real_trace_product(sense_tap_gram, sigma_e_bar, "r_w2") / static_cast<double>(n_r) + noise_power;
}

double comm_mi_lower(const CMatrix& h_block_diag, const CMatrix& sigma_x, double rho1, std::size_t n_x)
{
    require_square(sigma_x, h_block_diag.rows(), "comm_mi_lower");
    require_positive(rho1, "comm_mi_lower: rho1");
    CMatrix m = h_block_diag.adjoint() * sigma_x * h_block_diag / rho1;
    m.diagonal().array() += 1.0;
    return static_cast<double>(n_x) * log2det_hpd(m);
}

double comm_mi_lower(const ChannelRealization& real, const CMatrix& sigma_x, double rho1, std::size_t n_x)
{
    return comm_mi_lower(real.block_diag_comm(), sigma_x, rho1, n_x);
}

CMatrix psd_factor(const CMatrix& a)
{
    const HermitianEigen eig = eigh_descending(a);
    const double top = eig.values.size() > 0 ? eig.values(0) : 0.0;
    Eigen::Index rank = 0;
    while (rank < eig.values.size() && top > 0.0 && eig.values(rank) > kPsdClampTolerance * top)
        ++rank;
    CMatrix f = eig.vectors.leftCols(rank);
    for (Eigen::Index i = 0; i < rank; ++i)
        f.col(i) *= std::sqrt(eig.values(i));
    return f;
}

double signal_interference_log2det(const CMatrix& x_block, const CMatrix& sigma_g, double noise_power)
{
    require_square(sigma_g, x_block.cols(), "signal_interference_log2det");
    require_positive(noise_power, "signal_interference_log2det: noise_power");
    const CMatrix f = psd_factor(sigma_g);
    if (f.cols() == 0)
        return static_cast<double>(x_block.rows()) * std::log2(noise_power);
    return log2det_shifted_gram(x_block * f, noise_power);
}

double comm_mi_upper_from_parts(double lower, double rho1, double interference_log2det, const MiDims& dims)
{
    require_positive(rho1, "comm_mi_upper: rho1");
    const double n_xcr = static_cast<double>(dims.n_x * dims.n_c * dims.n_r);
    return lower + n_xcr * std::log2(rho1) - static_cast<double>(dims.n_r) * interference_log2det;
}

double comm_mi_upper(const ChannelRealization& real, const CMatrix& x_block, const CMatrix& sigma_x,
                     const CMatrix& sigma_g, double rho1, double noise_power, const MiDims& dims)
{
    if (x_block.rows() != idx(dims.n_c * dims.n_x) || x_block.cols() != idx(dims.n_c * dims.n_t))
        throw ParameterError("comm_mi_upper: signal block has the wrong shape");
    const double lower = comm_mi_lower(real, sigma_x, rho1, dims.n_x);
    return comm_mi_upper_from_parts(lower, rho1, signal_interference_log2det(x_block, sigma_g, noise_power), dims);
}

double sensing_mi_lower(const CMatrix& x_hat, const CMatrix& sigma_g, double rho2, std::size_t n_r)
{
    require_square(sigma_g, x_hat.cols(), "sensing_mi_lower");
    require_positive(rho2, "sensing_mi_lower: rho2");
    CMatrix m = x_hat * sigma_g * x_hat.adjoint() / rho2;
    m.diagonal().array() += 1.0;
    return static_cast<double>(n_r) * log2det_hpd(m);
}

double sensing_mi_lower_gram(const CMatrix& signal_gram, const CMatrix& sigma_g, double rho2, std::size_t n_r)
{
    require_square(sigma_g, signal_gram.rows(), "sensing_mi_lower_gram");
    require_positive(rho2, "sensing_mi_lower_gram: rho2");
    const CMatrix f = psd_factor(sigma_g);
    if (f.cols() == 0)
        return 0.0;
    CMatrix m = f.adjoint() * signal_gram * f / rho2;
    m.diagonal().array() += 1.0;
    return static_cast<double>(n_r) * log2det_hpd(m);
}

double sensing_mi_upper_from_lower(double lower, const CMatrix& sigma_e, const CMatrix& g_bar, double rho2,
                                   double noise_power, const MiDims& dims, SensingCorrection form)
{
    require_square(sigma_e, g_bar.rows(), "sensing_mi_upper");
    if (g_bar.cols() != idx(dims.n_r * dims.n_c))
        throw ParameterError("sensing_mi_upper: Gbar must have n_r*n_c columns");
    require_positive(rho2, "sensing_mi_upper: rho2");
    require_positive(noise_power, "sensing_mi_upper: noise_power");
    const double shift = form == SensingCorrection::matched ? noise_power : 1.0;
    CMatrix m = g_bar.adjoint() * sigma_e * g_bar;
    m.diagonal().array() += shift;
    const double n_rxc = static_cast<double>(dims.n_r * dims.n_x * dims.n_c);
    return lower + n_rxc * std::log2(rho2) - static_cast<double>(dims.n_x) * log2det_hpd(m);
}

double sensing_mi_upper(const CMatrix& x_hat, const CMatrix& sigma_g, const CMatrix& sigma_e, const CMatrix& g_bar,
                        double rho2, double noise_power, const MiDims& dims, SensingCorrection form)
{
    const double lower = sensing_mi_lower(x_hat, sigma_g, rho2, dims.n_r);
    return sensing_mi_upper_from_lower(lower, sigma_e, g_bar, rho2, noise_power, dims, form);
}

std::pair<double, double> eigen_mi_pair(std::span<const double> lambdas, std::span<const double> mus,
                                        std::span<const double> xis, double sigma_n_prime_sq, double noise_power,
                                        std::size_t n_x, std::size_t n_r)
{
    if (lambdas.size() != xis.size() || mus.size() != xis.size())
        throw ParameterError("eigen_mi_pair: eigenvalue and allocation lengths differ");
    require_positive(sigma_n_prime_sq, "eigen_mi_pair: sigma_n'^2");
    require_positive(noise_power, "eigen_mi_pair: noise_power");
    double comm = 0.0, sense = 0.0;
    for (std::size_t i = 0; i < xis.size(); ++i) {
        if (lambdas[i] < 0.0 || mus[i] < 0.0 || xis[i] < 0.0)
            throw ParameterError("eigen_mi_pair: negative eigenvalue or power");
        comm += static_cast<double>(n_x) * std::log2(1.0 + lambdas[i] * xis[i] / sigma_n_prime_sq);
        sense += static_cast<double>(n_r) * std::log2(1.0 + mus[i] * xis[i] / noise_power);
    }
    return {comm, sense};
}

// ---------- signal realizations ----------

namespace {

void check_signal_shape(const CMatrix& sigma_x, const MiDims& dims)
{
    if (dims.n_c == 0 || dims.n_t == 0 || dims.n_x == 0)
        throw ParameterError("signal block: dimensions must be >= 1");
    require_square(sigma_x, idx(dims.n_c * dims.n_t), "signal block");
}

} // namespace

CMatrix sqrt_signal_block(const CMatrix& sigma_x, const MiDims& dims)
{
    check_signal_shape(sigma_x, dims);
    const Eigen::Index nt = idx(dims.n_t), nx = idx(dims.n_x);
    CMatrix x = CMatrix::Zero(idx(dims.n_c) * nx, idx(dims.n_c) * nt);
    for (Eigen::Index p = 0; p < idx(dims.n_c); ++p) {
        const HermitianEigen eig = eigh_descending(sigma_x.block(p * nt, p * nt, nt, nt));
        const double top = std::max(eig.values(0), 0.0);
        Eigen::Index rank = 0;
        while (rank < nt && top > 0.0 && eig.values(rank) > kPsdClampTolerance * top)
            ++rank;
        if (rank > nx)
            throw ParameterError("sqrt_signal_block: per-subcarrier covariance rank exceeds n_x");
        for (Eigen::Index k = 0; k < rank; ++k)
            x.block(p * nx + k, p * nt, 1, nt) = std::sqrt(eig.values(k)) * eig.vectors.col(k).adjoint();
    }
    return x;
}

CMatrix gaussian_signal_block(const CMatrix& sigma_x, const MiDims& dims, Rng& rng)
{
    check_signal_shape(sigma_x, dims);
    const Eigen::Index nt = idx(dims.n_t), nx = idx(dims.n_x);
    CMatrix x = CMatrix::Zero(idx(dims.n_c) * nx, idx(dims.n_c) * nt);
    CVector w(nt);
    for (Eigen::Index p = 0; p < idx(dims.n_c); ++p) {
        const CMatrix root = psd_sqrt(sigma_x.block(p * nt, p * nt, nt, nt) / static_cast<double>(dims.n_x));
        for (Eigen::Index k = 0; k < nx; ++k) {
            for (Eigen::Index j = 0; j < nt; ++j)
                w(j) = rng.complex_normal(1.0);
            x.block(p * nx + k, p * nt, 1, nt) = w.transpose() * root;
        }
    }
    return x;
}

CMatrix block_error_covariance(const CMatrix& sigma_e_bar, std::size_t n_c)
{
    return block_diagonal(std::vector<CMatrix>(n_c, sigma_e_bar));
}

// ---------- full report ----------

MiReport evaluate_bounds(const BoundInputs& in)
{
    if (!in.real || !in.sigma_g || !in.comm_basis || !in.sense_basis)
        throw ParameterError("evaluate_bounds: missing channel inputs");
    const MiDims& d = in.dims;
    const std::size_t modes = d.n_c * d.n_t;
    if (in.xis.size() != modes || in.lambdas.size() != modes || in.mus.size() != modes)
        throw ParameterError("evaluate_bounds: allocation length must be n_c*n_t");
    if (in.signal_draws > 0 && !in.rng)
        throw ParameterError("evaluate_bounds: Gaussian signal draws need an Rng");

    Eigen::Map<const RVector> xi(in.xis.data(), idx(modes));
    const CMatrix& sigma_g = *in.sigma_g;
    const CMatrix f = in.sigma_g_factor ? *in.sigma_g_factor : psd_factor(sigma_g);

    MiReport rep;

    // communication side: power loaded on the channel eigenbasis
    const CMatrix& uh = *in.comm_basis;
    const CMatrix sigma_x = hermitian_part(uh * xi.cast<cdouble>().asDiagonal() * uh.adjoint());
    rep.rho1 = r_w1(sigma_x, sigma_g, d.n_x, in.noise_power);
    rep.comm_lower = comm_mi_lower(*in.real, sigma_x, rep.rho1, d.n_x);

    auto interference = [&](const CMatrix& x) {
        if (f.cols() == 0)
            return static_cast<double>(x.rows()) * std::log2(in.noise_power);
        return log2det_shifted_gram(x * f, in.noise_power);
    };
    double interference_log2det = 0.0;
    if (in.signal_draws == 0) {
        interference_log2det = interference(sqrt_signal_block(sigma_x, d));
    } else {
        for (std::size_t k = 0; k < in.signal_draws; ++k)
            interference_log2det += interference(gaussian_signal_block(sigma_x, d, *in.rng));
        interference_log2det /= static_cast<double>(in.signal_draws);
    }
    rep.comm_upper = comm_mi_upper_from_parts(rep.comm_lower, rep.rho1, interference_log2det, d);

    // sensing side: power loaded on the sensing-covariance eigenbasis
    const CMatrix& ug = *in.sense_basis;
    const CMatrix x_hat = xi.cwiseSqrt().cast<cdouble>().asDiagonal() * ug.adjoint();
    const CMatrix sigma_e_bar =
        in.sigma_e_bar.size() == 0 ? CMatrix(CMatrix::Zero(idx(d.n_t), idx(d.n_t))) : in.sigma_e_bar;
    rep.rho2 = r_w2(realized_sense_gram(*in.real), sigma_e_bar, d.n_r, in.noise_power);
    rep.sense_lower = sensing_mi_lower(x_hat, sigma_g, rep.rho2, d.n_r);
    rep.sense_upper = sensing_mi_upper_from_lower(rep.sense_lower, block_error_covariance(sigma_e_bar, d.n_c),
                                                  in.real->block_diag_sense(), rep.rho2, in.noise_power, d,
                                                  in.sensing_form);

    rep.modes.reserve(modes);
    for (std::size_t i = 0; i < modes; ++i) {
        ModeContribution m;
        m.lambda = in.lambdas[i];
        m.mu = in.mus[i];
        m.xi = in.xis[i];
        const auto bits = eigen_mi_pair(std::span(&in.lambdas[i], 1), std::span(&in.mus[i], 1),
                                        std::span(&in.xis[i], 1), in.sigma_n_prime_sq, in.noise_power, d.n_x, d.n_r);
        m.comm_bits = bits.first;
        m.sense_bits = bits.second;
        rep.modes.push_back(m);
    }
    return rep;
}

} // namespace isac

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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "isac/channel.hpp"
#include "isac/error.hpp"
#include "support.hpp"

#include <numbers>

using namespace isac;
using isac::test::max_abs;
using isac::test::random_complex;
using isac::test::rel_dev;

namespace {

// H(p) = sum_l H_l exp(-j 2 pi l p / n_c), summed directly.
CMatrix direct_dft(const std::vector<CMatrix>& taps, std::size_t n_c)
{
    const auto nt = taps.front().rows();
    CMatrix out = CMatrix::Zero(static_cast<Eigen::Index>(n_c) * nt, taps.front().cols());
    for (std::size_t p = 0; p < n_c; ++p)
        for (std::size_t l = 0; l < taps.size(); ++l) {
            const double ph = -2.0 * std::numbers::pi * static_cast<double>(l * p) / static_cast<double>(n_c);
            out.middleRows(static_cast<Eigen::Index>(p) * nt, nt) += std::polar(1.0, ph) * taps[l];
        }
    return out;
}

std::vector<CMatrix> random_taps(std::size_t n, Eigen::Index nt, Eigen::Index nr, Rng& rng)
{
    std::vector<CMatrix> taps;
    for (std::size_t l = 0; l < n; ++l)
        taps.push_back(random_complex(nt, nr, rng));
    return taps;
}

SystemConfig small_config(std::size_t n_t, std::size_t n_r, std::size_t n_c, std::size_t l, double rho)
{
    SystemConfig cfg;
    cfg.n_t = n_t;
    cfg.n_r = n_r;
    cfg.n_c = n_c;
    cfg.l_c = l;
    cfg.l_s = l;
    cfg.rho = rho;
    return cfg;
}

} // namespace

TEST_CASE("linalg: eigh sorts descending and psd_sqrt squares back")
{
    Rng rng(11, {1});
    const CMatrix a = test::random_psd(5, 3, rng);
    const HermitianEigen e = eigh_descending(a);
    for (Eigen::Index i = 1; i < e.values.size(); ++i)
        CHECK(e.values(i) <= e.values(i - 1));
    CHECK(max_abs(e.vectors * e.values.cast<cdouble>().asDiagonal() * e.vectors.adjoint() - a) < 1e-10);
    const CMatrix r = psd_sqrt(a);
    CHECK(max_abs(r * r - a) < 1e-10);
    CHECK_THROWS_AS(psd_sqrt(-CMatrix::Identity(2, 2)), NumericalError);
}

TEST_CASE("linalg: log-determinants")
{
    Rng rng(12, {1});
    const CMatrix a = test::random_psd(4, 4, rng) + CMatrix::Identity(4, 4);
    const double ref = std::log2(a.determinant().real());
    CHECK(log2det_hpd(a) == doctest::Approx(ref).epsilon(1e-12));
    CHECK_THROWS_AS(log2det_hpd(-CMatrix::Identity(3, 3)), NumericalError);

    for (auto [n, k] : {std::pair{6, 2}, std::pair{2, 6}, std::pair{4, 4}}) {
        const CMatrix b = random_complex(n, k, rng);
        const CMatrix big = 0.7 * CMatrix::Identity(n, n) + b * b.adjoint();
        CHECK(log2det_shifted_gram(b, 0.7) == doctest::Approx(std::log2(big.determinant().real())).epsilon(1e-10));
    }
}

TEST_CASE("build_exponential_correlation")
{
    CHECK(max_abs(build_exponential_correlation(2, 0.0) - CMatrix::Identity(2, 2)) == 0.0);
    CMatrix want(3, 3);
    want << 1, .5, .25, .5, 1, .5, .25, .5, 1;
    CHECK(max_abs(build_exponential_correlation(3, 0.5) - want) == 0.0);
    // positive definite for |rho| < 1
    CHECK(eigh_descending(build_exponential_correlation(4, 0.9)).values.minCoeff() > 0.0);
    CHECK_THROWS_AS(build_exponential_correlation(3, 1.0), ParameterError);
    CHECK_THROWS_AS(build_exponential_correlation(3, -0.1), ParameterError);
}

TEST_CASE("correlation model validation")
{
    CorrelationModel m = CorrelationModel::exponential(3, 2, 0.5);
    CHECK_NOTHROW(m.validate());
    m.path_powers[0] += 1e-9;
    CHECK_THROWS_AS(m.validate(), ParameterError);
    m = CorrelationModel::exponential(3, 2, 0.5);
    m.correlations[1](0, 0) = 2.0;
    CHECK_THROWS_AS(m.validate(), ParameterError);
}

TEST_CASE("build_omega")
{
    CHECK(max_abs(build_omega(1, 1, 0).matrix() - CMatrix::Ones(1, 1)) == 0.0);

    CMatrix two(2, 2);
    two << 1, 1, 1, -1;
    CHECK(max_abs(build_omega(2, 1, 1).matrix() - two) < 1e-15);

    const OmegaMatrix om = build_omega(4, 2, 2);
    for (std::size_t p = 0; p < 4; ++p)
        CHECK(max_abs(om.dft_row(p).cwiseAbs() - RVector::Ones(3).cast<cdouble>()) < 1e-15);
    Rng rng(13, {1});
    const auto taps = random_taps(3, 2, 3, rng);
    CHECK(max_abs(om.matrix() * stack_taps(taps) - direct_dft(taps, 4)) < 1e-12);
}

TEST_CASE("taps_to_frequency")
{
    Rng rng(14, {1});
    SUBCASE("flat channel")
    {
        const auto taps = random_taps(1, 3, 2, rng);
        const CMatrix f = taps_to_frequency(taps, build_omega(5, 3, 0));
        for (Eigen::Index p = 0; p < 5; ++p)
            CHECK(max_abs(f.middleRows(p * 3, 3) - taps[0]) == 0.0);
    }
    SUBCASE("zero taps")
    {
        const std::vector<CMatrix> taps(3, CMatrix::Zero(2, 2));
        CHECK(max_abs(taps_to_frequency(taps, build_omega(4, 2, 2))) == 0.0);
    }
    SUBCASE("random multipath matches the direct sum")
    {
        for (int k = 0; k < 20; ++k) {
            const auto taps = random_taps(2, 4, 4, rng);
            CHECK(max_abs(taps_to_frequency(taps, build_omega(8, 4, 1)) - direct_dft(taps, 8)) < 1e-12);
        }
    }
    CHECK_THROWS_AS(taps_to_frequency(random_taps(2, 2, 2, rng), build_omega(4, 2, 2)), ParameterError);
}

TEST_CASE("draw_taps: determinism, shapes, errors")
{
    const SystemConfig cfg = small_config(4, 4, 8, 3, 0.5);
    const ChannelModel model = ChannelModel::from_config(cfg);
    Rng a(5, {1, 2}), b(5, {1, 2}), c(5, {1, 3});
    const auto ra = draw_taps(cfg, model, a);
    const auto rb = draw_taps(cfg, model, b);
    const auto rc = draw_taps(cfg, model, c);
    CHECK(max_abs(ra.freq_comm - rb.freq_comm) == 0.0);
    CHECK(max_abs(ra.freq_sense - rb.freq_sense) == 0.0);
    CHECK(max_abs(ra.freq_sense - rc.freq_sense) > 0.0);
    CHECK(ra.comm_taps.size() == 4);
    CHECK(ra.freq_comm.rows() == 32);
    CHECK(ra.freq_comm.cols() == 4);
    CHECK(max_abs(ra.freq_comm - direct_dft(ra.comm_taps, 8)) < 1e-12);
    CHECK(max_abs(ra.freq_sense - direct_dft(ra.sense_taps, 8)) < 1e-12);
    CHECK(ra.block_diag_comm().rows() == 32);
    CHECK(ra.block_diag_comm().cols() == 32);

    ChannelModel wrong = model;
    wrong.sense = CorrelationModel::exponential(3, 3, 0.5);
    CHECK_THROWS_AS(draw_taps(cfg, wrong, a), ParameterError);
}

TEST_CASE("channel statistics against the Kronecker model")
{
    constexpr int draws = 100000;
    SUBCASE("white taps: vec(G_l) covariance is sigma_l^2 I")
    {
        const SystemConfig cfg = small_config(2, 2, 4, 1, 0.0);
        const ChannelGenerator gen(cfg, ChannelModel::from_config(cfg));
        CMatrix acc = CMatrix::Zero(4, 4);
        Rng rng(21, {1});
        for (int k = 0; k < draws; ++k) {
            const auto r = gen.draw(rng);
            const CVector v = r.sense_taps[0].reshaped();
            acc += v * v.adjoint();
        }
        CHECK(rel_dev(acc / draws, 0.5 * CMatrix::Identity(4, 4)) < 0.02);
    }
    SUBCASE("correlated taps: E[G_l G_l^H] / n_r = sigma_l^2 R")
    {
        const SystemConfig cfg = small_config(2, 3, 4, 1, 0.5);
        const ChannelModel model = ChannelModel::from_config(cfg);
        const ChannelGenerator gen(cfg, model);
        CMatrix acc0 = CMatrix::Zero(2, 2), acc1 = CMatrix::Zero(2, 2), cross = CMatrix::Zero(2, 2);
        Rng rng(22, {1});
        for (int k = 0; k < draws; ++k) {
            const auto r = gen.draw(rng);
            acc0 += r.sense_taps[0] * r.sense_taps[0].adjoint();
            acc1 += r.comm_taps[1] * r.comm_taps[1].adjoint();
            cross += r.sense_taps[0] * r.sense_taps[1].adjoint();
        }
        const CMatrix want = 0.5 * build_exponential_correlation(2, 0.5);
        CHECK(rel_dev(acc0 / (3.0 * draws), want) < 0.02);
        CHECK(rel_dev(acc1 / (3.0 * draws), want) < 0.02);
        // independent paths: normalized cross-covariance vanishes
        CHECK(max_abs(cross / (3.0 * draws)) / 0.5 < 0.02);
    }
}

TEST_CASE("build_sigma_g")
{
    SUBCASE("single subcarrier, single path, identity correlation")
    {
        CorrelationModel m = CorrelationModel::exponential(3, 0, 0.0);
        CHECK(max_abs(build_sigma_g(m, build_omega(1, 3, 0)) - CMatrix::Identity(3, 3)) < 1e-15);
    }
    const SystemConfig cfg = small_config(3, 2, 6, 2, 0.5);
    const ChannelModel model = ChannelModel::from_config(cfg);
    const OmegaMatrix om = build_omega(cfg.n_c, cfg.n_t, cfg.l_s);
    const CMatrix sg = build_sigma_g(model.sense, om);
    const CMatrix diag_block = expected_tap_gram(model.sense, 1);
    CHECK(hermitian_defect(sg) == 0.0);
    CHECK(eigh_descending(sg).values.minCoeff() > -1e-12);
    CHECK(sg.trace().real() == doctest::Approx(6.0 * 3.0).epsilon(1e-10));
    for (Eigen::Index p = 0; p < 6; ++p)
        for (Eigen::Index q = 0; q < 6; ++q) {
            CMatrix want = CMatrix::Zero(3, 3);
            for (std::size_t l = 0; l < 3; ++l) {
                const double ph = -2.0 * std::numbers::pi * static_cast<double>(l) * static_cast<double>(p - q) / 6.0;
                want += std::polar(model.sense.path_powers[l], ph) * model.sense.correlations[l];
            }
            CHECK(max_abs(sg.block(p * 3, q * 3, 3, 3) - want) < 1e-12);
            if (p == q)
                CHECK(max_abs(sg.block(p * 3, q * 3, 3, 3) - diag_block) < 1e-12);
        }

    SUBCASE("Monte Carlo average of the stacked frequency response")
    {
        const ChannelGenerator gen(cfg, model);
        CMatrix acc = CMatrix::Zero(18, 18);
        Rng rng(23, {1});
        constexpr int draws = 100000;
        for (int k = 0; k < draws; ++k) {
            const auto r = gen.draw(rng);
            acc += r.freq_sense * r.freq_sense.adjoint();
        }
        CHECK(rel_dev(acc / (2.0 * draws), sg) < 0.02);
    }
}

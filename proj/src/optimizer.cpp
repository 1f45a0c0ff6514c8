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

#include "isac/optimizer.hpp"

#include "isac/error.hpp"
#include "isac/mi.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace isac {

void EigenPairing::validate() const
{
    const std::size_t n = lambdas.size();
    if (mus.size() != n)
        throw ParameterError("EigenPairing: eigenvalue lists differ in length");
    if (!std::is_sorted(lambdas.rbegin(), lambdas.rend()) || !std::is_sorted(mus.rbegin(), mus.rend()))
        throw ParameterError("EigenPairing: eigenvalues must be sorted descending");
    for (std::size_t i = 0; i < n; ++i)
        if (lambdas[i] < 0.0 || mus[i] < 0.0)
            throw ParameterError("EigenPairing: negative eigenvalue");
}

namespace {

// Zeroes eigenvalues that are numerically indistinguishable from zero.
void clamp_small(std::vector<double>& v)
{
    double top = 0.0;
    for (double x : v)
        top = std::max(top, x);
    for (double& x : v)
        if (x <= kPsdClampTolerance * top)
            x = 0.0;
}

} // namespace

EigenPairing pair_eigenmodes(const ChannelRealization& real, const HermitianEigen& sigma_g_eig)
{
    const auto n_c = static_cast<Eigen::Index>(real.n_c);
    if (n_c == 0)
        throw ParameterError("pair_eigenmodes: empty realization");
    const Eigen::Index nt = real.freq_comm.rows() / n_c;
    const Eigen::Index n = n_c * nt;
    if (sigma_g_eig.values.size() != n)
        throw ParameterError("pair_eigenmodes: Sigma_G size does not match the channel");

    struct Mode {
        double value;
        Eigen::Index block;
        CVector vec;
    };
    std::vector<Mode> comm;
    comm.reserve(static_cast<std::size_t>(n));
    for (Eigen::Index p = 0; p < n_c; ++p) {
        const CMatrix hp = real.comm_at(static_cast<std::size_t>(p));
        const HermitianEigen e = eigh_descending(hp * hp.adjoint());
        for (Eigen::Index k = 0; k < nt; ++k)
            comm.push_back({e.values(k), p, e.vectors.col(k)});
    }
    std::stable_sort(comm.begin(), comm.end(), [](const Mode& a, const Mode& b) { return a.value > b.value; });

    EigenPairing out;
    out.basis_h = CMatrix::Zero(n, n);
    out.lambdas.reserve(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        const Mode& m = comm[static_cast<std::size_t>(i)];
        out.lambdas.push_back(std::max(m.value, 0.0));
        out.basis_h.block(m.block * nt, i, nt, 1) = m.vec;
    }
    out.mus.assign(sigma_g_eig.values.data(), sigma_g_eig.values.data() + n);
    for (double& m : out.mus)
        m = std::max(m, 0.0);
    out.basis_g = sigma_g_eig.vectors;
    clamp_small(out.lambdas);
    clamp_small(out.mus);
    return out;
}

EigenPairing pair_eigenmodes(const ChannelRealization& real, const CMatrix& sigma_g)
{
    return pair_eigenmodes(real, eigh_descending(sigma_g));
}

double PowerAllocation::total() const
{
    return std::accumulate(xis.begin(), xis.end(), 0.0);
}

// ---------- objective ----------

WeightedObjective WeightedObjective::make(double omega_r, const Normalizers& norms, const EigenPairing& pairing,
                                          double sigma_n_prime_sq, double noise_power, std::size_t n_x,
                                          std::size_t n_r)
{
    if (!(omega_r >= 0.0 && omega_r <= 1.0))
        throw ParameterError("WeightedObjective: omega_r must lie in [0, 1]");
    if (!(sigma_n_prime_sq > 0.0) || !(noise_power > 0.0))
        throw ParameterError("WeightedObjective: noise levels must be positive");
    WeightedObjective o;
    o.omega_r = omega_r;
    o.f_r = norms.f_r;
    o.f_c = norms.f_c;
    o.sigma_n_prime_sq = sigma_n_prime_sq;
    o.noise_power = noise_power;
    const double ln2 = std::numbers::ln2;
    o.epsilon = norms.f_r > 0.0 ? omega_r * static_cast<double>(n_r) / (norms.f_r * ln2) : 0.0;
    o.eta = norms.f_c > 0.0 ? (1.0 - omega_r) * static_cast<double>(n_x) / (norms.f_c * ln2) : 0.0;
    o.nu.reserve(pairing.size());
    o.phi.reserve(pairing.size());
    for (std::size_t i = 0; i < pairing.size(); ++i) {
        o.nu.push_back(pairing.lambdas[i] / sigma_n_prime_sq);
        o.phi.push_back(pairing.mus[i] / noise_power);
    }
    return o;
}

WeightedObjective WeightedObjective::from_weights(double epsilon, double eta, std::vector<double> nu,
                                                  std::vector<double> phi)
{
    if (nu.size() != phi.size())
        throw ParameterError("WeightedObjective: nu and phi differ in length");
    if (!(epsilon >= 0.0) || !(eta >= 0.0))
        throw ParameterError("WeightedObjective: weights must be nonnegative");
    WeightedObjective o;
    o.epsilon = epsilon;
    o.eta = eta;
    o.nu = std::move(nu);
    o.phi = std::move(phi);
    return o;
}

double WeightedObjective::value(std::span<const double> xis) const
{
    if (xis.size() != nu.size())
        throw ParameterError("WeightedObjective::value: allocation length mismatch");
    double v = 0.0;
    for (std::size_t i = 0; i < xis.size(); ++i)
        v += eta * std::log1p(nu[i] * xis[i]) + epsilon * std::log1p(phi[i] * xis[i]);
    return v;
}

double WeightedObjective::marginal(std::size_t i, double xi) const
{
    return eta * nu[i] / (1.0 + nu[i] * xi) + epsilon * phi[i] / (1.0 + phi[i] * xi);
}

double sigma_n_prime_sq(double budget, std::span<const double> mus, std::size_t n_x, double noise_power)
{
    if (n_x == 0)
        throw ParameterError("sigma_n_prime_sq: n_x must be >= 1");
    double total = 0.0;
    for (double m : mus) {
        if (m < 0.0)
            throw ParameterError("sigma_n_prime_sq: negative eigenvalue");
        total += m;
    }
    return budget * total / static_cast<double>(n_x) + noise_power;
}

double xi_closed_form(double nu, double phi, double epsilon, double eta, double alpha)
{
    if (!(alpha > 0.0))
        throw ParameterError("xi_closed_form: alpha must be positive");
    if (nu < 0.0 || phi < 0.0 || epsilon < 0.0 || eta < 0.0)
        throw ParameterError("xi_closed_form: inputs must be nonnegative");

    const bool comm_live = nu > 0.0 && eta > 0.0;
    const bool sense_live = phi > 0.0 && epsilon > 0.0;
    if (!comm_live && !sense_live)
        return 0.0;
    if (!sense_live)
        return std::max(0.0, eta / alpha - 1.0 / nu);
    if (!comm_live)
        return std::max(0.0, epsilon / alpha - 1.0 / phi);

    // xi^2 + B xi + C = 0 from eta/(a + xi) + eps/(b + xi) = alpha
    const double a = 1.0 / nu;
    const double b = 1.0 / phi;
    const double s = (epsilon + eta) / alpha;
    const double bq = a + b - s;
    const double cq = a * b - (eta * b + epsilon * a) / alpha;
    const double shifted = (a - b) + (epsilon - eta) / alpha;
    const double disc = std::sqrt(shifted * shifted + 4.0 * epsilon * eta / (alpha * alpha));
    // larger root, picking the form without cancellation
    const double root = bq <= 0.0 ? 0.5 * (disc - bq) : 2.0 * cq / (-bq - disc);
    return std::max(0.0, root);
}

double kkt_residual(const WeightedObjective& obj, std::span<const double> xis, double alpha)
{
    if (!(alpha > 0.0))
        throw ParameterError("kkt_residual: alpha must be positive");
    double worst = 0.0;
    for (std::size_t i = 0; i < xis.size(); ++i) {
        const double g = obj.marginal(i, xis[i]);
        const double r = xis[i] > 0.0 ? std::abs(g - alpha) / alpha : std::max(0.0, (g - alpha) / alpha);
        worst = std::max(worst, r);
    }
    return worst;
}

PowerAllocation solve_alpha(const WeightedObjective& obj, double budget, const SolveOptions& opts)
{
    if (!(budget > 0.0) || !std::isfinite(budget))
        throw ParameterError("solve_alpha: budget must be positive");
    const std::size_t n = obj.size();
    if (n == 0 || obj.phi.size() != n)
        throw ParameterError("solve_alpha: empty or inconsistent objective");

    double alpha_max = 0.0;  // above this every mode is switched off
    double alpha_lo = 0.0;   // marginal of the best mode holding the whole budget
    for (std::size_t i = 0; i < n; ++i) {
        alpha_max = std::max(alpha_max, obj.marginal(i, 0.0));
        alpha_lo = std::max(alpha_lo, obj.marginal(i, budget));
    }
    if (!(alpha_max > 0.0) || !std::isfinite(alpha_max))
        throw InfeasibleError("solve_alpha: no mode has a positive marginal gain");

    auto total = [&](double alpha) {
        double t = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            t += xi_closed_form(obj.nu[i], obj.phi[i], obj.epsilon, obj.eta, alpha);
        return t;
    };

    PowerAllocation out;
    out.budget = budget;

    double lo = alpha_lo > 0.0 ? alpha_lo : alpha_max;
    std::size_t expansions = 0;
    while (total(lo) < budget) {
        if (++expansions > opts.max_expansions)
            throw ConvergenceError("solve_alpha: multiplier bracket expansion did not converge");
        lo *= 0.5;
    }
    double hi = alpha_max;

    double best_alpha = lo;
    double best_err = std::abs(total(lo) - budget);
    std::size_t steps = 0;
    while (steps < opts.max_bisections && best_err > 0.0) {
        ++steps;
        const double mid = hi > 4.0 * lo ? std::sqrt(lo * hi) : 0.5 * (lo + hi);
        if (!(mid > lo && mid < hi))
            break;  // interval exhausted at double precision
        const double t = total(mid);
        const double err = std::abs(t - budget);
        if (err < best_err) {
            best_err = err;
            best_alpha = mid;
        }
        if (t >= budget)
            lo = mid;
        else
            hi = mid;
    }
    if (best_err > opts.budget_tolerance * budget)
        throw ConvergenceError("solve_alpha: bisection stopped with power mismatch " + std::to_string(best_err));

    out.alpha = best_alpha;
    out.iterations = expansions + steps;
    out.xis.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        out.xis[i] = xi_closed_form(obj.nu[i], obj.phi[i], obj.epsilon, obj.eta, best_alpha);
    out.objective = obj.value(out.xis);
    out.kkt_residual = kkt_residual(obj, out.xis, best_alpha);
    return out;
}

// ---------- schemes ----------

std::string_view scheme_name(Scheme s)
{
    switch (s) {
    case Scheme::isac:
        return "ISAC";
    case Scheme::opc:
        return "OPC";
    case Scheme::ops:
        return "OPS";
    case Scheme::ea:
        return "EA";
    case Scheme::ra:
        return "RA";
    }
    return "?";
}

Scheme parse_scheme(std::string_view name)
{
    std::string upper(name);
    for (char& c : upper)
        c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    for (Scheme s : {Scheme::isac, Scheme::opc, Scheme::ops, Scheme::ea, Scheme::ra})
        if (scheme_name(s) == upper)
            return s;
    throw ParameterError("unknown scheme '" + std::string(name) + "'");
}

Normalizers normalizers(const EigenPairing& pairing, const SystemConfig& cfg)
{
    pairing.validate();
    const double sp = sigma_n_prime_sq(cfg.budget, pairing.mus, cfg.n_x, cfg.noise_power);
    std::vector<double> nu, phi;
    for (std::size_t i = 0; i < pairing.size(); ++i) {
        nu.push_back(pairing.lambdas[i] / sp);
        phi.push_back(pairing.mus[i] / cfg.noise_power);
    }
    const bool any_comm = std::any_of(nu.begin(), nu.end(), [](double v) { return v > 0.0; });
    const bool any_sense = std::any_of(phi.begin(), phi.end(), [](double v) { return v > 0.0; });

    // The argmax of a single scaled term does not depend on its normalizer.
    Normalizers out;
    const double ln2 = std::numbers::ln2;
    if (any_comm) {
        const auto alloc = solve_alpha(
            WeightedObjective::from_weights(0.0, static_cast<double>(cfg.n_x) / ln2, nu, phi), cfg.budget);
        out.f_c = eigen_mi_pair(pairing.lambdas, pairing.mus, alloc.xis, sp, cfg.noise_power, cfg.n_x, cfg.n_r).first;
    }
    if (any_sense) {
        const auto alloc = solve_alpha(
            WeightedObjective::from_weights(static_cast<double>(cfg.n_r) / ln2, 0.0, nu, phi), cfg.budget);
        out.f_r =
            eigen_mi_pair(pairing.lambdas, pairing.mus, alloc.xis, sp, cfg.noise_power, cfg.n_x, cfg.n_r).second;
    }
    return out;
}

PowerAllocation optimize_waveform(const SystemConfig& cfg, const EigenPairing& pairing, double sigma_n_prime_sq,
                                  const Normalizers& norms, Scheme mode, double omega_r, Rng* rng)
{
    const auto objective_at = [&](double w) {
        return WeightedObjective::make(w, norms, pairing, sigma_n_prime_sq, cfg.noise_power, cfg.n_x, cfg.n_r);
    };
    const WeightedObjective reported = objective_at(omega_r);
    const std::size_t n = pairing.size();

    PowerAllocation out;
    switch (mode) {
    case Scheme::isac:
        return solve_alpha(reported, cfg.budget);
    case Scheme::opc:
        out = solve_alpha(objective_at(0.0), cfg.budget);
        break;
    case Scheme::ops:
        out = solve_alpha(objective_at(1.0), cfg.budget);
        break;
    case Scheme::ea:
        out.budget = cfg.budget;
        out.xis.assign(n, cfg.budget / static_cast<double>(n));
        break;
    case Scheme::ra: {
        if (!rng)
            throw ParameterError("optimize_waveform: random allocation needs an Rng");
        out.budget = cfg.budget;
        out.xis.resize(n);
        double sum = 0.0;
        for (double& x : out.xis) {
            x = rng->exponential();
            sum += x;
        }
        for (double& x : out.xis)
            x *= cfg.budget / sum;
        break;
    }
    }
    out.objective = reported.value(out.xis);
    return out;
}

WaveformProblem::WaveformProblem(const SystemConfig& cfg, EigenPairing pairing)
    : cfg_(cfg), pairing_(std::move(pairing))
{
    cfg_.validate();
    pairing_.validate();
    if (pairing_.size() != cfg_.n_c * cfg_.n_t)
        throw ParameterError("WaveformProblem: pairing size must be n_c*n_t");
    sigma_prime_sq_ = isac::sigma_n_prime_sq(cfg_.budget, pairing_.mus, cfg_.n_x, cfg_.noise_power);
    norms_ = isac::normalizers(pairing_, cfg_);
}

WeightedObjective WaveformProblem::objective(double omega_r) const
{
    return WeightedObjective::make(omega_r, norms_, pairing_, sigma_prime_sq_, cfg_.noise_power, cfg_.n_x,
                                   cfg_.n_r);
}

PowerAllocation WaveformProblem::solve(Scheme scheme, double omega_r, Rng* rng) const
{
    return optimize_waveform(cfg_, pairing_, sigma_prime_sq_, norms_, scheme, omega_r, rng);
}

std::pair<double, double> WaveformProblem::eigen_mi(std::span<const double> xis) const
{
    return eigen_mi_pair(pairing_.lambdas, pairing_.mus, xis, sigma_prime_sq_, cfg_.noise_power, cfg_.n_x,
                         cfg_.n_r);
}

} // namespace isac

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

#include "isac/oracle.hpp"

#include "isac/error.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <numeric>

namespace isac::oracle {

namespace {

double frank_wolfe_gap(const WeightedObjective& obj, const std::vector<double>& x)
{
    double gmax = -1.0;
    std::vector<double> g(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        g[i] = obj.marginal(i, x[i]);
        gmax = std::max(gmax, g[i]);
    }
    double gap = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        gap += x[i] * (gmax - g[i]);
    return gap;
}

} // namespace

SimplexResult maximize_on_simplex(const WeightedObjective& obj, double budget, double rel_gap,
                                  std::size_t max_iterations)
{
    const std::size_t n = obj.size();
    if (n == 0 || !(budget > 0.0))
        throw ParameterError("maximize_on_simplex: empty problem or nonpositive budget");

    SimplexResult r;
    r.xis.assign(n, budget / static_cast<double>(n));
    std::vector<double>& x = r.xis;

    for (; r.iterations < max_iterations; ++r.iterations) {
        std::size_t up = 0, down = n;
        double gup = -1.0, gdown = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double g = obj.marginal(i, x[i]);
            if (g > gup) {
                gup = g;
                up = i;
            }
            if (x[i] > 0.0 && (down == n || g < gdown)) {
                gdown = g;
                down = i;
            }
        }
        const double f = obj.value(x);
        r.gap_bound = frank_wolfe_gap(obj, x);
        if (r.gap_bound <= rel_gap * std::max(std::abs(f), 1e-300) || down == n || up == down || gup <= gdown)
            break;

        // d(t) = g_up(x_up + t) - g_down(x_down - t) decreases in t
        const double cap = x[down];
        auto slope = [&](double t) { return obj.marginal(up, x[up] + t) - obj.marginal(down, x[down] - t); };
        double t;
        if (slope(cap) >= 0.0) {
            t = cap;
        } else {
            double lo = 0.0, hi = cap;
            for (int k = 0; k < 200; ++k) {
                const double mid = 0.5 * (lo + hi);
                if (!(mid > lo && mid < hi))
                    break;
                (slope(mid) > 0.0 ? lo : hi) = mid;
            }
            t = 0.5 * (lo + hi);
        }
        if (t <= 0.0)
            break;
        x[up] += t;
        x[down] = t >= cap ? 0.0 : x[down] - t;
    }
    r.objective = obj.value(x);
    r.gap_bound = frank_wolfe_gap(obj, x);
    return r;
}

double stationary_xi_bisect(double nu, double phi, double epsilon, double eta, double alpha)
{
    if (!(alpha > 0.0))
        throw ParameterError("stationary_xi_bisect: alpha must be positive");
    auto g = [&](double xi) { return eta * nu / (1.0 + nu * xi) + epsilon * phi / (1.0 + phi * xi); };
    if (g(0.0) <= alpha)
        return 0.0;
    double lo = 0.0, hi = 1.0;
    while (g(hi) > alpha)
        hi *= 2.0;
    for (int k = 0; k < 2000; ++k) {
        const double mid = 0.5 * (lo + hi);
        if (!(mid > lo && mid < hi))
            break;
        (g(mid) > alpha ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

WeightedObjective random_objective(Rng& rng, std::size_t max_modes)
{
    auto log_uniform = [&](double lo_exp, double hi_exp) {
        return std::pow(10.0, lo_exp + (hi_exp - lo_exp) * rng.uniform());
    };
    for (;;) {
        const auto n = 1 + static_cast<std::size_t>(rng.uniform() * static_cast<double>(max_modes));
        std::vector<double> nu(n), phi(n);
        for (std::size_t i = 0; i < n; ++i) {
            nu[i] = rng.uniform() < 0.15 ? 0.0 : log_uniform(-2.0, 2.0);
            phi[i] = rng.uniform() < 0.15 ? 0.0 : log_uniform(-2.0, 2.0);
        }
        const double kind = rng.uniform();
        const double eps = kind < 0.1 ? 0.0 : 0.05 + 1.95 * rng.uniform();
        const double eta = kind >= 0.1 && kind < 0.2 ? 0.0 : 0.05 + 1.95 * rng.uniform();
        bool live = false;
        for (std::size_t i = 0; i < n; ++i)
            live = live || eta * nu[i] + eps * phi[i] > 0.0;
        if (live)
            return WeightedObjective::from_weights(eps, eta, std::move(nu), std::move(phi));
    }
}

double random_budget(Rng& rng)
{
    return std::pow(10.0, -1.0 + 3.0 * rng.uniform());
}

bool SelftestReport::passed() const
{
    return failures == 0 && max_objective_gap <= 1e-6 && max_kkt_residual < 1e-8 && max_budget_error <= 1e-9 &&
           max_root_residual <= 1e-10 && max_waterfill_error <= 1e-10;
}

std::string SelftestReport::summary() const
{
    char buf[640];
    std::snprintf(buf, sizeof buf,
                  "instances            %zu\n"
                  "max objective gap    %.3e  (limit 1e-06)\n"
                  "max kkt residual     %.3e  (limit 1e-08)\n"
                  "max budget error     %.3e  (limit 1e-09)\n"
                  "max root residual    %.3e  (limit 1e-10)\n"
                  "max waterfill error  %.3e  (limit 1e-10)\n"
                  "failures             %zu\n"
                  "seconds              %.2f\n"
                  "result               %s\n",
                  instances, max_objective_gap, max_kkt_residual, max_budget_error, max_root_residual,
                  max_waterfill_error, failures, seconds, passed() ? "PASS" : "FAIL");
    return buf;
}

SelftestReport run_selftest(std::size_t instances, std::uint64_t seed)
{
    const auto start = std::chrono::steady_clock::now();
    SelftestReport rep;
    rep.instances = instances;
    for (std::size_t k = 0; k < instances; ++k) {
        Rng rng(seed, {static_cast<std::uint64_t>(StreamTag::oracle), k});
        const WeightedObjective obj = random_objective(rng, 6);
        const double budget = random_budget(rng);
        bool ok = true;
        try {
            const PowerAllocation a = solve_alpha(obj, budget);
            const SimplexResult ref = maximize_on_simplex(obj, budget);
            const double gap = std::abs(ref.objective - a.objective) / std::max(std::abs(ref.objective), 1e-300);
            const double berr = std::abs(a.total() - budget) / budget;
            double root = 0.0;
            for (std::size_t i = 0; i < obj.size(); ++i) {
                const double b = stationary_xi_bisect(obj.nu[i], obj.phi[i], obj.epsilon, obj.eta, a.alpha);
                root = std::max(root, std::abs(a.xis[i] - b) / budget);
            }
            // one-term limits at a random multiplier
            double wf = 0.0;
            const double alpha = std::pow(10.0, -2.0 + 4.0 * rng.uniform());
            for (std::size_t i = 0; i < obj.size(); ++i) {
                if (obj.nu[i] > 0.0) {
                    const double want = std::max(0.0, obj.eta / alpha - 1.0 / obj.nu[i]);
                    const double got = xi_closed_form(obj.nu[i], obj.phi[i], 0.0, obj.eta, alpha);
                    wf = std::max(wf, std::abs(got - want) / std::max(1.0, want));
                }
                if (obj.phi[i] > 0.0) {
                    const double want = std::max(0.0, obj.epsilon / alpha - 1.0 / obj.phi[i]);
                    const double got = xi_closed_form(obj.nu[i], obj.phi[i], obj.epsilon, 0.0, alpha);
                    wf = std::max(wf, std::abs(got - want) / std::max(1.0, want));
                }
            }
            rep.max_objective_gap = std::max(rep.max_objective_gap, gap);
            rep.max_kkt_residual = std::max(rep.max_kkt_residual, a.kkt_residual);
            rep.max_budget_error = std::max(rep.max_budget_error, berr);
            rep.max_root_residual = std::max(rep.max_root_residual, root);
            rep.max_waterfill_error = std::max(rep.max_waterfill_error, wf);
            ok = gap <= 1e-6 && a.kkt_residual < 1e-8 && berr <= 1e-9 && root <= 1e-10 && wf <= 1e-10;
        } catch (const std::exception&) {
            ok = false;
        }
        if (!ok)
            ++rep.failures;
    }
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

// ---------- scalar entropy check ----------

namespace {

double log_bessel_i0(double z)
{
    if (z < 700.0)
        return std::log(std::cyl_bessel_i(0.0, z));
    return z - 0.5 * std::log(2.0 * std::numbers::pi * z) + std::log1p(1.0 / (8.0 * z));
}

} // namespace

double scalar_log_density(const ScalarLink& link, double y_abs)
{
    // |x|^2 = p t^2 with t^2 ~ Exp(1); the phase of x is integrated analytically.
    constexpr int intervals = 2000;
    const double t_max = std::sqrt(50.0);
    const double step = t_max / intervals;
    const double h_abs = std::sqrt(link.h_abs2);
    std::vector<double> logs(intervals + 1);
    double top = -INFINITY;
    for (int k = 0; k <= intervals; ++k) {
        const double t = k * step;
        if (k == 0) {
            logs[k] = -INFINITY;  // the 2t Jacobian vanishes
            continue;
        }
        const double v = link.p * t * t * link.s + link.sigma2;
        const double z = 2.0 * std::sqrt(link.p) * t * h_abs * y_abs / v;
        logs[k] = std::log(2.0 * t) - t * t - std::log(std::numbers::pi * v) -
                  (y_abs * y_abs + link.p * t * t * link.h_abs2) / v + log_bessel_i0(z);
        top = std::max(top, logs[k]);
    }
    double sum = 0.0;
    for (int k = 0; k <= intervals; ++k) {
        const double w = (k == 0 || k == intervals) ? 1.0 : (k % 2 ? 4.0 : 2.0);
        sum += w * std::exp(logs[k] - top);
    }
    return top + std::log(sum * step / 3.0);
}

MonteCarloMi scalar_mi_monte_carlo(const ScalarLink& link, std::size_t samples, Rng& rng)
{
    if (samples < 2)
        throw ParameterError("scalar_mi_monte_carlo: need at least two samples");
    const double h = std::sqrt(link.h_abs2);
    std::vector<double> y_abs(samples), cond(samples);
    double y_max = 0.0;
    for (std::size_t k = 0; k < samples; ++k) {
        const auto x = rng.complex_normal(link.p);
        const auto g = rng.complex_normal(link.s);
        const auto w = rng.complex_normal(link.sigma2);
        const auto y = x * h + x * g + w;
        const double v = std::norm(x) * link.s + link.sigma2;
        cond[k] = -std::log(std::numbers::pi * v) - std::norm(y - x * h) / v;
        y_abs[k] = std::abs(y);
        y_max = std::max(y_max, y_abs[k]);
    }

    // log p(y) depends on |y| only: tabulate and interpolate
    constexpr std::size_t nodes = 8192;
    const double dy = y_max / static_cast<double>(nodes - 1);
    std::vector<double> table(nodes);
    for (std::size_t j = 0; j < nodes; ++j)
        table[j] = scalar_log_density(link, static_cast<double>(j) * dy);

    double mean = 0.0, m2 = 0.0;
    for (std::size_t k = 0; k < samples; ++k) {
        const double pos = dy > 0.0 ? y_abs[k] / dy : 0.0;
        const auto j = std::min(static_cast<std::size_t>(pos), nodes - 2);
        const double frac = pos - static_cast<double>(j);
        const double marg = table[j] + frac * (table[j + 1] - table[j]);
        const double bits = (cond[k] - marg) / std::numbers::ln2;
        const double d = bits - mean;
        mean += d / static_cast<double>(k + 1);
        m2 += d * (bits - mean);
    }
    MonteCarloMi out;
    out.mean = mean;
    out.samples = samples;
    out.stderr_ = std::sqrt(m2 / static_cast<double>(samples - 1) / static_cast<double>(samples));
    return out;
}

double expected_log2_interference(const ScalarLink& link)
{
    if (link.s <= 0.0 || link.p <= 0.0)
        return std::log2(link.sigma2);
    const double c = link.sigma2 / (link.p * link.s);
    const double e1 = -std::expint(-c);
    return (std::log(link.sigma2) + std::exp(c) * e1) / std::numbers::ln2;
}

} // namespace isac::oracle

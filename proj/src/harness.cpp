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

#include "isac/harness.hpp"

#include "isac/error.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>
#include <tuple>

namespace isac {

void ExperimentSpec::validate() const
{
    base.validate();
    if (trials == 0)
        throw ParameterError("trials must be >= 1");
    if (snr_grid_db.empty() || omega_grid.empty() || schemes.empty())
        throw ParameterError("snr grid, omega grid and scheme list must be nonempty");
    for (double s : snr_grid_db)
        if (!std::isfinite(s))
            throw ParameterError("snr values must be finite");
    for (double w : omega_grid)
        if (!(w >= 0.0 && w <= 1.0))
            throw ParameterError("omega values must lie in [0, 1]");
    auto unique = [](auto v) {
        std::sort(v.begin(), v.end());
        return std::adjacent_find(v.begin(), v.end()) == v.end();
    };
    if (!unique(snr_grid_db) || !unique(omega_grid) || !unique(schemes))
        throw ParameterError("grids and scheme list must not repeat entries");
    if (threads == 0)
        throw ParameterError("threads must be >= 1");
}

double noise_power_for_snr(const SystemConfig& cfg, double snr_db)
{
    const double per_use = cfg.budget / static_cast<double>(cfg.n_x * cfg.n_c * cfg.n_t);
    return per_use / std::pow(10.0, snr_db / 10.0);
}

bool SweepRow::excluded() const
{
    return static_cast<double>(failures) > 0.01 * static_cast<double>(trials);
}

const SweepRow& SweepResult::find(Scheme s, double snr_db, double omega_r) const
{
    for (const SweepRow& r : rows)
        if (r.scheme == s && r.snr_db == snr_db && r.omega_r == omega_r)
            return r;
    throw ParameterError("no row for " + std::string(scheme_name(s)) + " at the requested point");
}

std::size_t SweepResult::excluded_rows() const
{
    return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const SweepRow& r) {
        return r.excluded();
    }));
}

namespace {

// Per-configuration quantities shared by every trial.
struct Context {
    const ExperimentSpec& spec;
    ChannelGenerator gen;
    CMatrix sigma_g;
    HermitianEigen sigma_g_eig;
    CMatrix sigma_g_factor;
    CMatrix sigma_e_bar;

    explicit Context(const ExperimentSpec& s)
        : spec(s), gen(s.base, ChannelModel::from_config(s.base))
    {
        sigma_g = build_sigma_g(gen.model().sense, gen.sense_omega());
        sigma_g_eig = eigh_descending(sigma_g);
        sigma_g_factor = psd_factor(sigma_g);
        const auto nt = static_cast<Eigen::Index>(s.base.n_t);
        sigma_e_bar = s.base.demod_error * CMatrix::Identity(nt, nt);
    }

    ChannelRealization draw(std::size_t trial) const
    {
        Rng rng(spec.base.seed, {static_cast<std::uint64_t>(StreamTag::channel), trial});
        return gen.draw(rng);
    }

    MiReport bounds(const ChannelRealization& real, const WaveformProblem& prob, const PowerAllocation& alloc,
                    Rng* signal_rng) const
    {
        BoundInputs in;
        in.real = &real;
        in.sigma_g = &sigma_g;
        in.sigma_g_factor = &sigma_g_factor;
        in.comm_basis = &prob.pairing().basis_h;
        in.sense_basis = &prob.pairing().basis_g;
        in.lambdas = prob.pairing().lambdas;
        in.mus = prob.pairing().mus;
        in.xis = alloc.xis;
        in.sigma_e_bar = sigma_e_bar;
        in.noise_power = prob.config().noise_power;
        in.sigma_n_prime_sq = prob.sigma_n_prime_sq();
        in.dims = MiDims::from(prob.config());
        in.signal_draws = spec.signal_draws;
        in.rng = signal_rng;
        in.sensing_form = spec.sensing_form;
        return evaluate_bounds(in);
    }
};

bool all_finite(const TrialValues& v)
{
    for (double x : {v.spec_eff, v.sense_rate, v.weighted_mi, v.comm_low, v.comm_high, v.sense_low, v.sense_high,
                     v.alpha})
        if (!std::isfinite(x))
            return false;
    return true;
}

// Cells of one trial in row order: snr, scheme, omega.
std::vector<TrialValues> run_trial(const Context& ctx, std::size_t trial)
{
    const ExperimentSpec& spec = ctx.spec;
    const std::size_t n_omega = spec.omega_grid.size();
    const std::size_t per_snr = spec.schemes.size() * n_omega;
    std::vector<TrialValues> cells(spec.snr_grid_db.size() * per_snr);
    for (TrialValues& c : cells)
        c.failed = true;

    ChannelRealization real;
    EigenPairing pairing;
    try {
        real = ctx.draw(trial);
        pairing = pair_eigenmodes(real, ctx.sigma_g_eig);
    } catch (const std::exception&) {
        return cells;
    }
    const double uses = static_cast<double>(spec.base.n_x * spec.base.n_c);

    for (std::size_t k = 0; k < spec.snr_grid_db.size(); ++k) {
        SystemConfig cfg = spec.base;
        cfg.noise_power = noise_power_for_snr(cfg, spec.snr_grid_db[k]);
        std::optional<WaveformProblem> prob;
        try {
            prob.emplace(cfg, pairing);
        } catch (const std::exception&) {
            continue;
        }

        for (std::size_t s = 0; s < spec.schemes.size(); ++s) {
            const Scheme scheme = spec.schemes[s];
            TrialValues* row = &cells[k * per_snr + s * n_omega];

            auto fill = [&](TrialValues& out, const PowerAllocation& alloc, std::uint64_t slot) {
                std::optional<Rng> sig;
                if (spec.signal_draws > 0)
                    sig.emplace(cfg.seed, std::initializer_list<std::uint64_t>{
                                              static_cast<std::uint64_t>(StreamTag::signal), trial, k, s, slot});
                const MiReport rep = ctx.bounds(real, *prob, alloc, sig ? &*sig : nullptr);
                const auto [comm, sense] = prob->eigen_mi(alloc.xis);
                out.spec_eff = comm / uses;
                out.sense_rate = sense / uses;
                out.comm_low = rep.comm_lower / uses;
                out.comm_high = rep.comm_upper / uses;
                out.sense_low = rep.sense_lower / uses;
                out.sense_high = rep.sense_upper / uses;
                out.alpha = alloc.alpha;
                out.iterations = static_cast<double>(alloc.iterations);
            };

            if (scheme == Scheme::isac) {
                for (std::size_t w = 0; w < n_omega; ++w) {
                    try {
                        const PowerAllocation alloc = prob->solve(scheme, spec.omega_grid[w]);
                        fill(row[w], alloc, w);
                        row[w].weighted_mi = alloc.objective;
                        row[w].failed = !all_finite(row[w]);
                    } catch (const std::exception&) {
                        row[w].failed = true;
                    }
                }
                continue;
            }

            // baseline allocations do not depend on the weight
            try {
                Rng ra(cfg.seed, {static_cast<std::uint64_t>(StreamTag::random_allocation), trial});
                const PowerAllocation alloc = prob->solve(scheme, spec.omega_grid.front(), &ra);
                TrialValues base;
                fill(base, alloc, 0);
                for (std::size_t w = 0; w < n_omega; ++w) {
                    row[w] = base;
                    row[w].weighted_mi = prob->objective(spec.omega_grid[w]).value(alloc.xis);
                    row[w].failed = !all_finite(row[w]);
                }
            } catch (const std::exception&) {
                for (std::size_t w = 0; w < n_omega; ++w)
                    row[w].failed = true;
            }
        }
    }
    return cells;
}

struct Accumulator {
    std::size_t ok = 0;
    std::size_t failed = 0;
    double mean_se = 0.0, m2_se = 0.0;   // spectral efficiency, Welford
    double mean_sr = 0.0, m2_sr = 0.0;   // sensing rate, Welford
    double sum_w = 0.0, sum_cl = 0.0, sum_ch = 0.0, sum_sl = 0.0, sum_sh = 0.0, sum_a = 0.0, sum_it = 0.0;
    std::vector<TrialValues> kept;

    void add(const TrialValues& v, bool keep)
    {
        if (keep)
            kept.push_back(v);
        if (v.failed) {
            ++failed;
            return;
        }
        ++ok;
        const double n = static_cast<double>(ok);
        double d = v.spec_eff - mean_se;
        mean_se += d / n;
        m2_se += d * (v.spec_eff - mean_se);
        d = v.sense_rate - mean_sr;
        mean_sr += d / n;
        m2_sr += d * (v.sense_rate - mean_sr);
        sum_w += v.weighted_mi;
        sum_cl += v.comm_low;
        sum_ch += v.comm_high;
        sum_sl += v.sense_low;
        sum_sh += v.sense_high;
        sum_a += v.alpha;
        sum_it += v.iterations;
    }
};

SweepRow finish(const Accumulator& acc, Scheme scheme, double snr, double omega, std::size_t trials)
{
    SweepRow r;
    r.scheme = scheme;
    r.snr_db = snr;
    r.omega_r = omega;
    r.trials = trials;
    r.failures = acc.failed;
    r.per_trial = acc.kept;
    if (r.excluded() || acc.ok == 0) {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        r.spec_eff = r.spec_eff_se = r.sense_rate = r.sense_rate_se = r.weighted_mi = nan;
        r.comm_low = r.comm_high = r.sense_low = r.sense_high = r.alpha_mean = r.iterations_mean = nan;
        return r;
    }
    const double n = static_cast<double>(acc.ok);
    auto se = [&](double m2) { return acc.ok > 1 ? std::sqrt(m2 / (n - 1.0) / n) : 0.0; };
    r.spec_eff = acc.mean_se;
    r.spec_eff_se = se(acc.m2_se);
    r.sense_rate = acc.mean_sr;
    r.sense_rate_se = se(acc.m2_sr);
    r.weighted_mi = acc.sum_w / n;
    r.comm_low = acc.sum_cl / n;
    r.comm_high = acc.sum_ch / n;
    r.sense_low = acc.sum_sl / n;
    r.sense_high = acc.sum_sh / n;
    r.alpha_mean = acc.sum_a / n;
    r.iterations_mean = acc.sum_it / n;
    return r;
}

} // namespace

SweepResult run_sweep(const ExperimentSpec& spec)
{
    spec.validate();
    const Context ctx(spec);
    const std::size_t n_omega = spec.omega_grid.size();
    const std::size_t per_snr = spec.schemes.size() * n_omega;
    const std::size_t n_cells = spec.snr_grid_db.size() * per_snr;
    std::vector<Accumulator> acc(n_cells);

    // Trials run in parallel chunks and are folded in trial order.
    constexpr std::size_t chunk = 256;
    std::vector<std::vector<TrialValues>> results;
    for (std::size_t first = 0; first < spec.trials; first += chunk) {
        const std::size_t count = std::min(chunk, spec.trials - first);
        results.assign(count, {});
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (std::size_t i; (i = next.fetch_add(1)) < count;)
                results[i] = run_trial(ctx, first + i);
        };
        const std::size_t workers = std::min(spec.threads, count);
        if (workers <= 1) {
            worker();
        } else {
            std::vector<std::jthread> pool;
            for (std::size_t t = 0; t < workers; ++t)
                pool.emplace_back(worker);
        }
        for (const auto& cells : results)
            for (std::size_t c = 0; c < n_cells; ++c)
                acc[c].add(cells[c], spec.keep_trials);
    }

    SweepResult out;
    out.rows.reserve(n_cells);
    for (std::size_t k = 0; k < spec.snr_grid_db.size(); ++k)
        for (std::size_t s = 0; s < spec.schemes.size(); ++s)
            for (std::size_t w = 0; w < n_omega; ++w)
                out.rows.push_back(finish(acc[k * per_snr + s * n_omega + w], spec.schemes[s], spec.snr_grid_db[k],
                                          spec.omega_grid[w], spec.trials));
    return out;
}

SweepResult tradeoff_curve(const ExperimentSpec& spec)
{
    const auto& g = spec.omega_grid;
    if (g.size() < 3 || std::find(g.begin(), g.end(), 0.0) == g.end() || std::find(g.begin(), g.end(), 1.0) == g.end())
        throw ParameterError("trade-off curve needs at least three weights including 0 and 1");
    if (std::find(spec.schemes.begin(), spec.schemes.end(), Scheme::isac) == spec.schemes.end())
        throw ParameterError("trade-off curve needs the ISAC scheme");
    ExperimentSpec sorted = spec;
    std::sort(sorted.omega_grid.begin(), sorted.omega_grid.end());
    return run_sweep(sorted);
}

SweepResult weighted_mi_sweep(const ExperimentSpec& spec)
{
    if (std::find(spec.schemes.begin(), spec.schemes.end(), Scheme::isac) == spec.schemes.end())
        throw ParameterError("weighted MI sweep needs the ISAC scheme");
    return run_sweep(spec);
}

InstanceSummary solve_instance(const ExperimentSpec& spec, double snr_db, std::size_t trial)
{
    spec.validate();
    const Context ctx(spec);
    const ChannelRealization real = ctx.draw(trial);
    SystemConfig cfg = spec.base;
    cfg.noise_power = noise_power_for_snr(cfg, snr_db);
    const WaveformProblem prob(cfg, pair_eigenmodes(real, ctx.sigma_g_eig));

    InstanceSummary out;
    out.snr_db = snr_db;
    out.noise_power = cfg.noise_power;
    out.sigma_n_prime_sq = prob.sigma_n_prime_sq();
    out.normalizers = prob.normalizers();
    out.pairing = prob.pairing();
    for (std::size_t s = 0; s < spec.schemes.size(); ++s) {
        InstanceResult r;
        r.scheme = spec.schemes[s];
        Rng ra(cfg.seed, {static_cast<std::uint64_t>(StreamTag::random_allocation), trial});
        r.allocation = prob.solve(r.scheme, cfg.omega_r, &ra);
        std::optional<Rng> sig;
        if (spec.signal_draws > 0)
            sig.emplace(cfg.seed, std::initializer_list<std::uint64_t>{static_cast<std::uint64_t>(StreamTag::signal),
                                                                       trial, 0, s, 0});
        r.report = ctx.bounds(real, prob, r.allocation, sig ? &*sig : nullptr);
        std::tie(r.comm_bits, r.sense_bits) = prob.eigen_mi(r.allocation.xis);
        out.results.push_back(std::move(r));
    }
    return out;
}

// ---------- CSV ----------

std::string format_double(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

void write_csv(std::ostream& out, const SweepResult& result, const std::vector<std::string>& preamble)
{
    for (const std::string& line : preamble)
        out << line << '\n';
    out << kCsvHeader << '\n';
    for (const SweepRow& r : result.rows) {
        out << scheme_name(r.scheme) << ',' << format_double(r.snr_db) << ',' << format_double(r.omega_r) << ','
            << r.trials;
        for (double v : {r.spec_eff, r.spec_eff_se, r.sense_rate, r.sense_rate_se, r.weighted_mi, r.comm_low,
                         r.comm_high, r.sense_low, r.sense_high, r.alpha_mean})
            out << ',' << format_double(v);
        out << ',' << r.failures << '\n';
    }
}

namespace {

double parse_field(const std::string& s, std::size_t line)
{
    const char* begin = s.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (s.empty() || end != begin + s.size())
        throw ParameterError("csv line " + std::to_string(line) + ": bad number '" + s + "'");
    return v;
}

std::size_t parse_count(const std::string& s, std::size_t line)
{
    const double v = parse_field(s, line);
    if (!(v >= 0.0) || v != std::floor(v))
        throw ParameterError("csv line " + std::to_string(line) + ": bad count '" + s + "'");
    return static_cast<std::size_t>(v);
}

} // namespace

CsvTable read_csv(std::istream& in)
{
    CsvTable t;
    std::string line;
    std::size_t lineno = 0;
    bool header = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            throw ParameterError("csv line " + std::to_string(lineno) + ": CR line ending");
        if (line.empty())
            continue;
        if (line.front() == '#') {
            if (header)
                throw ParameterError("csv line " + std::to_string(lineno) + ": comment after header");
            t.comments.push_back(line);
            continue;
        }
        if (!header) {
            if (line != kCsvHeader)
                throw ParameterError("csv header does not match the expected schema");
            header = true;
            continue;
        }
        std::vector<std::string> f;
        std::stringstream ss(line);
        for (std::string cell; std::getline(ss, cell, ',');)
            f.push_back(cell);
        if (f.size() != 15)
            throw ParameterError("csv line " + std::to_string(lineno) + ": expected 15 fields");
        SweepRow r;
        r.scheme = parse_scheme(f[0]);
        r.snr_db = parse_field(f[1], lineno);
        r.omega_r = parse_field(f[2], lineno);
        r.trials = parse_count(f[3], lineno);
        double* dst[] = {&r.spec_eff, &r.spec_eff_se, &r.sense_rate, &r.sense_rate_se, &r.weighted_mi,
                         &r.comm_low, &r.comm_high, &r.sense_low, &r.sense_high, &r.alpha_mean};
        for (std::size_t i = 0; i < 10; ++i)
            *dst[i] = parse_field(f[4 + i], lineno);
        r.failures = parse_count(f[14], lineno);
        t.rows.push_back(std::move(r));
    }
    if (!header)
        throw ParameterError("csv has no header row");
    return t;
}

} // namespace isac

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

#ifndef ISAC_HARNESS_HPP
#define ISAC_HARNESS_HPP

// Monte Carlo sweeps over SNR, sensing weight and allocation scheme.
//
// SNR is the per-use transmit SNR: sigma_n^2 = (E / (n_x n_c n_t)) / 10^(snr/10).
// Every reported MI is divided by n_x n_c channel uses. Trials share one
// channel draw across all schemes, SNR points and weights.

#include "isac/channel.hpp"
#include "isac/mi.hpp"
#include "isac/optimizer.hpp"

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace isac {

struct ExperimentSpec {
    SystemConfig base;
    std::vector<double> snr_grid_db{-5.0, 0.0, 5.0, 10.0, 15.0};
    std::vector<double> omega_grid{0.5};
    std::size_t trials = 200;
    std::vector<Scheme> schemes{Scheme::isac, Scheme::opc, Scheme::ops, Scheme::ea, Scheme::ra};
    std::size_t signal_draws = 0;  // see BoundInputs::signal_draws
    SensingCorrection sensing_form = SensingCorrection::matched;
    std::size_t threads = 1;
    bool keep_trials = false;      // retain per-trial values in each row

    void validate() const;  // throws ParameterError
};

double noise_power_for_snr(const SystemConfig& cfg, double snr_db);

// Per-trial values of one (scheme, snr, omega) cell, per channel use.
struct TrialValues {
    double spec_eff = 0.0;
    double sense_rate = 0.0;
    double weighted_mi = 0.0;
    double comm_low = 0.0;
    double comm_high = 0.0;
    double sense_low = 0.0;
    double sense_high = 0.0;
    double alpha = 0.0;
    double iterations = 0.0;
    bool failed = false;
};

struct SweepRow {
    Scheme scheme = Scheme::isac;
    double snr_db = 0.0;
    double omega_r = 0.0;
    std::size_t trials = 0;
    double spec_eff = 0.0;
    double spec_eff_se = 0.0;
    double sense_rate = 0.0;
    double sense_rate_se = 0.0;
    double weighted_mi = 0.0;
    double comm_low = 0.0;
    double comm_high = 0.0;
    double sense_low = 0.0;
    double sense_high = 0.0;
    double alpha_mean = 0.0;
    double iterations_mean = 0.0;
    std::size_t failures = 0;
    std::vector<TrialValues> per_trial;  // filled when keep_trials

    // More than 1% of trials failed; the averages are NaN.
    bool excluded() const;
};

struct SweepResult {
    std::vector<SweepRow> rows;  // ordered snr, then scheme, then omega

    const SweepRow& find(Scheme s, double snr_db, double omega_r) const;  // throws ParameterError
    std::size_t excluded_rows() const;
};

SweepResult run_sweep(const ExperimentSpec& spec);

// Needs a grid with at least three weights including 0 and 1.
SweepResult tradeoff_curve(const ExperimentSpec& spec);

// Needs ISAC among the schemes.
SweepResult weighted_mi_sweep(const ExperimentSpec& spec);

// One channel instance at one SNR, every scheme solved at omega_r.
struct InstanceResult {
    Scheme scheme = Scheme::isac;
    PowerAllocation allocation;
    MiReport report;
    double comm_bits = 0.0;   // eigen-domain forms
    double sense_bits = 0.0;
};

struct InstanceSummary {
    double snr_db = 0.0;
    double noise_power = 0.0;
    double sigma_n_prime_sq = 0.0;
    Normalizers normalizers;
    EigenPairing pairing;
    std::vector<InstanceResult> results;
};

InstanceSummary solve_instance(const ExperimentSpec& spec, double snr_db, std::size_t trial = 0);

// ---------- CSV ----------

inline constexpr const char* kCsvHeader =
    "scheme,snr_db,omega_r,trials,spec_eff,spec_eff_se,sense_rate,sense_rate_se,weighted_mi,"
    "comm_low,comm_high,sense_low,sense_high,alpha_mean,failures";

// Writes `preamble` lines verbatim, then the header and one line per row.
void write_csv(std::ostream& out, const SweepResult& result, const std::vector<std::string>& preamble = {});

struct CsvTable {
    std::vector<std::string> comments;  // lines starting with '#', without the newline
    std::vector<SweepRow> rows;         // per_trial and iterations_mean are not stored in CSV
};

// Parses a file written by write_csv. Throws ParameterError on schema mismatch.
CsvTable read_csv(std::istream& in);

std::string format_double(double v);  // %.15g, "nan" / "inf" / "-inf"

} // namespace isac

#endif

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

#include "isac/cli.hpp"

#include "isac/error.hpp"
#include "isac/oracle.hpp"

#include <CLI11.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>

namespace isac::cli {

namespace {

std::string trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(" \t");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(std::string_view s)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const auto comma = s.find(',', start);
        out.push_back(trim(s.substr(start, comma == std::string_view::npos ? s.npos : comma - start)));
        if (comma == std::string_view::npos)
            break;
        start = comma + 1;
    }
    if (out.size() == 1 && out.front().empty())
        out.clear();
    for (const auto& item : out)
        if (item.empty())
            throw ParameterError("empty entry in list '" + std::string(s) + "'");
    return out;
}

std::uint64_t parse_count(const std::string& s, std::string_view key)
{
    std::uint64_t v = 0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size() || s.empty())
        throw ParameterError("'" + std::string(key) + "' expects a nonnegative integer, got '" + s + "'");
    return v;
}

double parse_real(const std::string& s, std::string_view key)
{
    double v = 0.0;
    const char* first = s.data();
    if (!s.empty() && s.front() == '+')
        ++first;
    const auto [p, ec] = std::from_chars(first, s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size() || s.empty() || !std::isfinite(v))
        throw ParameterError("'" + std::string(key) + "' expects a finite number, got '" + s + "'");
    return v;
}

std::string real_text(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string join(const std::vector<std::string>& items)
{
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i)
        out += (i ? ", " : "") + items[i];
    return out;
}

struct Field {
    std::string_view section;
    std::string_view key;
    std::function<void(ExperimentSpec&, const std::string&)> set;
    std::function<std::string(const ExperimentSpec&)> get;
};

template <class T>
Field count_field(std::string_view section, std::string_view key, T SystemConfig::*member)
{
    return {section, key,
            [=](ExperimentSpec& s, const std::string& v) { s.base.*member = static_cast<T>(parse_count(v, key)); },
            [=](const ExperimentSpec& s) { return std::to_string(s.base.*member); }};
}

Field real_field(std::string_view key, double SystemConfig::*member)
{
    return {"system", key, [=](ExperimentSpec& s, const std::string& v) { s.base.*member = parse_real(v, key); },
            [=](const ExperimentSpec& s) { return real_text(s.base.*member); }};
}

Field real_list_field(std::string_view key, std::vector<double> ExperimentSpec::*member)
{
    return {"experiment", key,
            [=](ExperimentSpec& s, const std::string& v) {
                std::vector<double> out;
                for (const auto& item : split_list(v))
                    out.push_back(parse_real(item, key));
                s.*member = std::move(out);
            },
            [=](const ExperimentSpec& s) {
                std::vector<std::string> items;
                for (double x : s.*member)
                    items.push_back(real_text(x));
                return join(items);
            }};
}

const std::vector<Field>& fields()
{
    static const std::vector<Field> table = {
        count_field("system", "n_t", &SystemConfig::n_t),
        count_field("system", "n_r", &SystemConfig::n_r),
        count_field("system", "n_c", &SystemConfig::n_c),
        count_field("system", "n_x", &SystemConfig::n_x),
        count_field("system", "l_c", &SystemConfig::l_c),
        count_field("system", "l_s", &SystemConfig::l_s),
        real_field("budget", &SystemConfig::budget),
        real_field("omega_r", &SystemConfig::omega_r),
        real_field("rho", &SystemConfig::rho),
        real_field("demod_error", &SystemConfig::demod_error),
        count_field("system", "seed", &SystemConfig::seed),
        real_list_field("snr_db", &ExperimentSpec::snr_grid_db),
        real_list_field("omega_grid", &ExperimentSpec::omega_grid),
        {"experiment", "trials",
         [](ExperimentSpec& s, const std::string& v) { s.trials = parse_count(v, "trials"); },
         [](const ExperimentSpec& s) { return std::to_string(s.trials); }},
        {"experiment", "schemes",
         [](ExperimentSpec& s, const std::string& v) {
             std::vector<Scheme> out;
             for (const auto& item : split_list(v))
                 out.push_back(parse_scheme(item));
             s.schemes = std::move(out);
         },
         [](const ExperimentSpec& s) {
             std::vector<std::string> items;
             for (Scheme x : s.schemes)
                 items.emplace_back(scheme_name(x));
             return join(items);
         }},
        {"experiment", "signal_draws",
         [](ExperimentSpec& s, const std::string& v) { s.signal_draws = parse_count(v, "signal_draws"); },
         [](const ExperimentSpec& s) { return std::to_string(s.signal_draws); }},
        {"experiment", "sensing_form",
         [](ExperimentSpec& s, const std::string& v) {
             if (v == "matched")
                 s.sensing_form = SensingCorrection::matched;
             else if (v == "unit")
                 s.sensing_form = SensingCorrection::unit;
             else
                 throw ParameterError("'sensing_form' expects 'matched' or 'unit', got '" + v + "'");
         },
         [](const ExperimentSpec& s) {
             return std::string(s.sensing_form == SensingCorrection::matched ? "matched" : "unit");
         }},
    };
    return table;
}

const Field& lookup(std::string_view section, std::string_view key)
{
    for (const Field& f : fields())
        if (f.key == key && (section.empty() || f.section == section))
            return f;
    if (section.empty())
        throw ParameterError("unknown key '" + std::string(key) + "'");
    throw ParameterError("unknown key '" + std::string(section) + "." + std::string(key) + "'");
}

// Keeps only the echoed config lines of a CSV, or returns the text as is.
std::string config_lines(std::string_view text)
{
    std::istringstream in{std::string(text)};
    std::string line, echoed;
    bool found = false;
    while (std::getline(in, line)) {
        if (line.rfind("#! ", 0) == 0) {
            echoed += line.substr(3) + '\n';
            found = true;
        }
    }
    return found ? echoed : std::string(text);
}

std::vector<std::string> csv_preamble(const ExperimentSpec& spec, std::string_view subcommand)
{
    std::vector<std::string> lines;
    std::istringstream in(config_text(spec));
    for (std::string line; std::getline(in, line);)
        lines.push_back("#! " + line);
    lines.push_back("# isacmi " + std::string(subcommand));
    lines.push_back("# snr_db: 10*log10(E/(n_x*n_c*n_t)/noise_power), per-use transmit SNR");
    lines.push_back("# spec_eff, sense_rate, comm_low, comm_high, sense_low, sense_high: bits per channel use, "
                    "n_x*n_c uses per block");
    lines.push_back("# spec_eff, sense_rate: eigen-domain forms; *_se: standard error of the trial mean");
    lines.push_back("# weighted_mi: normalized weighted objective; alpha_mean: mean multiplier, 0 for EA and RA");
    return lines;
}

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void write_output(const std::string& path, const std::string& body, std::ostream& out)
{
    if (path.empty()) {
        out << body;
        return;
    }
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f)
        throw std::runtime_error("cannot open '" + path + "' for writing");
    f << body;
    if (!f.flush())
        throw std::runtime_error("write to '" + path + "' failed");
}

std::string single_report(const ExperimentSpec& spec, const InstanceSummary& s)
{
    std::ostringstream o;
    for (const auto& line : csv_preamble(spec, "single"))
        if (line.rfind("#! ", 0) == 0)
            o << line << '\n';
    o << "# isacmi single: trial 0 channel, bits per block unless noted\n";
    o << "snr_db " << format_double(s.snr_db) << '\n';
    o << "noise_power " << format_double(s.noise_power) << '\n';
    o << "sigma_n_prime_sq " << format_double(s.sigma_n_prime_sq) << '\n';
    o << "f_c " << format_double(s.normalizers.f_c) << '\n';
    o << "f_r " << format_double(s.normalizers.f_r) << '\n';
    o << "lambda";
    for (double v : s.pairing.lambdas)
        o << ' ' << format_double(v);
    o << "\nmu";
    for (double v : s.pairing.mus)
        o << ' ' << format_double(v);
    o << '\n';
    for (const InstanceResult& r : s.results) {
        o << "\nscheme " << scheme_name(r.scheme) << " omega_r " << format_double(spec.base.omega_r) << '\n';
        o << "  alpha " << format_double(r.allocation.alpha) << '\n';
        o << "  kkt_residual " << format_double(r.allocation.kkt_residual) << '\n';
        o << "  iterations " << r.allocation.iterations << '\n';
        o << "  power " << format_double(r.allocation.total()) << '\n';
        o << "  weighted_mi " << format_double(r.allocation.objective) << '\n';
        o << "  comm_bits " << format_double(r.comm_bits) << '\n';
        o << "  sense_bits " << format_double(r.sense_bits) << '\n';
        o << "  comm_low " << format_double(r.report.comm_lower) << '\n';
        o << "  comm_high " << format_double(r.report.comm_upper) << '\n';
        o << "  sense_low " << format_double(r.report.sense_lower) << '\n';
        o << "  sense_high " << format_double(r.report.sense_upper) << '\n';
        o << "  rho1 " << format_double(r.report.rho1) << '\n';
        o << "  rho2 " << format_double(r.report.rho2) << '\n';
        o << "  xi";
        for (double v : r.allocation.xis)
            o << ' ' << format_double(v);
        o << '\n';
    }
    return o.str();
}

// Oracle equivalence plus bound ordering on a few channel draws.
std::pair<std::string, bool> selftest_report(const ExperimentSpec& spec)
{
    const oracle::SelftestReport rep = oracle::run_selftest(1000, spec.base.seed);
    std::ostringstream o;
    o << "# isacmi selftest, seed " << spec.base.seed << '\n';
    o << "[allocation vs brute-force maximizer]\n" << rep.summary();

    ExperimentSpec small = spec;
    small.trials = 1;
    double worst = 0.0;
    const std::size_t draws = 20;
    for (std::size_t t = 0; t < draws; ++t) {
        for (double snr : small.snr_grid_db) {
            const InstanceSummary s = solve_instance(small, snr, t);
            for (const auto& r : s.results) {
                worst = std::max(worst, r.report.comm_lower - r.report.comm_upper);
                worst = std::max(worst, r.report.sense_lower - r.report.sense_upper);
            }
        }
    }
    const bool order_ok = worst <= 1e-9;
    char buf[160];
    std::snprintf(buf, sizeof buf, "[bound ordering, %zu channel draws]\nmax lower - upper    %.3e  (limit 1e-09)\n",
                  draws, worst);
    o << buf << "result               " << (order_ok ? "PASS" : "FAIL") << '\n';
    return {o.str(), rep.passed() && order_ok};
}

std::string summary_table(const SweepResult& r)
{
    std::ostringstream o;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%-6s %8s %8s %12s %12s %12s %8s\n", "scheme", "snr_db", "omega", "spec_eff",
                  "sense_rate", "weighted", "failed");
    o << buf;
    for (const SweepRow& row : r.rows) {
        std::snprintf(buf, sizeof buf, "%-6s %8.3g %8.3g %12.6g %12.6g %12.6g %8zu\n",
                      std::string(scheme_name(row.scheme)).c_str(), row.snr_db, row.omega_r, row.spec_eff,
                      row.sense_rate, row.weighted_mi, row.failures);
        o << buf;
    }
    return o.str();
}

int run(const CliConfig& cfg, std::ostream& out, std::ostream& err)
{
    ExperimentSpec spec;
    try {
        spec = resolve_spec(cfg);
        spec.validate();
    } catch (const ParameterError& e) {
        throw UsageError(e.what());
    }
    if (cfg.verbosity > 0)
        err << "isac: " << cfg.subcommand << ", " << spec.trials << " trials, " << spec.snr_grid_db.size()
            << " snr points, " << spec.omega_grid.size() << " weights, " << spec.threads << " threads\n";

    if (cfg.subcommand == "selftest") {
        const auto [text, ok] = selftest_report(spec);
        write_output(cfg.out_path, text, out);
        if (!cfg.out_path.empty())
            out << text;
        if (!ok) {
            err << "error: runtime: selftest failed\n";
            return 1;
        }
        return 0;
    }
    if (cfg.subcommand == "single") {
        write_output(cfg.out_path, single_report(spec, solve_instance(spec, spec.snr_grid_db.front())), out);
        return 0;
    }

    SweepResult result;
    if (cfg.subcommand == "tradeoff")
        result = tradeoff_curve(spec);
    else if (cfg.subcommand == "sweep-omega")
        result = weighted_mi_sweep(spec);
    else
        result = run_sweep(spec);

    std::ostringstream csv;
    write_csv(csv, result, csv_preamble(spec, cfg.subcommand));
    write_output(cfg.out_path, csv.str(), out);
    if (!cfg.out_path.empty())
        out << summary_table(result);
    if (const std::size_t bad = result.excluded_rows(); bad > 0) {
        err << "error: runtime: " << bad << " of " << result.rows.size()
            << " rows exceeded the 1% trial failure limit\n";
        return 1;
    }
    return 0;
}

} // namespace

ExperimentSpec default_spec(std::string_view subcommand)
{
    ExperimentSpec s;
    const std::vector<double> dense{0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
    if (subcommand == "sweep-omega") {
        s.snr_grid_db = {1.0};
        s.omega_grid = dense;
    } else if (subcommand == "tradeoff") {
        s.snr_grid_db = {-5.0, 1.0, 5.0, 10.0};
        s.omega_grid = dense;
        s.schemes = {Scheme::isac, Scheme::opc, Scheme::ops};
    } else if (subcommand == "single") {
        s.snr_grid_db = {1.0};
    } else if (subcommand == "selftest") {
        s.snr_grid_db = {-5.0, 5.0, 15.0};
    }
    return s;
}

void apply_config_text(ExperimentSpec& spec, std::string_view text)
{
    namespace pt = boost::property_tree;
    pt::ptree tree;
    try {
        std::istringstream in(config_lines(text));
        pt::ini_parser::read_ini(in, tree);
    } catch (const pt::ptree_error& e) {
        throw ParameterError(std::string("config: ") + e.what());
    }
    bool versioned = false;
    for (const auto& [name, node] : tree) {
        if (name == "format" && node.empty()) {
            if (node.data() != kConfigFormat)
                throw ParameterError("config: unsupported format '" + node.data() + "', expected " +
                                     std::string(kConfigFormat));
            versioned = true;
            continue;
        }
        if (name != "system" && name != "experiment")
            throw ParameterError("config: unknown section or key '" + name + "'");
        if (!node.data().empty())
            throw ParameterError("config: '" + name + "' is a section, not a key");
        for (const auto& [key, leaf] : node)
            lookup(name, key).set(spec, leaf.data());
    }
    if (!versioned)
        throw ParameterError("config: missing 'format = " + std::string(kConfigFormat) + "'");
}

void apply_override(ExperimentSpec& spec, std::string_view key_value)
{
    const auto eq = key_value.find('=');
    if (eq == std::string_view::npos)
        throw ParameterError("--set expects KEY=VALUE, got '" + std::string(key_value) + "'");
    const std::string key = trim(key_value.substr(0, eq));
    const std::string value = trim(key_value.substr(eq + 1));
    const auto dot = key.find('.');
    if (dot == std::string::npos)
        lookup("", key).set(spec, value);
    else
        lookup(key.substr(0, dot), key.substr(dot + 1)).set(spec, value);
}

void apply_paper_scale(ExperimentSpec& spec)
{
    spec.base.n_c = 32;
    spec.base.budget = static_cast<double>(spec.base.n_x * spec.base.n_c * spec.base.n_t);
    spec.trials = 4000;
}

std::string config_text(const ExperimentSpec& spec)
{
    std::string out = "format = " + std::string(kConfigFormat) + "\n";
    std::string_view section;
    for (const Field& f : fields()) {
        if (f.section != section) {
            section = f.section;
            out += "[" + std::string(section) + "]\n";
        }
        out += std::string(f.key) + " = " + f.get(spec) + "\n";
    }
    return out;
}

ExperimentSpec resolve_spec(const CliConfig& cfg)
{
    ExperimentSpec spec = default_spec(cfg.subcommand);
    if (!cfg.config_file.empty()) {
        std::ifstream f(cfg.config_file, std::ios::binary);
        if (!f)
            throw ParameterError("cannot read config '" + cfg.config_file + "'");
        std::ostringstream text;
        text << f.rdbuf();
        apply_config_text(spec, text.str());
    }
    if (cfg.paper_scale)
        apply_paper_scale(spec);
    for (const auto& kv : cfg.overrides)
        apply_override(spec, kv);
    if (cfg.seed)
        spec.base.seed = *cfg.seed;
    spec.threads = cfg.threads > 0 ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
    return spec;
}

int parse_and_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Uplink MIMO-OFDM sensing/communication MI metrics and waveform optimizer", "isac"};
    app.require_subcommand(1, 1);
    CliConfig cfg;
    const std::vector<std::pair<const char*, const char*>> commands = {
        {"sweep-snr", "spectral efficiency and sensing rate versus SNR"},
        {"sweep-omega", "weighted MI versus sensing weight"},
        {"tradeoff", "communication/sensing trade-off curve"},
        {"single", "one channel instance: allocations, bounds, KKT residuals"},
        {"selftest", "compare the allocator against brute-force references"},
    };
    for (const auto& [name, help] : commands) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("--config", cfg.config_file, "config file or a CSV written by this tool");
        sub->add_option("--set", cfg.overrides, "override KEY=VALUE (repeatable)");
        sub->add_option("--out", cfg.out_path, "output file (default stdout)");
        sub->add_option("--seed", cfg.seed, "RNG seed");
        sub->add_flag("--paper-scale", cfg.paper_scale, "n_c = 32 and 4000 trials");
        sub->add_option("--threads", cfg.threads, "worker threads, 0 = all cores");
        sub->add_flag("-v,--verbose", cfg.verbosity, "progress on stderr");
        sub->callback([&cfg, n = std::string(name)] { cfg.subcommand = n; });
    }
    cfg.threads = 0;

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        std::string msg = e.what();
        std::replace(msg.begin(), msg.end(), '\n', ' ');
        err << "error: usage: " << msg << '\n';
        return 2;
    }

    try {
        return run(cfg, out, err);
    } catch (const UsageError& e) {
        err << "error: usage: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: runtime: " << e.what() << '\n';
        return 1;
    }
}

} // namespace isac::cli

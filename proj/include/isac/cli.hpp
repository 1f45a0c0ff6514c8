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

#ifndef ISAC_CLI_HPP
#define ISAC_CLI_HPP

// Command-line front end.
//
// Config files use a small INI dialect, versioned by a top-level format key:
//
//   format = isacmi-config/1
//   [system]
//   n_t = 4
//   [experiment]
//   snr_db = -5, 0, 5
//
// Lists are comma separated. '#' and ';' start comment lines. A CSV written by
// the tool echoes its full config on lines prefixed with "#! "; when such lines
// are present only they are read, so a CSV can be passed back as --config.

#include "isac/harness.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace isac::cli {

inline constexpr std::string_view kConfigFormat = "isacmi-config/1";

struct CliConfig {
    std::string subcommand;
    std::string config_file;
    std::vector<std::string> overrides;  // KEY=VALUE, KEY may be section.key
    std::string out_path;
    std::optional<std::uint64_t> seed;
    bool paper_scale = false;
    std::size_t threads = 1;
    int verbosity = 0;
};

// Built-in experiment for a subcommand before any config is applied.
ExperimentSpec default_spec(std::string_view subcommand);

// All of these throw ParameterError on unknown keys or malformed values.
void apply_config_text(ExperimentSpec& spec, std::string_view text);
void apply_override(ExperimentSpec& spec, std::string_view key_value);
void apply_paper_scale(ExperimentSpec& spec);

// Canonical config text; parsing it back gives the same spec bit for bit.
std::string config_text(const ExperimentSpec& spec);

// Defaults, then config file, paper scale, overrides, seed and threads.
ExperimentSpec resolve_spec(const CliConfig& cfg);

// Runs the tool. Exit codes: 0 success, 1 runtime failure, 2 usage error.
int parse_and_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace isac::cli

#endif

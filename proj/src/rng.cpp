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

#include "isac/rng.hpp"

#include <cmath>
#include <vector>

namespace isac {

namespace {

std::mt19937_64 seeded_engine(std::uint64_t seed, std::initializer_list<std::uint64_t> ids)
{
    std::vector<std::uint32_t> words;
    words.reserve(2 * (ids.size() + 1) + 1);
    auto push = [&words](std::uint64_t v) {
        words.push_back(static_cast<std::uint32_t>(v & 0xffffffffu));
        words.push_back(static_cast<std::uint32_t>(v >> 32));
    };
    push(seed);
    for (auto id : ids)
        push(id);
    // length word keeps {a} and {a, 0} distinct
    words.push_back(static_cast<std::uint32_t>(ids.size()));
    std::seed_seq seq(words.begin(), words.end());
    return std::mt19937_64(seq);
}

} // namespace

Rng::Rng(std::uint64_t seed, std::initializer_list<std::uint64_t> stream_ids)
    : engine_(seeded_engine(seed, stream_ids))
{
}

double Rng::uniform()
{
    return uniform_(engine_);
}

double Rng::standard_normal()
{
    return normal_(engine_);
}

std::complex<double> Rng::complex_normal(double variance)
{
    const double s = std::sqrt(variance / 2.0);
    const double re = normal_(engine_);
    const double im = normal_(engine_);
    return {s * re, s * im};
}

double Rng::exponential()
{
    return exponential_(engine_);
}

} // namespace isac

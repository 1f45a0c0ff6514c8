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

#ifndef ISAC_RNG_HPP
#define ISAC_RNG_HPP

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace isac {

/// Random source for channel and signal draws.
///
/// A stream is identified by the base seed plus a list of stream ids (trial
/// index, SNR index, purpose tag, ...). Two Rng objects built from the same
/// seed and ids produce the same sequence, independent of how many other
/// streams exist or which thread consumes them.
class Rng {
  public:
    explicit Rng(std::uint64_t seed, std::initializer_list<std::uint64_t> stream_ids = {});

    double uniform();                               // U[0, 1)
    double standard_normal();                       // N(0, 1)
    std::complex<double> complex_normal(double variance);  // CN(0, variance)
    double exponential();                           // Exp(1)

    std::mt19937_64& engine() { return engine_; }

  private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
    std::uniform_real_distribution<double> uniform_{0.0, 1.0};
    std::exponential_distribution<double> exponential_{1.0};
};

// Stream-id tags so the channel, random-allocation and signal draws of one
// trial never share a sequence.
enum class StreamTag : std::uint64_t { channel = 1, random_allocation = 2, signal = 3, oracle = 4 };

} // namespace isac

#endif

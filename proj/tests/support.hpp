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

#ifndef ISAC_TESTS_SUPPORT_HPP
#define ISAC_TESTS_SUPPORT_HPP

#include "isac/linalg.hpp"
#include "isac/rng.hpp"

#include <algorithm>
#include <cmath>

namespace isac::test {

inline CMatrix random_complex(Eigen::Index rows, Eigen::Index cols, Rng& rng, double variance = 1.0)
{
    CMatrix m(rows, cols);
    for (Eigen::Index c = 0; c < cols; ++c)
        for (Eigen::Index r = 0; r < rows; ++r)
            m(r, c) = rng.complex_normal(variance);
    return m;
}

// Random PSD matrix of the given rank.
inline CMatrix random_psd(Eigen::Index n, Eigen::Index rank, Rng& rng)
{
    const CMatrix b = random_complex(n, rank, rng);
    return hermitian_part(b * b.adjoint());
}

inline double max_abs(const CMatrix& m)
{
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

// max |a - truth| relative to the largest entry of truth
inline double rel_dev(const CMatrix& a, const CMatrix& truth)
{
    return max_abs(a - truth) / std::max(max_abs(truth), 1e-300);
}

} // namespace isac::test

#endif

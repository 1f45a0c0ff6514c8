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

#ifndef ISAC_LINALG_HPP
#define ISAC_LINALG_HPP

#include <Eigen/Dense>

#include <complex>
#include <vector>

namespace isac {

using cdouble = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

// Eigenvalues below this (relative to the largest magnitude) are treated as zero
// when clamping a numerically PSD matrix.
inline constexpr double kPsdClampTolerance = 1e-12;

struct HermitianEigen {
    RVector values;   // descending
    CMatrix vectors;  // column i pairs with values(i)
};

// (A + A^H) / 2
CMatrix hermitian_part(const CMatrix& a);

// Eigendecomposition of the Hermitian part of `a`, sorted descending.
HermitianEigen eigh_descending(const CMatrix& a);

// Principal square root of a PSD matrix. Eigenvalues in [-tol*scale, 0) are
// clamped to zero; anything more negative throws NumericalError.
CMatrix psd_sqrt(const CMatrix& a, double tol = kPsdClampTolerance);

// log2 det(A) for Hermitian positive definite A. Symmetrizes first, tries a
// Cholesky factorization and falls back to an eigenvalue sum. Throws
// NumericalError when A is not positive definite.
double log2det_hpd(const CMatrix& a);

// log2 det(shift * I_n + B B^H) for an n-by-k matrix B, evaluated on the
// smaller of the two Gram sides (Sylvester's identity).
double log2det_shifted_gram(const CMatrix& b, double shift);

CMatrix block_diagonal(const std::vector<CMatrix>& blocks);

// max |a_ij - a_ji^*|
double hermitian_defect(const CMatrix& a);

} // namespace isac

#endif

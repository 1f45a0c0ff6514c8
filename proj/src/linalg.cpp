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

#include "isac/linalg.hpp"

#include "isac/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace isac {

CMatrix hermitian_part(const CMatrix& a)
{
    if (a.rows() != a.cols())
        throw ParameterError("hermitian_part: matrix is not square");
    return (a + a.adjoint()) * 0.5;
}

HermitianEigen eigh_descending(const CMatrix& a)
{
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(hermitian_part(a));
    if (solver.info() != Eigen::Success)
        throw NumericalError("eigh_descending: eigensolver did not converge");

    // Eigen returns ascending order
    const Eigen::Index n = a.rows();
    HermitianEigen out;
    out.values.resize(n);
    out.vectors.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        out.values(i) = solver.eigenvalues()(n - 1 - i);
        out.vectors.col(i) = solver.eigenvectors().col(n - 1 - i);
    }
    return out;
}

CMatrix psd_sqrt(const CMatrix& a, double tol)
{
    const HermitianEigen eig = eigh_descending(a);
    const double scale = std::max(1.0, eig.values.cwiseAbs().maxCoeff());
    RVector root(eig.values.size());
    for (Eigen::Index i = 0; i < root.size(); ++i) {
        double v = eig.values(i);
        if (v < -tol * scale)
            throw NumericalError("psd_sqrt: matrix has eigenvalue " + std::to_string(v));
        root(i) = std::sqrt(std::max(v, 0.0));
    }
    return eig.vectors * root.asDiagonal() * eig.vectors.adjoint();
}

double log2det_hpd(const CMatrix& a)
{
    const CMatrix h = hermitian_part(a);
    Eigen::LLT<CMatrix> llt(h);
    if (llt.info() == Eigen::Success) {
        double acc = 0.0;
        for (Eigen::Index i = 0; i < h.rows(); ++i)
            acc += std::log2(llt.matrixL()(i, i).real());
        return 2.0 * acc;
    }

    // Cholesky can fail on matrices that are positive definite but badly scaled.
    const HermitianEigen eig = eigh_descending(h);
    double acc = 0.0;
    for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
        if (!(eig.values(i) > 0.0))
            throw NumericalError("log2det_hpd: matrix is not positive definite");
        acc += std::log2(eig.values(i));
    }
    return acc;
}

double log2det_shifted_gram(const CMatrix& b, double shift)
{
    if (!(shift > 0.0))
        throw ParameterError("log2det_shifted_gram: shift must be positive");
    const Eigen::Index n = b.rows();
    const Eigen::Index k = b.cols();
    if (k < n) {
        CMatrix small = b.adjoint() * b;
        small.diagonal().array() += shift;
        return static_cast<double>(n - k) * std::log2(shift) + log2det_hpd(small);
    }
    CMatrix big = b * b.adjoint();
    big.diagonal().array() += shift;
    return log2det_hpd(big);
}

CMatrix block_diagonal(const std::vector<CMatrix>& blocks)
{
    Eigen::Index rows = 0, cols = 0;
    for (const auto& blk : blocks) {
        rows += blk.rows();
        cols += blk.cols();
    }
    CMatrix out = CMatrix::Zero(rows, cols);
    Eigen::Index r = 0, c = 0;
    for (const auto& blk : blocks) {
        out.block(r, c, blk.rows(), blk.cols()) = blk;
        r += blk.rows();
        c += blk.cols();
    }
    return out;
}

double hermitian_defect(const CMatrix& a)
{
    if (a.rows() != a.cols())
        return INFINITY;
    return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

} // namespace isac

// Copyright 2026 The qtele authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file linalg.hpp
 * Small dense Hermitian-matrix utilities shared by the tomography and noise
 * modules: hermitization, PSD projection, matrix square root and Uhlmann
 * fidelity. All eigen-decompositions delegate to Eigen's self-adjoint solver.
 */
#pragma once

#include <Eigen/Dense>
#include <cmath>

#include "qtele/common.hpp"

namespace qtele {

using Matrix2c = Eigen::Matrix2cd;
using Matrix4c = Eigen::Matrix4cd;
using MatrixXc = Eigen::MatrixXcd;

inline bool is_hermitian(const MatrixXc &m, double tol) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

inline MatrixXc hermitize(const MatrixXc &m) { return 0.5 * (m + m.adjoint()); }

/// Clips negative eigenvalues of a Hermitian matrix to zero. Does not
/// renormalize; callers decide whether to rescale the trace afterwards.
/// If `clipped_weight` is given, receives the total weight removed.
inline MatrixXc psd_project(const MatrixXc &herm, double *clipped_weight = nullptr) {
    Eigen::SelfAdjointEigenSolver<MatrixXc> es(herm);
    if (es.info() != Eigen::Success) {
        throw InvariantViolation("psd_project: eigendecomposition failed");
    }
    Eigen::VectorXd vals = es.eigenvalues();
    double removed = 0.0;
    for (Eigen::Index i = 0; i < vals.size(); ++i) {
        if (vals(i) < 0.0) {
            removed -= vals(i);
            vals(i) = 0.0;
        }
    }
    if (clipped_weight != nullptr) {
        *clipped_weight = removed;
    }
    return es.eigenvectors() * vals.asDiagonal().toDenseMatrix().cast<cdouble>() *
           es.eigenvectors().adjoint();
}

/// Principal square root of a Hermitian PSD matrix. Eigenvalues below zero
/// by rounding noise are clipped; genuinely negative ones are an error.
inline MatrixXc sqrtm_psd(const MatrixXc &herm, double tol = 1e-8) {
    Eigen::SelfAdjointEigenSolver<MatrixXc> es(herm);
    if (es.info() != Eigen::Success) {
        throw InvariantViolation("sqrtm_psd: eigendecomposition failed");
    }
    Eigen::VectorXd vals = es.eigenvalues();
    for (Eigen::Index i = 0; i < vals.size(); ++i) {
        if (vals(i) < -tol) {
            throw InvariantViolation("sqrtm_psd: matrix has a negative eigenvalue");
        }
        vals(i) = std::sqrt(std::max(vals(i), 0.0));
    }
    return es.eigenvectors() * vals.asDiagonal().toDenseMatrix().cast<cdouble>() *
           es.eigenvectors().adjoint();
}

/// Uhlmann fidelity F(a, b) = tr sqrt( sqrt(a) b sqrt(a) ) for unit-trace
/// Hermitian PSD matrices. Symmetric in its arguments; returns a value in
/// [0, 1] (clamped against rounding noise).
inline double uhlmann_fidelity(const MatrixXc &a, const MatrixXc &b, double tol = 1e-8) {
    if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
        throw std::invalid_argument("uhlmann_fidelity: dimension mismatch");
    }
    if (!is_hermitian(a, tol) || !is_hermitian(b, tol)) {
        throw std::invalid_argument("uhlmann_fidelity: inputs must be Hermitian");
    }
    if (std::abs(a.trace().real() - 1.0) > tol || std::abs(b.trace().real() - 1.0) > tol) {
        throw std::invalid_argument("uhlmann_fidelity: inputs must have unit trace");
    }
    const MatrixXc ra = sqrtm_psd(a, tol);
    const MatrixXc inner = ra * b * ra;
    const MatrixXc root = sqrtm_psd(hermitize(inner), tol);
    const double f = root.trace().real();
    if (f < -tol || f > 1.0 + tol) {
        throw InvariantViolation("uhlmann_fidelity: value outside [0, 1]");
    }
    return std::clamp(f, 0.0, 1.0);
}

} // namespace qtele

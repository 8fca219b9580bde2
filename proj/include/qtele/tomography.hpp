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
 * @file tomography.hpp
 * Single-qubit state and process tomography.
 *
 * Process matrices are expressed in the operator basis
 *     M1 = I, M2 = X, M3 = -iY, M4 = Z,
 * in which a channel acts as E(rho) = sum_{mn} chi_mn M_m rho M_n^dag.
 * The ideal teleportation channel is chi = e11 (all weight on I).
 *
 * Reconstruction from the four canonical inputs |0>, |1>, |+>, |R> uses the
 * standard block identity: with E_ij the image of |i><j|,
 *     chi = L [[E_00, E_01], [E_10, E_11]] L,   L = (1/2) [[I, X], [X, -I]],
 * followed by hermitization, eigenvalue clipping to the PSD cone and trace
 * normalization so estimates from finite counts remain physical.
 */
#pragma once

#include <array>
#include <cmath>

#include "qtele/common.hpp"
#include "qtele/linalg.hpp"
#include "qtele/sim.hpp"

namespace qtele {

/// Classical bound on process fidelity: a channel that can be simulated by
/// measuring and re-preparing classical information never exceeds this.
inline constexpr double kClassicalProcessFidelity = 0.683;
/// The same bound expressed as an average state fidelity.
inline constexpr double kClassicalAvgStateFidelity = 0.789;

/// Validated single-qubit density matrix: Hermitian, unit trace, PSD.
class DensityMatrix1Q {
  public:
    explicit DensityMatrix1Q(const Matrix2c &m, double tol = 1e-9) : m_(m) {
        if (!is_hermitian(m_, tol)) {
            throw InvariantViolation("DensityMatrix1Q: not Hermitian");
        }
        if (std::abs(m_.trace().real() - 1.0) > tol) {
            throw InvariantViolation("DensityMatrix1Q: trace != 1");
        }
        Eigen::SelfAdjointEigenSolver<Matrix2c> es(m_);
        if (es.eigenvalues().minCoeff() < -tol) {
            throw InvariantViolation("DensityMatrix1Q: negative eigenvalue");
        }
    }

    static DensityMatrix1Q pure(const std::array<cdouble, 2> &psi) {
        const double n = std::norm(psi[0]) + std::norm(psi[1]);
        if (std::abs(n - 1.0) > kInvariantTol) {
            throw std::invalid_argument("DensityMatrix1Q::pure: ket not normalized");
        }
        Matrix2c m;
        m << psi[0] * std::conj(psi[0]), psi[0] * std::conj(psi[1]), //
            psi[1] * std::conj(psi[0]), psi[1] * std::conj(psi[1]);
        return DensityMatrix1Q(m);
    }

    static DensityMatrix1Q maximally_mixed() {
        return DensityMatrix1Q(Matrix2c::Identity() * 0.5);
    }

    const Matrix2c &matrix() const { return m_; }

    /// (x, y, z) with rho = (I + x X + y Y + z Z) / 2.
    std::array<double, 3> bloch() const {
        return {2.0 * m_(0, 1).real(), -2.0 * m_(0, 1).imag(), (m_(0, 0) - m_(1, 1)).real()};
    }

  private:
    Matrix2c m_;
};

/// Validated process matrix in the (I, X, -iY, Z) basis: Hermitian,
/// unit trace, PSD.
class ProcessMatrix {
  public:
    explicit ProcessMatrix(const Matrix4c &chi, double tol = 1e-8) : m_(chi) {
        if (!is_hermitian(m_, tol)) {
            throw InvariantViolation("ProcessMatrix: not Hermitian");
        }
        if (std::abs(m_.trace().real() - 1.0) > tol) {
            throw InvariantViolation("ProcessMatrix: trace != 1");
        }
        Eigen::SelfAdjointEigenSolver<Matrix4c> es(m_);
        if (es.eigenvalues().minCoeff() < -tol) {
            throw InvariantViolation("ProcessMatrix: negative eigenvalue");
        }
    }

    /// chi of the identity channel: the teleportation target.
    static ProcessMatrix ideal_teleport() {
        Matrix4c m = Matrix4c::Zero();
        m(0, 0) = 1.0;
        return ProcessMatrix(m);
    }

    const Matrix4c &matrix() const { return m_; }

  private:
    Matrix4c m_;
};

/// The operator basis (I, X, -iY, Z) used for chi matrices.
inline const std::array<Matrix2c, 4> &chi_basis() {
    static const std::array<Matrix2c, 4> basis = [] {
        std::array<Matrix2c, 4> b;
        b[0] << 1, 0, 0, 1;
        b[1] << 0, 1, 1, 0;
        b[2] << 0, cdouble{-1, 0}, cdouble{1, 0}, 0; // -iY
        b[3] << 1, 0, 0, -1;
        return b;
    }();
    return basis;
}

/// Reconstructs rho from Pauli expectations (ex, ey, ez). Each input must lie
/// in [-1 - slack, 1 + slack] with slack 0.05 for finite-shot noise; Bloch
/// vectors outside the unit ball are projected back onto physical states by
/// eigenvalue clipping and renormalization.
inline DensityMatrix1Q state_tomo_1q(double ex, double ey, double ez) {
    constexpr double slack = 0.05;
    for (double e : {ex, ey, ez}) {
        if (std::abs(e) > 1.0 + slack) {
            throw std::invalid_argument("state_tomo_1q: expectation outside [-1.05, 1.05]");
        }
    }
    Matrix2c m;
    m << cdouble{(1.0 + ez) / 2.0, 0.0}, cdouble{ex / 2.0, -ey / 2.0}, //
        cdouble{ex / 2.0, ey / 2.0}, cdouble{(1.0 - ez) / 2.0, 0.0};
    const double r = std::sqrt(ex * ex + ey * ey + ez * ez);
    if (r > 1.0) {
        MatrixXc proj = psd_project(m);
        const double tr = proj.trace().real();
        if (tr <= kZeroProbTol) {
            throw InvariantViolation("state_tomo_1q: projection annihilated the state");
        }
        m = (proj / tr).eval();
    }
    return DensityMatrix1Q(m);
}

/// Reconstructs chi from the four channel outputs for inputs, in order,
/// |0>, |1>, |+> and |R> = (|0> + i|1>)/sqrt(2).
inline ProcessMatrix process_tomo_1q(const std::array<DensityMatrix1Q, 4> &outputs) {
    const Matrix2c &e00 = outputs[0].matrix();
    const Matrix2c &e11 = outputs[1].matrix();
    const Matrix2c &eplus = outputs[2].matrix();
    const Matrix2c &er = outputs[3].matrix();

    const cdouble i{0.0, 1.0};
    const Matrix2c e01 = eplus + i * er - (1.0 + i) * 0.5 * (e00 + e11);
    const Matrix2c e10 = e01.adjoint();

    Matrix4c blocks;
    blocks.block<2, 2>(0, 0) = e00;
    blocks.block<2, 2>(0, 2) = e01;
    blocks.block<2, 2>(2, 0) = e10;
    blocks.block<2, 2>(2, 2) = e11;

    Matrix4c lambda = Matrix4c::Zero();
    lambda.block<2, 2>(0, 0) = 0.5 * Matrix2c::Identity();
    lambda.block<2, 2>(0, 2) = 0.5 * (Matrix2c() << 0, 1, 1, 0).finished();
    lambda.block<2, 2>(2, 0) = 0.5 * (Matrix2c() << 0, 1, 1, 0).finished();
    lambda.block<2, 2>(2, 2) = -0.5 * Matrix2c::Identity();

    const Matrix4c raw = lambda * blocks * lambda;
    MatrixXc chi = psd_project(hermitize(raw));
    const double tr = chi.trace().real();
    if (tr <= kZeroProbTol) {
        throw InvariantViolation("process_tomo_1q: reconstructed chi has vanishing trace");
    }
    return ProcessMatrix(Matrix4c(chi / tr));
}

/// F_p = tr(chi_a chi_b) against a pure target process (rank-1 ideal chi).
/// For the teleportation target this is just chi_11.
inline double process_fidelity(const ProcessMatrix &chi, const ProcessMatrix &target) {
    const cdouble t = (chi.matrix() * target.matrix()).trace();
    if (std::abs(t.imag()) > 1e-9) {
        throw InvariantViolation("process_fidelity: non-real trace");
    }
    return std::clamp(t.real(), 0.0, 1.0);
}

/// F_s = <psi|rho|psi>, the squared-overlap convention.
inline double state_fidelity(const std::array<cdouble, 2> &psi, const DensityMatrix1Q &rho) {
    const Matrix2c &m = rho.matrix();
    Eigen::Vector2cd v;
    v << psi[0], psi[1];
    const cdouble f = v.adjoint() * m * v;
    if (std::abs(f.imag()) > 1e-9) {
        throw InvariantViolation("state_fidelity: non-real overlap");
    }
    return std::clamp(f.real(), 0.0, 1.0);
}

/// Average state fidelity over the Bloch sphere as a function of process
/// fidelity: F_avg = (2 F_p + 1) / 3. Finite-shot estimates may exceed 1
/// slightly, so the domain allows a small overshoot.
inline double avg_state_fidelity(double f_process) {
    constexpr double slack = 0.05;
    if (f_process < -1e-9 || f_process > 1.0 + slack) {
        throw std::invalid_argument("avg_state_fidelity: f_process outside [0, 1.05]");
    }
    return (2.0 * f_process + 1.0) / 3.0;
}

/// Comparison of a measured process fidelity against the classical bounds.
struct FidelityReport {
    double f_process;
    double f_avg_state;
    double f_process_threshold;
    double f_avg_state_threshold;
    bool surpasses_classical;
};

/// Strict comparison: equality with the threshold does not count as quantum.
inline FidelityReport classify(double f_process) {
    return FidelityReport{f_process, avg_state_fidelity(f_process), kClassicalProcessFidelity,
                          kClassicalAvgStateFidelity, f_process > kClassicalProcessFidelity};
}

} // namespace qtele

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
 * @file noise.hpp
 * Single-qubit noise channels in Kraus form, their chi representations and
 * the Uhlmann fidelity between process matrices.
 *
 * Channels and default strengths:
 *   depolarizing(p = 3/4):      (1-p) rho + (p/3)(X rho X + Y rho Y + Z rho Z)
 *   phase-damping(p = 1/2):     (1-p) rho + p Z rho Z
 *   amplitude-damping(g = 1):   K0 = [[1,0],[0,sqrt(1-g)]], K1 = [[0,sqrt(g)],[0,0]]
 * The defaults are the fully scrambling settings: depolarizing(3/4) maps
 * every state to I/2 and amplitude-damping(1) maps every state to |0><0|.
 */
#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "qtele/common.hpp"
#include "qtele/linalg.hpp"
#include "qtele/tomography.hpp"

namespace qtele {

enum class NoiseKind : std::uint8_t { Depolarizing, PhaseDamping, AmplitudeDamping };

inline const char *noise_kind_name(NoiseKind k) {
    switch (k) {
    case NoiseKind::Depolarizing:
        return "depolarizing";
    case NoiseKind::PhaseDamping:
        return "phase-damping";
    default:
        return "amplitude-damping";
    }
}

inline double default_noise_strength(NoiseKind k) {
    switch (k) {
    case NoiseKind::Depolarizing:
        return 0.75;
    case NoiseKind::PhaseDamping:
        return 0.5;
    default:
        return 1.0;
    }
}

/// A single-qubit channel specified by its Kraus operators.
class NoiseChannel {
  public:
    NoiseChannel(NoiseKind kind, double strength) : kind_(kind), strength_(strength) {
        if (!(strength >= 0.0 && strength <= 1.0)) {
            throw std::invalid_argument("NoiseChannel: strength must lie in [0, 1]");
        }
        switch (kind) {
        case NoiseKind::Depolarizing: {
            const double p = strength;
            kraus_.push_back(std::sqrt(1.0 - p) * Matrix2c::Identity());
            Matrix2c x, y, z;
            x << 0, 1, 1, 0;
            y << 0, cdouble{0, -1}, cdouble{0, 1}, 0;
            z << 1, 0, 0, -1;
            kraus_.push_back(std::sqrt(p / 3.0) * x);
            kraus_.push_back(std::sqrt(p / 3.0) * y);
            kraus_.push_back(std::sqrt(p / 3.0) * z);
            break;
        }
        case NoiseKind::PhaseDamping: {
            const double p = strength;
            Matrix2c z;
            z << 1, 0, 0, -1;
            kraus_.push_back(std::sqrt(1.0 - p) * Matrix2c::Identity());
            kraus_.push_back(std::sqrt(p) * z);
            break;
        }
        case NoiseKind::AmplitudeDamping: {
            const double g = strength;
            Matrix2c k0, k1;
            k0 << 1, 0, 0, std::sqrt(1.0 - g);
            k1 << 0, std::sqrt(g), 0, 0;
            kraus_.push_back(k0);
            kraus_.push_back(k1);
            break;
        }
        }
        // Completeness: sum K^dag K = I.
        Matrix2c sum = Matrix2c::Zero();
        for (const auto &k : kraus_) {
            sum += k.adjoint() * k;
        }
        if ((sum - Matrix2c::Identity()).cwiseAbs().maxCoeff() > kInvariantTol) {
            throw InvariantViolation("NoiseChannel: Kraus operators not trace preserving");
        }
    }

    static NoiseChannel with_default_strength(NoiseKind kind) {
        return NoiseChannel(kind, default_noise_strength(kind));
    }

    NoiseKind kind() const { return kind_; }
    double strength() const { return strength_; }
    const std::vector<Matrix2c> &kraus() const { return kraus_; }

  private:
    NoiseKind kind_;
    double strength_;
    std::vector<Matrix2c> kraus_;
};

/// E(rho) = sum_k K rho K^dag. Trace preserving by construction.
inline DensityMatrix1Q apply_channel(const NoiseChannel &ch, const DensityMatrix1Q &rho) {
    Matrix2c out = Matrix2c::Zero();
    for (const auto &k : ch.kraus()) {
        out += k * rho.matrix() * k.adjoint();
    }
    return DensityMatrix1Q(Matrix2c(hermitize(out)));
}

/// Analytic chi of the channel in the (I, X, -iY, Z) basis: each Kraus
/// operator expands as K = sum_m c_m M_m with c_m = tr(M_m^dag K) / 2, and
/// chi = sum_K c c^dag.
inline ProcessMatrix channel_chi(const NoiseChannel &ch) {
    const auto &basis = chi_basis();
    Matrix4c chi = Matrix4c::Zero();
    for (const auto &k : ch.kraus()) {
        Eigen::Vector4cd c;
        for (int m = 0; m < 4; ++m) {
            c(m) = 0.5 * (basis[static_cast<std::size_t>(m)].adjoint() * k).trace();
        }
        chi += c * c.adjoint();
    }
    return ProcessMatrix(Matrix4c(hermitize(chi)));
}

/// Uhlmann fidelity between two process matrices (both have unit trace and
/// are PSD by construction, so they compare like density matrices).
inline double channel_fidelity(const ProcessMatrix &a, const ProcessMatrix &b) {
    return uhlmann_fidelity(a.matrix(), b.matrix());
}

} // namespace qtele

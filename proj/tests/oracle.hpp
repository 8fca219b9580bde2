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

// Test-only reference implementations: brute-force full-matrix quantum
// mechanics against which the library kernels are checked. Everything here
// is built from explicit Kronecker products and dense linear solves, never
// from the library's own gate or tomography code paths.
#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <functional>
#include <random>
#include <vector>

#include "qtele/sim.hpp"

namespace oracle {

using qtele::cdouble;
using Eigen::Matrix2cd;
using Eigen::Matrix4cd;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;

inline MatrixXcd kron(const MatrixXcd &a, const MatrixXcd &b) {
    MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
        for (Eigen::Index c = 0; c < a.cols(); ++c) {
            out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
        }
    }
    return out;
}

inline Matrix2cd pauli(char c) {
    Matrix2cd m;
    switch (c) {
    case 'I':
        m << 1, 0, 0, 1;
        break;
    case 'X':
        m << 0, 1, 1, 0;
        break;
    case 'Y':
        m << 0, cdouble{0, -1}, cdouble{0, 1}, 0;
        break;
    case 'Z':
        m << 1, 0, 0, -1;
        break;
    default:
        throw std::invalid_argument("oracle::pauli: bad letter");
    }
    return m;
}

inline Matrix2cd hadamard() {
    Matrix2cd m;
    m << M_SQRT1_2, M_SQRT1_2, M_SQRT1_2, -M_SQRT1_2;
    return m;
}

// Embeds a single-qubit operator at position q of an n-qubit register,
// qubit 0 being the most significant index bit.
inline MatrixXcd embed_1q(std::size_t n, std::size_t q, const Matrix2cd &u) {
    MatrixXcd out = MatrixXcd::Identity(1, 1);
    for (std::size_t k = 0; k < n; ++k) {
        out = kron(out, k == q ? MatrixXcd(u) : MatrixXcd(Matrix2cd::Identity()));
    }
    return out;
}

// Embeds a two-qubit operator acting on (qa, qb); basis order of `u` is
// |qa qb>. Built entry-by-entry, so keep n small (<= 6).
inline MatrixXcd embed_2q(std::size_t n, std::size_t qa, std::size_t qb, const Matrix4cd &u) {
    const std::size_t dim = std::size_t{1} << n;
    const std::size_t ma = std::size_t{1} << (n - 1 - qa);
    const std::size_t mb = std::size_t{1} << (n - 1 - qb);
    MatrixXcd out = MatrixXcd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::size_t col = 0; col < dim; ++col) {
        const int ca = (col & ma) ? 1 : 0;
        const int cb = (col & mb) ? 1 : 0;
        const std::size_t base = col & ~(ma | mb);
        for (int ra = 0; ra < 2; ++ra) {
            for (int rb = 0; rb < 2; ++rb) {
                const std::size_t row =
                    base | (ra ? ma : std::size_t{0}) | (rb ? mb : std::size_t{0});
                out(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) +=
                    u(2 * ra + rb, 2 * ca + cb);
            }
        }
    }
    return out;
}

inline MatrixXcd pauli_string_matrix(const qtele::PauliString &p) {
    MatrixXcd out = MatrixXcd::Identity(1, 1);
    for (std::size_t q = 0; q < p.size(); ++q) {
        out = kron(out, MatrixXcd(pauli(qtele::pauli_char(p.at(q)))));
    }
    return out;
}

inline VectorXcd to_vector(const qtele::StateVector &s) {
    VectorXcd v(static_cast<Eigen::Index>(s.dim()));
    for (std::size_t i = 0; i < s.dim(); ++i) {
        v(static_cast<Eigen::Index>(i)) = s.amplitude(i);
    }
    return v;
}

inline double overlap2(const VectorXcd &a, const VectorXcd &b) {
    return std::norm(cdouble(a.adjoint() * b));
}

// Solves the defining equation E(rho) = sum_{mn} chi_mn M_m rho M_n^dag for
// chi in the (I, X, -iY, Z) basis, given the channel's action on arbitrary
// 2x2 matrices. This inverts the chi definition directly (dense 16x16
// solve), independent of both the library's reconstruction formula and its
// Kraus-coefficient expansion.
inline Matrix4cd chi_from_map(const std::function<Matrix2cd(const Matrix2cd &)> &channel) {
    std::array<Matrix2cd, 4> basis;
    basis[0] = pauli('I');
    basis[1] = pauli('X');
    basis[2] = cdouble{0, -1} * pauli('Y');
    basis[3] = pauli('Z');

    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(16, 16);
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(16);
    int row = 0;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            Matrix2cd unit = Matrix2cd::Zero();
            unit(i, j) = 1.0;
            const Matrix2cd image = channel(unit);
            for (int r = 0; r < 2; ++r) {
                for (int c = 0; c < 2; ++c) {
                    for (int m = 0; m < 4; ++m) {
                        for (int n = 0; n < 4; ++n) {
                            const Matrix2cd term =
                                basis[static_cast<std::size_t>(m)] * unit *
                                basis[static_cast<std::size_t>(n)].adjoint();
                            a(row, 4 * m + n) = term(r, c);
                        }
                    }
                    rhs(row) = image(r, c);
                    ++row;
                }
            }
        }
    }
    const Eigen::VectorXcd x = a.fullPivLu().solve(rhs);
    Matrix4cd chi;
    for (int m = 0; m < 4; ++m) {
        for (int n = 0; n < 4; ++n) {
            chi(m, n) = x(4 * m + n);
        }
    }
    return chi;
}

// Kraus action on an arbitrary matrix, for feeding chi_from_map.
inline std::function<Matrix2cd(const Matrix2cd &)>
kraus_map(const std::vector<Matrix2cd> &kraus) {
    return [kraus](const Matrix2cd &rho) {
        Matrix2cd out = Matrix2cd::Zero();
        for (const auto &k : kraus) {
            out += k * rho * k.adjoint();
        }
        return out;
    };
}

// Haar-ish random single-qubit ket from seeded Gaussians.
inline std::array<cdouble, 2> random_ket(std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> nd(0.0, 1.0);
    std::array<cdouble, 2> k{cdouble{nd(gen), nd(gen)}, cdouble{nd(gen), nd(gen)}};
    const double norm = std::sqrt(std::norm(k[0]) + std::norm(k[1]));
    if (norm < 1e-6) {
        return random_ket(seed + 0x9e3779b9);
    }
    k[0] /= norm;
    k[1] /= norm;
    return k;
}

// Random n-qubit state for kernel property tests.
inline qtele::StateVector random_state(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> nd(0.0, 1.0);
    std::vector<cdouble> amps(std::size_t{1} << n);
    double norm2 = 0.0;
    for (auto &a : amps) {
        a = cdouble{nd(gen), nd(gen)};
        norm2 += std::norm(a);
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto &a : amps) {
        a *= inv;
    }
    return qtele::StateVector(n, std::move(amps));
}

// Haar-random 2x2 unitary via QR with phase correction.
inline Matrix2cd random_unitary(std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> nd(0.0, 1.0);
    Matrix2cd g;
    g << cdouble{nd(gen), nd(gen)}, cdouble{nd(gen), nd(gen)}, cdouble{nd(gen), nd(gen)},
        cdouble{nd(gen), nd(gen)};
    Eigen::HouseholderQR<Matrix2cd> qr(g);
    Matrix2cd q = qr.householderQ();
    Matrix2cd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < 2; ++i) {
        const cdouble d = r(i, i);
        q.col(i) *= d / std::abs(d);
    }
    return q;
}

} // namespace oracle

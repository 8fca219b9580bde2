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
 * @file sim.hpp
 * Dense statevector simulator: pure-state register, 1- and 2-qubit gates,
 * Pauli-string expectations, projective measurement and multinomial
 * shot sampling.
 *
 * Index convention: qubit 0 is the MOST significant bit of the amplitude
 * index. For an n-qubit register, qubit q occupies bit (n - 1 - q), so
 * |q0 q1 ... q_{n-1}> maps to index q0*2^{n-1} + ... + q_{n-1}.
 */
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qtele/common.hpp"

namespace qtele {

/// Normalized pure state of n_qubits qubits.
class StateVector {
  public:
    /// Computational basis state |0...0>.
    explicit StateVector(std::size_t n_qubits)
        : n_qubits_(n_qubits), amps_(std::size_t{1} << n_qubits, cdouble{0.0, 0.0}) {
        if (n_qubits == 0 || n_qubits > 24) {
            throw std::invalid_argument("StateVector: n_qubits must be in [1, 24]");
        }
        amps_[0] = 1.0;
    }

    /// Takes ownership of an amplitude vector; must have length 2^n and unit norm.
    StateVector(std::size_t n_qubits, std::vector<cdouble> amplitudes)
        : n_qubits_(n_qubits), amps_(std::move(amplitudes)) {
        if (n_qubits == 0 || n_qubits > 24) {
            throw std::invalid_argument("StateVector: n_qubits must be in [1, 24]");
        }
        if (amps_.size() != (std::size_t{1} << n_qubits)) {
            throw std::invalid_argument("StateVector: amplitude count != 2^n_qubits");
        }
        if (std::abs(norm() - 1.0) > kInvariantTol) {
            throw InvariantViolation("StateVector: norm deviates from 1 by more than 1e-10");
        }
    }

    std::size_t n_qubits() const { return n_qubits_; }
    std::size_t dim() const { return amps_.size(); }
    const std::vector<cdouble> &amplitudes() const { return amps_; }
    cdouble amplitude(std::size_t index) const { return amps_.at(index); }

    double norm() const {
        double s = 0.0;
        for (const auto &a : amps_) {
            s += std::norm(a);
        }
        return std::sqrt(s);
    }

    /// Bit mask selecting qubit q inside an amplitude index.
    std::size_t mask_of(std::size_t q) const {
        if (q >= n_qubits_) {
            throw std::invalid_argument("StateVector: qubit index out of range");
        }
        return std::size_t{1} << (n_qubits_ - 1 - q);
    }

  private:
    std::size_t n_qubits_;
    std::vector<cdouble> amps_;
};

/// 2x2 unitary, row-major. Validated on construction.
struct Unitary1Q {
    std::array<cdouble, 4> m;

    explicit Unitary1Q(std::array<cdouble, 4> entries) : m(entries) {
        // U U^dag = I within 1e-10.
        for (int r = 0; r < 2; ++r) {
            for (int c = 0; c < 2; ++c) {
                cdouble s = m[2 * r] * std::conj(m[2 * c]) + m[2 * r + 1] * std::conj(m[2 * c + 1]);
                cdouble expect = (r == c) ? cdouble{1.0, 0.0} : cdouble{0.0, 0.0};
                if (std::abs(s - expect) > kInvariantTol) {
                    throw InvariantViolation("Unitary1Q: matrix is not unitary within 1e-10");
                }
            }
        }
    }

    cdouble operator()(int r, int c) const { return m[2 * r + c]; }

    /// Matrix product this * other (other acts first).
    Unitary1Q compose(const Unitary1Q &other) const {
        std::array<cdouble, 4> p{};
        for (int r = 0; r < 2; ++r) {
            for (int c = 0; c < 2; ++c) {
                p[2 * r + c] = m[2 * r] * other.m[c] + m[2 * r + 1] * other.m[2 + c];
            }
        }
        return Unitary1Q(p);
    }
};

/// 4x4 unitary, row-major over the two-qubit basis |ab> with a the first
/// (more significant) qubit argument of apply_2q.
struct Unitary2Q {
    std::array<cdouble, 16> m;

    explicit Unitary2Q(std::array<cdouble, 16> entries) : m(entries) {
        for (int r = 0; r < 4; ++r) {
            for (int c = 0; c < 4; ++c) {
                cdouble s{0.0, 0.0};
                for (int k = 0; k < 4; ++k) {
                    s += m[4 * r + k] * std::conj(m[4 * c + k]);
                }
                cdouble expect = (r == c) ? cdouble{1.0, 0.0} : cdouble{0.0, 0.0};
                if (std::abs(s - expect) > kInvariantTol) {
                    throw InvariantViolation("Unitary2Q: matrix is not unitary within 1e-10");
                }
            }
        }
    }

    cdouble operator()(int r, int c) const { return m[4 * r + c]; }
};

namespace gates {

inline const Unitary1Q I{{cdouble{1, 0}, {0, 0}, {0, 0}, {1, 0}}};
inline const Unitary1Q X{{cdouble{0, 0}, {1, 0}, {1, 0}, {0, 0}}};
inline const Unitary1Q Y{{cdouble{0, 0}, {0, -1}, {0, 1}, {0, 0}}};
inline const Unitary1Q Z{{cdouble{1, 0}, {0, 0}, {0, 0}, {-1, 0}}};
inline const Unitary1Q H{{cdouble{M_SQRT1_2, 0}, {M_SQRT1_2, 0}, {M_SQRT1_2, 0}, {-M_SQRT1_2, 0}}};
inline const Unitary1Q S{{cdouble{1, 0}, {0, 0}, {0, 0}, {0, 1}}};

/// Controlled-NOT; first qubit argument controls, second is the target.
inline const Unitary2Q CNOT{{cdouble{1, 0}, {0, 0}, {0, 0}, {0, 0}, //
                             {0, 0}, {1, 0}, {0, 0}, {0, 0},        //
                             {0, 0}, {0, 0}, {0, 0}, {1, 0},        //
                             {0, 0}, {0, 0}, {1, 0}, {0, 0}}};

} // namespace gates

/// Canonical single-qubit kets used as tomography inputs and test fixtures.
namespace kets {
inline std::array<cdouble, 2> zero() { return {cdouble{1, 0}, {0, 0}}; }
inline std::array<cdouble, 2> one() { return {cdouble{0, 0}, {1, 0}}; }
inline std::array<cdouble, 2> plus() { return {cdouble{M_SQRT1_2, 0}, {M_SQRT1_2, 0}}; }
inline std::array<cdouble, 2> minus() { return {cdouble{M_SQRT1_2, 0}, {-M_SQRT1_2, 0}}; }
/// (|0> + i|1>)/sqrt(2); +1 eigenstate of Y.
inline std::array<cdouble, 2> r() { return {cdouble{M_SQRT1_2, 0}, {0, M_SQRT1_2}}; }
inline std::array<cdouble, 2> l() { return {cdouble{M_SQRT1_2, 0}, {0, -M_SQRT1_2}}; }
} // namespace kets

inline StateVector apply_1q(const StateVector &state, const Unitary1Q &u, std::size_t q) {
    const std::size_t mask = state.mask_of(q);
    std::vector<cdouble> a = state.amplitudes();
    for (std::size_t i = 0; i < a.size(); ++i) {
        if ((i & mask) == 0) {
            const cdouble a0 = a[i];
            const cdouble a1 = a[i | mask];
            a[i] = u(0, 0) * a0 + u(0, 1) * a1;
            a[i | mask] = u(1, 0) * a0 + u(1, 1) * a1;
        }
    }
    return StateVector(state.n_qubits(), std::move(a));
}

inline StateVector apply_2q(const StateVector &state, const Unitary2Q &u, std::size_t qa,
                            std::size_t qb) {
    if (qa == qb) {
        throw std::invalid_argument("apply_2q: qubit indices must differ");
    }
    const std::size_t ma = state.mask_of(qa);
    const std::size_t mb = state.mask_of(qb);
    std::vector<cdouble> a = state.amplitudes();
    for (std::size_t i = 0; i < a.size(); ++i) {
        if ((i & ma) == 0 && (i & mb) == 0) {
            const std::array<std::size_t, 4> idx{i, i | mb, i | ma, i | ma | mb};
            std::array<cdouble, 4> v;
            for (int k = 0; k < 4; ++k) {
                v[k] = a[idx[k]];
            }
            for (int r = 0; r < 4; ++r) {
                cdouble s{0.0, 0.0};
                for (int c = 0; c < 4; ++c) {
                    s += u(r, c) * v[c];
                }
                a[idx[r]] = s;
            }
        }
    }
    return StateVector(state.n_qubits(), std::move(a));
}

/// Controlled-Z; symmetric in its qubit arguments.
inline StateVector apply_cz(const StateVector &state, std::size_t qa, std::size_t qb) {
    if (qa == qb) {
        throw std::invalid_argument("apply_cz: qubit indices must differ");
    }
    const std::size_t ma = state.mask_of(qa);
    const std::size_t mb = state.mask_of(qb);
    std::vector<cdouble> a = state.amplitudes();
    for (std::size_t i = 0; i < a.size(); ++i) {
        if ((i & ma) && (i & mb)) {
            a[i] = -a[i];
        }
    }
    return StateVector(state.n_qubits(), std::move(a));
}

enum class Pauli : std::uint8_t { I, X, Y, Z };

inline char pauli_char(Pauli p) {
    switch (p) {
    case Pauli::I:
        return 'I';
    case Pauli::X:
        return 'X';
    case Pauli::Y:
        return 'Y';
    default:
        return 'Z';
    }
}

/// Tensor product of single-qubit Paulis, one letter per qubit.
class PauliString {
  public:
    explicit PauliString(std::vector<Pauli> letters) : letters_(std::move(letters)) {
        if (letters_.empty()) {
            throw std::invalid_argument("PauliString: empty");
        }
    }

    static PauliString parse(std::string_view text) {
        std::vector<Pauli> ls;
        ls.reserve(text.size());
        for (char c : text) {
            switch (c) {
            case 'I':
                ls.push_back(Pauli::I);
                break;
            case 'X':
                ls.push_back(Pauli::X);
                break;
            case 'Y':
                ls.push_back(Pauli::Y);
                break;
            case 'Z':
                ls.push_back(Pauli::Z);
                break;
            default:
                throw std::invalid_argument("PauliString: invalid letter");
            }
        }
        return PauliString(std::move(ls));
    }

    std::size_t size() const { return letters_.size(); }
    Pauli at(std::size_t q) const { return letters_.at(q); }
    const std::vector<Pauli> &letters() const { return letters_; }

    std::string str() const {
        std::string s;
        s.reserve(letters_.size());
        for (Pauli p : letters_) {
            s.push_back(pauli_char(p));
        }
        return s;
    }

  private:
    std::vector<Pauli> letters_;
};

/// <state|P|state>. Real within 1e-10 and in [-1, 1] by hermiticity.
inline double expectation(const StateVector &state, const PauliString &p) {
    if (p.size() != state.n_qubits()) {
        throw std::invalid_argument("expectation: Pauli string length != qubit count");
    }
    StateVector rotated = state;
    for (std::size_t q = 0; q < p.size(); ++q) {
        switch (p.at(q)) {
        case Pauli::I:
            break;
        case Pauli::X:
            rotated = apply_1q(rotated, gates::X, q);
            break;
        case Pauli::Y:
            rotated = apply_1q(rotated, gates::Y, q);
            break;
        case Pauli::Z:
            rotated = apply_1q(rotated, gates::Z, q);
            break;
        }
    }
    cdouble v{0.0, 0.0};
    for (std::size_t i = 0; i < state.dim(); ++i) {
        v += std::conj(state.amplitudes()[i]) * rotated.amplitudes()[i];
    }
    if (std::abs(v.imag()) > kInvariantTol) {
        throw InvariantViolation("expectation: non-real value for Hermitian observable");
    }
    return std::clamp(v.real(), -1.0, 1.0);
}

/// Measurement bases appearing in the protocols.
enum class Basis : std::uint8_t { Z, X };

/// One outcome of a projective measurement. value is +1 or -1; +1 maps to
/// |0> (Z basis) and |+> (X basis), i.e. classical bit = (1 - value) / 2.
/// post_state is absent when probability <= kZeroProbTol.
struct MeasurementOutcome {
    Basis basis;
    int value;
    double probability;
    std::optional<StateVector> post_state;
};

struct MeasurementSplit {
    MeasurementOutcome plus;  // value +1
    MeasurementOutcome minus; // value -1
};

/// Projective measurement of qubit q; returns both collapse branches with
/// renormalized post-states. Does not mutate the input.
inline MeasurementSplit measure(const StateVector &state, std::size_t q, Basis basis) {
    const std::size_t mask = state.mask_of(q);
    const std::size_t dim = state.dim();
    const auto &a = state.amplitudes();

    std::vector<cdouble> plus_amps(dim, cdouble{0.0, 0.0});
    std::vector<cdouble> minus_amps(dim, cdouble{0.0, 0.0});
    double p_plus = 0.0;
    double p_minus = 0.0;

    if (basis == Basis::Z) {
        for (std::size_t i = 0; i < dim; ++i) {
            if (i & mask) {
                minus_amps[i] = a[i];
                p_minus += std::norm(a[i]);
            } else {
                plus_amps[i] = a[i];
                p_plus += std::norm(a[i]);
            }
        }
    } else {
        // Project onto |+-><+-| directly on index pairs.
        for (std::size_t i = 0; i < dim; ++i) {
            if ((i & mask) == 0) {
                const cdouble lo = a[i];
                const cdouble hi = a[i | mask];
                const cdouble sym = 0.5 * (lo + hi);
                const cdouble asym = 0.5 * (lo - hi);
                plus_amps[i] = sym;
                plus_amps[i | mask] = sym;
                minus_amps[i] = asym;
                minus_amps[i | mask] = -asym;
                p_plus += 2.0 * std::norm(sym);
                p_minus += 2.0 * std::norm(asym);
            }
        }
    }

    auto make_outcome = [&](int value, double p, std::vector<cdouble> &&amps) {
        MeasurementOutcome out{basis, value, p, std::nullopt};
        if (p > kZeroProbTol) {
            const double inv = 1.0 / std::sqrt(p);
            for (auto &c : amps) {
                c *= inv;
            }
            out.post_state = StateVector(state.n_qubits(), std::move(amps));
        }
        return out;
    };

    if (std::abs(p_plus + p_minus - 1.0) > kProbSumTol) {
        throw InvariantViolation("measure: branch probabilities do not sum to 1");
    }
    return MeasurementSplit{make_outcome(+1, p_plus, std::move(plus_amps)),
                            make_outcome(-1, p_minus, std::move(minus_amps))};
}

/// |amplitude|^2 for every basis index, in index order.
inline std::vector<double> outcome_probabilities(const StateVector &state) {
    std::vector<double> p(state.dim());
    for (std::size_t i = 0; i < state.dim(); ++i) {
        p[i] = std::norm(state.amplitudes()[i]);
    }
    return p;
}

/// Draws `shots` samples from a discrete distribution by inverse-CDF lookup.
/// Deterministic for a given (probabilities, shots, seed) triple on every
/// platform. Probabilities may carry rounding noise: entries >= -1e-12 are
/// clamped to 0 and the total must be 1 within 1e-9.
inline std::vector<std::uint64_t> sample_counts(const std::vector<double> &probabilities,
                                                std::uint64_t shots, std::uint64_t seed) {
    if (shots == 0) {
        throw std::invalid_argument("sample_counts: shots must be >= 1");
    }
    if (probabilities.empty()) {
        throw std::invalid_argument("sample_counts: empty distribution");
    }
    std::vector<double> cumulative(probabilities.size());
    double total = 0.0;
    for (std::size_t i = 0; i < probabilities.size(); ++i) {
        double p = probabilities[i];
        if (p < -kZeroProbTol) {
            throw std::invalid_argument("sample_counts: negative probability");
        }
        total += std::max(p, 0.0);
        cumulative[i] = total;
    }
    if (std::abs(total - 1.0) > kProbSumTol) {
        throw std::invalid_argument("sample_counts: probabilities do not sum to 1");
    }
    cumulative.back() = total;

    std::vector<std::uint64_t> counts(probabilities.size(), 0);
    std::mt19937_64 gen(seed);
    for (std::uint64_t s = 0; s < shots; ++s) {
        const double u = uniform01(gen) * total;
        const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
        const std::size_t idx = std::min<std::size_t>(
            static_cast<std::size_t>(it - cumulative.begin()), counts.size() - 1);
        ++counts[idx];
    }
    return counts;
}

} // namespace qtele

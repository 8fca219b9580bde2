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
 * @file teleport.hpp
 * N-party teleportation over box and chain cluster states.
 *
 * Register layout for an n-qubit cluster: register qubit 0 holds the input
 * state, cluster qubit a (1-based label) sits at register index a, so Bob is
 * register index n. The sender Bell-measures (input, cluster qubit 1); every
 * intermediate party i in 2..n-1 measures its qubit in a fixed local basis;
 * Bob repairs his qubit with a correction that depends only on the broadcast
 * outcomes.
 *
 * Correction calculus. Each branch is described by a word over the alphabet
 * {I, X, Z, H} written in matrix-product order: the leftmost letter is
 * applied last and H, when present, is the rightmost letter and is applied
 * first. The word is
 *     O_2 O_3 ... O_{n-1}  U_j  [H]
 * where O_i is I for outcome +1 and a fixed letter for outcome -1, U_j is
 * the Bell-outcome Pauli (I, X, Z or ZX), and the trailing H appears for
 * every chain and for boxes whose n is not divisible by 4. A word reduces
 * to one of the eight canonical forms {I, X, Z, ZX} x {1, H} by counting
 * X and Z parities; XX = ZZ = I and XZ = ZX up to a global phase, which is
 * irrelevant for teleportation fidelity.
 */
#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qtele/cluster.hpp"
#include "qtele/common.hpp"
#include "qtele/noise.hpp"
#include "qtele/sim.hpp"
#include "qtele/tomography.hpp"

namespace qtele {

/// Canonical tomography inputs, in the order used by process_tomo_1q.
enum class InputLabel : std::uint8_t { Zero = 0, One = 1, Plus = 2, R = 3 };

inline std::array<cdouble, 2> input_state(InputLabel label) {
    switch (label) {
    case InputLabel::Zero:
        return kets::zero();
    case InputLabel::One:
        return kets::one();
    case InputLabel::Plus:
        return kets::plus();
    default:
        return kets::r();
    }
}

inline const char *input_label_name(InputLabel label) {
    switch (label) {
    case InputLabel::Zero:
        return "zero";
    case InputLabel::One:
        return "one";
    case InputLabel::Plus:
        return "plus";
    default:
        return "r";
    }
}

inline const std::array<InputLabel, 4> &canonical_inputs() {
    static const std::array<InputLabel, 4> labels{InputLabel::Zero, InputLabel::One,
                                                  InputLabel::Plus, InputLabel::R};
    return labels;
}

/// A fully specified protocol instance: cluster family, size and input ket.
struct ProtocolConfig {
    ClusterKind kind;
    int n;
    std::array<cdouble, 2> input;

    static ProtocolConfig make(ClusterKind kind, int n, InputLabel label) {
        return make(kind, n, input_state(label));
    }

    static ProtocolConfig make(ClusterKind kind, int n, std::array<cdouble, 2> input) {
        validate_n(kind, n);
        const double norm = std::sqrt(std::norm(input[0]) + std::norm(input[1]));
        if (std::abs(norm - 1.0) > kInvariantTol) {
            throw std::invalid_argument("ProtocolConfig: input ket not normalized");
        }
        return ProtocolConfig{kind, n, input};
    }

    static void validate_n(ClusterKind kind, int n) {
        if (n < 2 || n % 2 != 0) {
            throw std::invalid_argument("ProtocolConfig: n must be an even integer >= 2");
        }
        if (kind == ClusterKind::Box) {
            if (n < 4) {
                throw std::invalid_argument("ProtocolConfig: box protocol needs n >= 4");
            }
            if (n > 12) {
                // The box correction table covers parties 2..11 only.
                throw UnsupportedNError(n, "ProtocolConfig: box protocol supports n <= 12");
            }
        }
        if (n > 22) {
            throw std::invalid_argument("ProtocolConfig: register cap exceeded (n <= 22)");
        }
    }
};

/// Measurement basis of intermediate party i (2 <= i <= n-1). Chains use X
/// everywhere; boxes use X for even i and i = 3, Z for the remaining odd i.
inline Basis participant_basis(ClusterKind kind, int n, int i) {
    if (i < 2 || i > n - 1) {
        throw std::invalid_argument("participant_basis: party index outside 2..n-1");
    }
    if (kind == ClusterKind::Chain) {
        return Basis::X;
    }
    return (i % 2 == 0 || i == 3) ? Basis::X : Basis::Z;
}

/// One of the four Bell-measurement outcomes j = (bit of qubit a, bit of
/// qubit b) after the CNOT(a->b), H(a) rotation; j in 0..3.
struct BellBranch {
    int j;
    double probability;
    std::optional<StateVector> post_state; // full register, absent when p ~ 0
};

/// Bell measurement of register qubits 0 and 1: rotate with CNOT(0->1) and
/// H(0), then Z-measure both. Outcome j = 2*bit(q0) + bit(q1); the matching
/// two-qubit correlation is |phi_j> = (U_j x I)|phi+> with U_0 = I, U_1 = X,
/// U_2 = Z, U_3 = ZX.
inline std::array<BellBranch, 4> bell_measure(const StateVector &state) {
    if (state.n_qubits() < 2) {
        throw std::invalid_argument("bell_measure: need at least two qubits");
    }
    const StateVector rotated = apply_1q(apply_2q(state, gates::CNOT, 0, 1), gates::H, 0);
    std::array<BellBranch, 4> out{BellBranch{0, 0.0, std::nullopt}, {1, 0.0, std::nullopt},
                                  {2, 0.0, std::nullopt}, {3, 0.0, std::nullopt}};
    const MeasurementSplit first = measure(rotated, 0, Basis::Z);
    for (const MeasurementOutcome *o0 : {&first.plus, &first.minus}) {
        const int b0 = (1 - o0->value) / 2;
        if (!o0->post_state) {
            continue;
        }
        const MeasurementSplit second = measure(*o0->post_state, 1, Basis::Z);
        for (const MeasurementOutcome *o1 : {&second.plus, &second.minus}) {
            const int b1 = (1 - o1->value) / 2;
            const int j = 2 * b0 + b1;
            const double p = o0->probability * o1->probability;
            out[static_cast<std::size_t>(j)].probability = p;
            if (o1->post_state && p > kZeroProbTol) {
                out[static_cast<std::size_t>(j)].post_state = *o1->post_state;
            }
        }
    }
    return out;
}

enum class CorrLetter : std::uint8_t { I, X, Z, H };

inline char corr_letter_char(CorrLetter l) {
    switch (l) {
    case CorrLetter::I:
        return 'I';
    case CorrLetter::X:
        return 'X';
    case CorrLetter::Z:
        return 'Z';
    default:
        return 'H';
    }
}

/// Correction word in matrix-product order (leftmost applied last).
struct CorrectionWord {
    std::vector<CorrLetter> letters;

    std::string str() const {
        std::string s;
        s.reserve(letters.size());
        for (CorrLetter l : letters) {
            s.push_back(corr_letter_char(l));
        }
        return s;
    }

    static CorrectionWord parse(std::string_view text) {
        if (text.empty()) {
            throw std::invalid_argument("CorrectionWord: empty word");
        }
        CorrectionWord w;
        w.letters.reserve(text.size());
        for (char c : text) {
            switch (c) {
            case 'I':
                w.letters.push_back(CorrLetter::I);
                break;
            case 'X':
                w.letters.push_back(CorrLetter::X);
                break;
            case 'Z':
                w.letters.push_back(CorrLetter::Z);
                break;
            case 'H':
                w.letters.push_back(CorrLetter::H);
                break;
            default:
                throw std::invalid_argument("CorrectionWord: invalid letter");
            }
        }
        return w;
    }
};

enum class CorrPauli : std::uint8_t { I, X, Z, ZX };

/// Canonical correction: an optional Hadamard applied first, then a Pauli.
struct CorrectionOp {
    CorrPauli pauli;
    bool hadamard;

    std::string str() const {
        std::string s;
        switch (pauli) {
        case CorrPauli::I:
            break;
        case CorrPauli::X:
            s = "X";
            break;
        case CorrPauli::Z:
            s = "Z";
            break;
        case CorrPauli::ZX:
            s = "ZX";
            break;
        }
        if (hadamard) {
            s += "H";
        }
        return s.empty() ? "I" : s;
    }

    /// The 2x2 matrix, fixing the ZX phase convention Z*X. Equal to the
    /// letter-product of any word that simplifies to this op, up to a
    /// global phase.
    Unitary1Q matrix() const {
        Unitary1Q p = gates::I;
        switch (pauli) {
        case CorrPauli::I:
            break;
        case CorrPauli::X:
            p = gates::X;
            break;
        case CorrPauli::Z:
            p = gates::Z;
            break;
        case CorrPauli::ZX:
            p = gates::Z.compose(gates::X);
            break;
        }
        return hadamard ? p.compose(gates::H) : p;
    }
};

/// Reduces a correction word to canonical form by X/Z parity counting.
/// H may only appear as the final (first-applied) letter.
inline CorrectionOp simplify(const CorrectionWord &word) {
    if (word.letters.empty()) {
        throw std::invalid_argument("simplify: empty word");
    }
    bool x_parity = false;
    bool z_parity = false;
    bool hadamard = false;
    for (std::size_t k = 0; k < word.letters.size(); ++k) {
        switch (word.letters[k]) {
        case CorrLetter::I:
            break;
        case CorrLetter::X:
            x_parity = !x_parity;
            break;
        case CorrLetter::Z:
            z_parity = !z_parity;
            break;
        case CorrLetter::H:
            if (k + 1 != word.letters.size()) {
                throw std::invalid_argument("simplify: H must be the final letter");
            }
            hadamard = true;
            break;
        }
    }
    CorrPauli p = CorrPauli::I;
    if (x_parity && z_parity) {
        p = CorrPauli::ZX;
    } else if (x_parity) {
        p = CorrPauli::X;
    } else if (z_parity) {
        p = CorrPauli::Z;
    }
    return CorrectionOp{p, hadamard};
}

/// Pauli letters of U_j in matrix-product order.
inline std::vector<CorrLetter> bell_correction_letters(int j) {
    switch (j) {
    case 0:
        return {CorrLetter::I};
    case 1:
        return {CorrLetter::X};
    case 2:
        return {CorrLetter::Z};
    case 3:
        return {CorrLetter::Z, CorrLetter::X};
    default:
        throw std::invalid_argument("bell_correction_letters: j outside 0..3");
    }
}

namespace detail {

inline void validate_outcomes(const std::vector<int> &m, int n) {
    if (m.size() != static_cast<std::size_t>(n - 2)) {
        throw std::invalid_argument("correction word: expected one outcome per party 2..n-1");
    }
    for (int v : m) {
        if (v != 1 && v != -1) {
            throw std::invalid_argument("correction word: outcomes must be +1 or -1");
        }
    }
}

} // namespace detail

/// Box correction word for Bell outcome j and participant outcomes
/// m = (m_2, ..., m_{n-1}). The -1 letter of party i is read from a fixed
/// table covering i = 2..11 (hence the n <= 12 cap); the trailing H appears
/// unless n is divisible by 4.
inline CorrectionWord correction_box(int j, const std::vector<int> &m, int n) {
    ProtocolConfig::validate_n(ClusterKind::Box, n);
    detail::validate_outcomes(m, n);
    static constexpr std::array<CorrLetter, 10> kFlip{
        CorrLetter::I, CorrLetter::X, CorrLetter::Z, CorrLetter::I, CorrLetter::X,
        CorrLetter::Z, CorrLetter::Z, CorrLetter::X, CorrLetter::X, CorrLetter::Z};
    CorrectionWord w;
    for (int i = 2; i <= n - 1; ++i) {
        const bool flip = m[static_cast<std::size_t>(i - 2)] == -1;
        w.letters.push_back(flip ? kFlip[static_cast<std::size_t>(i - 2)] : CorrLetter::I);
    }
    for (CorrLetter l : bell_correction_letters(j)) {
        w.letters.push_back(l);
    }
    if (n % 4 != 0) {
        w.letters.push_back(CorrLetter::H);
    }
    return w;
}

/// Chain correction word: party i flips with X (i even) or Z (i odd) on
/// outcome -1, and the word always ends in H.
inline CorrectionWord correction_chain(int j, const std::vector<int> &m, int n) {
    ProtocolConfig::validate_n(ClusterKind::Chain, n);
    detail::validate_outcomes(m, n);
    CorrectionWord w;
    for (int i = 2; i <= n - 1; ++i) {
        const bool flip = m[static_cast<std::size_t>(i - 2)] == -1;
        w.letters.push_back(!flip          ? CorrLetter::I
                            : (i % 2 == 0) ? CorrLetter::X
                                           : CorrLetter::Z);
    }
    for (CorrLetter l : bell_correction_letters(j)) {
        w.letters.push_back(l);
    }
    w.letters.push_back(CorrLetter::H);
    return w;
}

inline CorrectionWord correction_word(ClusterKind kind, int j, const std::vector<int> &m, int n) {
    return kind == ClusterKind::Box ? correction_box(j, m, n) : correction_chain(j, m, n);
}

/// One measurement branch of the protocol: Bell outcome, participant
/// outcomes, joint probability, Bob's qubit before and after correction.
struct BranchRecord {
    int j;
    std::vector<int> m;
    double probability;
    StateVector bob_pre;
    CorrectionWord word;
    CorrectionOp correction;
    StateVector bob_corrected;
};

namespace detail {

/// Extracts the last register qubit from a product-form leaf state. Valid
/// because every other qubit has been projectively measured, so amplitudes
/// factor as c(prefix) * beta[last bit]; any nonzero prefix pair yields the
/// same normalized single-qubit state up to global phase.
inline StateVector extract_last_qubit(const StateVector &state) {
    const auto &a = state.amplitudes();
    std::size_t best = 0;
    double best_w = -1.0;
    for (std::size_t k = 0; k < state.dim() / 2; ++k) {
        const double w = std::norm(a[2 * k]) + std::norm(a[2 * k + 1]);
        if (w > best_w) {
            best_w = w;
            best = k;
        }
    }
    if (best_w <= kZeroProbTol) {
        throw InvariantViolation("extract_last_qubit: state has no weight");
    }
    const double inv = 1.0 / std::sqrt(best_w);
    return StateVector(1, {a[2 * best] * inv, a[2 * best + 1] * inv});
}

inline StateVector protocol_initial_state(const ProtocolConfig &cfg, const ClusterTopology &t) {
    const std::size_t total = static_cast<std::size_t>(cfg.n) + 1;
    std::vector<cdouble> amps(std::size_t{1} << total, cdouble{0.0, 0.0});
    amps[0] = cfg.input[0];
    amps[std::size_t{1} << (total - 1)] = cfg.input[1]; // qubit 0 is the MSB
    StateVector state(total, std::move(amps));
    for (int a = 1; a <= cfg.n; ++a) {
        state = apply_1q(state, gates::H, static_cast<std::size_t>(a));
    }
    for (const auto &[a, b] : t.edges) {
        state = apply_cz(state, static_cast<std::size_t>(a), static_cast<std::size_t>(b));
    }
    return state;
}

} // namespace detail

/// Enumerates every measurement branch of the protocol exactly. Branches are
/// ordered lexicographically by (j, participant bits with +1 before -1) and
/// zero-probability branches are omitted. Probabilities sum to 1 within 1e-9
/// and, for the protocols simulated here, are uniform across branches.
inline std::vector<BranchRecord> run_protocol_exact(const ProtocolConfig &cfg) {
    ProtocolConfig::validate_n(cfg.kind, cfg.n);
    const ClusterTopology topo = build_topology(cfg.kind, cfg.n);
    const StateVector initial = detail::protocol_initial_state(cfg, topo);

    std::vector<BranchRecord> records;
    const std::array<BellBranch, 4> bells = bell_measure(initial);

    // Depth-first over parties 2..n-1; +1 outcome explored before -1.
    auto descend = [&](auto &&self, int j, double prob, const StateVector &state,
                       std::vector<int> &m, int i) -> void {
        if (i > cfg.n - 1) {
            StateVector bob = detail::extract_last_qubit(state);
            CorrectionWord word = correction_word(cfg.kind, j, m, cfg.n);
            CorrectionOp op = simplify(word);
            StateVector corrected = apply_1q(bob, op.matrix(), 0);
            records.push_back(BranchRecord{j, m, prob, std::move(bob), std::move(word), op,
                                           std::move(corrected)});
            return;
        }
        const Basis basis = participant_basis(cfg.kind, cfg.n, i);
        const MeasurementSplit split = measure(state, static_cast<std::size_t>(i), basis);
        for (const MeasurementOutcome *o : {&split.plus, &split.minus}) {
            const double p = prob * o->probability;
            if (o->post_state && p > kZeroProbTol) {
                m.push_back(o->value);
                self(self, j, p, *o->post_state, m, i + 1);
                m.pop_back();
            }
        }
    };

    for (const BellBranch &bb : bells) {
        if (bb.post_state && bb.probability > kZeroProbTol) {
            std::vector<int> m;
            descend(descend, bb.j, bb.probability, *bb.post_state, m, 2);
        }
    }

    double total = 0.0;
    for (const auto &r : records) {
        total += r.probability;
    }
    if (std::abs(total - 1.0) > kProbSumTol) {
        throw InvariantViolation("run_protocol_exact: branch probabilities do not sum to 1");
    }
    return records;
}

/// Shot-sampled protocol run. Counts are drawn from the joint (branch,
/// outcome) distribution of measuring Bob's pre-correction qubit along each
/// of the X, Y, Z axes, with the optional noise channel applied to Bob's
/// qubit first. Each setting uses shots*reps draws from an independent RNG
/// stream derived from (seed, setting index), so results do not depend on
/// evaluation order.
struct SampledRun {
    std::vector<BranchRecord> branches;
    /// counts[s][b] = {+1 count, -1 count} for setting s (0 = X, 1 = Y,
    /// 2 = Z) and branch b (indexed as in `branches`).
    std::array<std::vector<std::array<std::uint64_t, 2>>, 3> counts;
    std::uint64_t draws_per_setting;
};

inline SampledRun run_protocol_sampled(const ProtocolConfig &cfg, std::uint64_t shots,
                                       std::uint64_t reps, std::uint64_t seed,
                                       const std::optional<NoiseChannel> &noise = std::nullopt) {
    if (shots == 0 || reps == 0) {
        throw std::invalid_argument("run_protocol_sampled: shots and reps must be >= 1");
    }
    SampledRun run;
    run.branches = run_protocol_exact(cfg);
    run.draws_per_setting = shots * reps;

    std::vector<std::array<double, 3>> bloch;
    bloch.reserve(run.branches.size());
    for (const auto &b : run.branches) {
        DensityMatrix1Q rho = DensityMatrix1Q::pure(
            {b.bob_pre.amplitude(0), b.bob_pre.amplitude(1)});
        if (noise) {
            rho = apply_channel(*noise, rho);
        }
        bloch.push_back(rho.bloch());
    }

    for (std::size_t s = 0; s < 3; ++s) {
        std::vector<double> joint(2 * run.branches.size());
        double total = 0.0;
        for (std::size_t b = 0; b < run.branches.size(); ++b) {
            const double p_plus = 0.5 * (1.0 + bloch[b][s]);
            joint[2 * b] = run.branches[b].probability * p_plus;
            joint[2 * b + 1] = run.branches[b].probability * (1.0 - p_plus);
            total += joint[2 * b] + joint[2 * b + 1];
        }
        if (std::abs(total - 1.0) > kProbSumTol) {
            throw InvariantViolation("run_protocol_sampled: joint distribution not normalized");
        }
        for (double &p : joint) {
            p /= total;
        }
        const std::vector<std::uint64_t> flat =
            sample_counts(joint, run.draws_per_setting, derive_seed(seed, s));
        run.counts[s].resize(run.branches.size());
        for (std::size_t b = 0; b < run.branches.size(); ++b) {
            run.counts[s][b] = {flat[2 * b], flat[2 * b + 1]};
        }
    }
    return run;
}

/// Classical benchmark: measure the input in the computational basis and
/// re-prepare the outcome. E(rho) = p0 |0><0| + p1 |1><1|; its process
/// fidelity with the identity is exactly 1/2.
inline DensityMatrix1Q measure_prepare_baseline(const std::array<cdouble, 2> &input) {
    const double p0 = std::norm(input[0]);
    const double p1 = std::norm(input[1]);
    if (std::abs(p0 + p1 - 1.0) > kInvariantTol) {
        throw std::invalid_argument("measure_prepare_baseline: input ket not normalized");
    }
    Matrix2c m;
    m << p0, 0, 0, p1;
    return DensityMatrix1Q(m);
}

/// chi of the measure-and-prepare channel via the standard reconstruction;
/// analytically diag(1/2, 0, 0, 1/2) in the (I, X, -iY, Z) basis.
inline ProcessMatrix measure_prepare_chi() {
    std::array<DensityMatrix1Q, 4> outputs{
        measure_prepare_baseline(input_state(InputLabel::Zero)),
        measure_prepare_baseline(input_state(InputLabel::One)),
        measure_prepare_baseline(input_state(InputLabel::Plus)),
        measure_prepare_baseline(input_state(InputLabel::R))};
    return process_tomo_1q(outputs);
}

} // namespace qtele

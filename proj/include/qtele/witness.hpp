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
 * @file witness.hpp
 * Entanglement witnesses for box and chain cluster states:
 *     W = (n - 1) I - sum_a K_a
 * with K_a the stabilizer generators. <W> = -1 on the ideal cluster state,
 * +5 on the product state |+>^6 for n = 6, and a negative value rules out
 * any fully separable state.
 *
 * Every term is diagonal in one of two global measurement settings obtained
 * by two-coloring the cluster graph: measure X on one color class and Z on
 * the other, then swap. Shot-sampled evaluation therefore needs only two
 * count tables regardless of n.
 */
#pragma once

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "qtele/cluster.hpp"
#include "qtele/common.hpp"
#include "qtele/sim.hpp"

namespace qtele {

struct WitnessOperator {
    ClusterKind kind;
    int n;
    double constant;                 // coefficient of the identity term
    std::vector<PauliString> terms;  // subtracted stabilizer generators
    std::array<std::string, 2> settings;
    bool extrapolated; // true when n != 6, outside the verified regime
};

/// Builds W for the given family. n = 6 is the reference witness; other even
/// n are the natural generalization and must be requested explicitly.
inline WitnessOperator build_witness(ClusterKind kind, int n, bool allow_extrapolated = false) {
    if (n != 6 && !allow_extrapolated) {
        throw std::invalid_argument(
            "build_witness: n != 6 requires opting into the extrapolated witness");
    }
    const ClusterTopology topo = build_topology(kind, n);

    // Two-color the graph from qubit 1 (even distance -> X, odd -> Z).
    std::vector<int> color(static_cast<std::size_t>(n) + 1, -1);
    std::vector<int> queue{1};
    color[1] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const int a = queue[head];
        for (int b : topo.neighbors(a)) {
            if (color[static_cast<std::size_t>(b)] == -1) {
                color[static_cast<std::size_t>(b)] = 1 - color[static_cast<std::size_t>(a)];
                queue.push_back(b);
            } else if (color[static_cast<std::size_t>(b)] == color[static_cast<std::size_t>(a)]) {
                throw InvariantViolation("build_witness: cluster graph is not bipartite");
            }
        }
    }

    std::array<std::string, 2> settings;
    for (int s = 0; s < 2; ++s) {
        std::string basis(static_cast<std::size_t>(n), 'Z');
        for (int a = 1; a <= n; ++a) {
            if (color[static_cast<std::size_t>(a)] == s) {
                basis[static_cast<std::size_t>(a - 1)] = 'X';
            }
        }
        settings[static_cast<std::size_t>(s)] = basis;
    }

    return WitnessOperator{kind, n, static_cast<double>(n - 1), stabilizer_generators(topo),
                           settings, n != 6};
}

/// True when every non-identity letter of `term` matches the setting basis.
inline bool setting_covers(const std::string &setting, const PauliString &term) {
    if (setting.size() != term.size()) {
        return false;
    }
    for (std::size_t q = 0; q < term.size(); ++q) {
        const Pauli p = term.at(q);
        if (p == Pauli::I) {
            continue;
        }
        if (pauli_char(p) != setting[q]) {
            return false;
        }
    }
    return true;
}

/// <W> from exact expectations.
inline double evaluate_witness_exact(const WitnessOperator &w, const StateVector &state) {
    if (state.n_qubits() != static_cast<std::size_t>(w.n)) {
        throw std::invalid_argument("evaluate_witness_exact: state size mismatch");
    }
    double value = w.constant;
    for (const PauliString &term : w.terms) {
        value -= expectation(state, term);
    }
    return value;
}

/// Shot-sampled witness estimate with Poissonian error bars.
struct WitnessSample {
    double value;
    double error;
    std::vector<double> term_values;
    std::vector<double> term_errors;
};

/// Samples both global settings (shots*reps draws each, independent RNG
/// streams derived from the seed) and tallies every term from the setting
/// that covers it. Term variance uses the Poisson estimate (1 - e^2)/N;
/// the witness error adds term variances, neglecting covariance between
/// terms read from the same counts.
inline WitnessSample evaluate_witness_sampled(const WitnessOperator &w, const StateVector &state,
                                              std::uint64_t shots, std::uint64_t reps,
                                              std::uint64_t seed) {
    if (state.n_qubits() != static_cast<std::size_t>(w.n)) {
        throw std::invalid_argument("evaluate_witness_sampled: state size mismatch");
    }
    if (shots == 0 || reps == 0) {
        throw std::invalid_argument("evaluate_witness_sampled: shots and reps must be >= 1");
    }
    const std::uint64_t draws = shots * reps;

    // One count table per setting over all 2^n outcomes.
    std::array<std::vector<std::uint64_t>, 2> counts;
    for (std::size_t s = 0; s < 2; ++s) {
        StateVector rotated = state;
        for (std::size_t q = 0; q < w.settings[s].size(); ++q) {
            if (w.settings[s][q] == 'X') {
                rotated = apply_1q(rotated, gates::H, q);
            }
        }
        counts[s] = sample_counts(outcome_probabilities(rotated), draws, derive_seed(seed, s));
    }

    WitnessSample out{w.constant, 0.0, {}, {}};
    double variance = 0.0;
    for (const PauliString &term : w.terms) {
        int setting = -1;
        for (int s = 0; s < 2; ++s) {
            if (setting_covers(w.settings[static_cast<std::size_t>(s)], term)) {
                setting = s;
                break;
            }
        }
        if (setting < 0) {
            throw std::invalid_argument("evaluate_witness_sampled: term not covered by settings");
        }
        const auto &table = counts[static_cast<std::size_t>(setting)];
        double acc = 0.0;
        for (std::size_t o = 0; o < table.size(); ++o) {
            if (table[o] == 0) {
                continue;
            }
            int sign = 1;
            for (std::size_t q = 0; q < term.size(); ++q) {
                if (term.at(q) == Pauli::I) {
                    continue;
                }
                const std::size_t mask = std::size_t{1} << (term.size() - 1 - q);
                if (o & mask) {
                    sign = -sign;
                }
            }
            acc += sign * static_cast<double>(table[o]);
        }
        const double e = acc / static_cast<double>(draws);
        const double var = std::max(0.0, 1.0 - e * e) / static_cast<double>(draws);
        out.term_values.push_back(e);
        out.term_errors.push_back(std::sqrt(var));
        out.value -= e;
        variance += var;
    }
    out.error = std::sqrt(variance);
    return out;
}

} // namespace qtele

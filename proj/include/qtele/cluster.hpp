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
 * @file cluster.hpp
 * Box and chain cluster-state topologies, state preparation and stabilizer
 * generators.
 *
 * Cluster qubits carry 1-based labels. A chain of n qubits is the path
 * 1-2-...-n. A box of n qubits is the ladder with rungs (2k-1, 2k), an odd
 * rail 1-3-5-... and an even rail 2-4-6-....  The n = 4 box degenerates to
 * the 4-cycle and n = 6 to the familiar two-square ladder.
 */
#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "qtele/common.hpp"
#include "qtele/sim.hpp"

namespace qtele {

enum class ClusterKind : std::uint8_t { Box, Chain };

inline const char *cluster_kind_name(ClusterKind k) {
    return k == ClusterKind::Box ? "box" : "chain";
}

/// Undirected graph underlying a cluster state. Edges are stored with
/// a < b and sorted lexicographically; labels run 1..n_qubits.
struct ClusterTopology {
    ClusterKind kind;
    int n_qubits;
    std::vector<std::pair<int, int>> edges;

    std::vector<int> neighbors(int label) const {
        if (label < 1 || label > n_qubits) {
            throw std::invalid_argument("ClusterTopology: label out of range");
        }
        std::vector<int> out;
        for (const auto &[a, b] : edges) {
            if (a == label) {
                out.push_back(b);
            } else if (b == label) {
                out.push_back(a);
            }
        }
        std::sort(out.begin(), out.end());
        return out;
    }
};

/// Builds the edge list for the requested cluster family. n must be even;
/// chains need n >= 2 and boxes n >= 4.
inline ClusterTopology build_topology(ClusterKind kind, int n) {
    if (n < 2 || n % 2 != 0) {
        throw std::invalid_argument("build_topology: n must be an even integer >= 2");
    }
    ClusterTopology t{kind, n, {}};
    if (kind == ClusterKind::Chain) {
        for (int i = 1; i < n; ++i) {
            t.edges.emplace_back(i, i + 1);
        }
    } else {
        if (n < 4) {
            throw std::invalid_argument("build_topology: box clusters need n >= 4");
        }
        for (int k = 1; k <= n / 2; ++k) {
            t.edges.emplace_back(2 * k - 1, 2 * k); // rung
        }
        for (int k = 1; k <= n / 2 - 1; ++k) {
            t.edges.emplace_back(2 * k - 1, 2 * k + 1); // odd rail
            t.edges.emplace_back(2 * k, 2 * k + 2);     // even rail
        }
    }
    std::sort(t.edges.begin(), t.edges.end());
    return t;
}

/// |C> = prod_edges CZ |+>^n. Qubit label a maps to register index a - 1.
inline StateVector prepare_cluster(const ClusterTopology &t) {
    StateVector state(static_cast<std::size_t>(t.n_qubits));
    for (int q = 0; q < t.n_qubits; ++q) {
        state = apply_1q(state, gates::H, static_cast<std::size_t>(q));
    }
    for (const auto &[a, b] : t.edges) {
        state = apply_cz(state, static_cast<std::size_t>(a - 1), static_cast<std::size_t>(b - 1));
    }
    return state;
}

/// Stabilizer generators K_a = X_a prod_{b in nbrs(a)} Z_b for a = 1..n.
/// The cluster state is the unique joint +1 eigenstate.
inline std::vector<PauliString> stabilizer_generators(const ClusterTopology &t) {
    std::vector<PauliString> gens;
    gens.reserve(static_cast<std::size_t>(t.n_qubits));
    for (int a = 1; a <= t.n_qubits; ++a) {
        std::vector<Pauli> letters(static_cast<std::size_t>(t.n_qubits), Pauli::I);
        letters[static_cast<std::size_t>(a - 1)] = Pauli::X;
        for (int b : t.neighbors(a)) {
            letters[static_cast<std::size_t>(b - 1)] = Pauli::Z;
        }
        gens.emplace_back(std::move(letters));
    }
    return gens;
}

} // namespace qtele

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

#include <algorithm>
#include <catch2/catch_amalgamated.hpp>

#include "oracle.hpp"
#include "qtele/witness.hpp"

using namespace qtele;
using Catch::Approx;

namespace {

StateVector product_plus(int n) {
    StateVector s(static_cast<std::size_t>(n));
    for (int q = 0; q < n; ++q) {
        s = apply_1q(s, gates::H, static_cast<std::size_t>(q));
    }
    return s;
}

}  // namespace

TEST_CASE("witness construction") {
    SECTION("box-6 reference witness") {
        const WitnessOperator w = build_witness(ClusterKind::Box, 6);
        REQUIRE(w.constant == 5.0);
        REQUIRE_FALSE(w.extrapolated);
        std::vector<std::string> terms;
        for (const auto &t : w.terms) {
            terms.push_back(t.str());
        }
        std::sort(terms.begin(), terms.end());
        std::vector<std::string> expect{"XZZIII", "IZZXIZ", "ZXIZII",
                                        "IIZIXZ", "ZIXZZI", "IIIZZX"};
        std::sort(expect.begin(), expect.end());
        REQUIRE(terms == expect);
        REQUIRE(w.settings[0] == "XZZXXZ");
        REQUIRE(w.settings[1] == "ZXXZZX");
    }
    SECTION("chain-6 reference witness") {
        const WitnessOperator w = build_witness(ClusterKind::Chain, 6);
        REQUIRE(w.constant == 5.0);
        REQUIRE(w.settings[0] == "XZXZXZ");
        REQUIRE(w.settings[1] == "ZXZXZX");
        REQUIRE(w.terms[0].str() == "XZIIII");
        REQUIRE(w.terms[5].str() == "IIIIZX");
    }
    SECTION("every term is covered by exactly one setting") {
        for (ClusterKind kind : {ClusterKind::Box, ClusterKind::Chain}) {
            const WitnessOperator w = build_witness(kind, 6);
            for (const auto &term : w.terms) {
                const bool c0 = setting_covers(w.settings[0], term);
                const bool c1 = setting_covers(w.settings[1], term);
                REQUIRE(c0 != c1);
            }
        }
    }
    SECTION("other sizes require the extrapolation opt-in") {
        REQUIRE_THROWS_AS(build_witness(ClusterKind::Box, 4), std::invalid_argument);
        REQUIRE_THROWS_AS(build_witness(ClusterKind::Chain, 8), std::invalid_argument);
        const WitnessOperator w = build_witness(ClusterKind::Box, 4, true);
        REQUIRE(w.extrapolated);
        REQUIRE(w.constant == 3.0);
        const WitnessOperator w8 = build_witness(ClusterKind::Chain, 8, true);
        REQUIRE(w8.constant == 7.0);
        REQUIRE(w8.extrapolated);
    }
}

TEST_CASE("exact witness values") {
    SECTION("cluster state scores -1, product state scores n-1") {
        for (ClusterKind kind : {ClusterKind::Box, ClusterKind::Chain}) {
            const WitnessOperator w = build_witness(kind, 6);
            const StateVector cluster = prepare_cluster(build_topology(kind, 6));
            REQUIRE(evaluate_witness_exact(w, cluster) == Approx(-1.0).margin(1e-10));
            REQUIRE(evaluate_witness_exact(w, product_plus(6)) == Approx(5.0).margin(1e-10));
        }
    }
    SECTION("extrapolated sizes keep the -1 cluster value") {
        for (int n : {4, 8}) {
            const WitnessOperator w = build_witness(ClusterKind::Box, n, true);
            const StateVector cluster = prepare_cluster(build_topology(ClusterKind::Box, n));
            REQUIRE(evaluate_witness_exact(w, cluster) == Approx(-1.0).margin(1e-10));
        }
    }
    SECTION("state size must match") {
        const WitnessOperator w = build_witness(ClusterKind::Box, 6);
        REQUIRE_THROWS_AS(evaluate_witness_exact(w, StateVector(4)), std::invalid_argument);
    }
}

TEST_CASE("sampled witness values") {
    SECTION("ideal cluster gives exactly -1 with zero error") {
        for (ClusterKind kind : {ClusterKind::Box, ClusterKind::Chain}) {
            const WitnessOperator w = build_witness(kind, 6);
            const StateVector cluster = prepare_cluster(build_topology(kind, 6));
            const WitnessSample s = evaluate_witness_sampled(w, cluster, 4096, 2, 17);
            REQUIRE(s.value == -1.0);
            REQUIRE(s.error == 0.0);
            for (double t : s.term_values) {
                REQUIRE(t == 1.0);
            }
        }
    }
    SECTION("product state stays near n-1 within errors") {
        const WitnessOperator w = build_witness(ClusterKind::Box, 6);
        const WitnessSample s = evaluate_witness_sampled(w, product_plus(6), 8192, 4, 23);
        REQUIRE(s.error > 0.0);
        REQUIRE(std::abs(s.value - 5.0) <= 5.0 * s.error);
        for (std::size_t t = 0; t < s.term_values.size(); ++t) {
            REQUIRE(s.term_errors[t] > 0.0);
            REQUIRE(std::abs(s.term_values[t]) <= 5.0 * s.term_errors[t]);
        }
    }
    SECTION("converges to the exact value on a perturbed state") {
        const WitnessOperator w = build_witness(ClusterKind::Chain, 6);
        StateVector state = prepare_cluster(build_topology(ClusterKind::Chain, 6));
        const double theta = 0.4;
        const Unitary1Q ry({cdouble{std::cos(theta / 2), 0}, {-std::sin(theta / 2), 0},
                            {std::sin(theta / 2), 0}, {std::cos(theta / 2), 0}});
        state = apply_1q(state, ry, 2);
        const double exact = evaluate_witness_exact(w, state);
        const WitnessSample s = evaluate_witness_sampled(w, state, 1u << 20, 1, 31);
        REQUIRE(s.error > 0.0);
        REQUIRE(s.error < 0.01);
        REQUIRE(std::abs(s.value - exact) <= 5.0 * s.error);
        for (std::size_t t = 0; t < w.terms.size(); ++t) {
            const double te = expectation(state, w.terms[t]);
            const double tol = std::max(5.0 * s.term_errors[t], 1e-9);
            REQUIRE(std::abs(s.term_values[t] - te) <= tol);
        }
    }
    SECTION("deterministic per seed") {
        const WitnessOperator w = build_witness(ClusterKind::Box, 6);
        const StateVector state = product_plus(6);
        const WitnessSample a = evaluate_witness_sampled(w, state, 1024, 2, 5);
        const WitnessSample b = evaluate_witness_sampled(w, state, 1024, 2, 5);
        REQUIRE(a.value == b.value);
        REQUIRE(a.term_values == b.term_values);
    }
    SECTION("uncovered terms are rejected") {
        WitnessOperator w = build_witness(ClusterKind::Box, 6);
        w.terms.push_back(PauliString::parse("XXIIII"));
        REQUIRE_THROWS_AS(evaluate_witness_sampled(w, product_plus(6), 64, 1, 1),
                          std::invalid_argument);
    }
    SECTION("argument validation") {
        const WitnessOperator w = build_witness(ClusterKind::Box, 6);
        REQUIRE_THROWS_AS(evaluate_witness_sampled(w, StateVector(4), 64, 1, 1),
                          std::invalid_argument);
        REQUIRE_THROWS_AS(evaluate_witness_sampled(w, product_plus(6), 0, 1, 1),
                          std::invalid_argument);
    }
}

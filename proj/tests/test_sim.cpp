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

#include <catch2/catch_amalgamated.hpp>

#include "oracle.hpp"
#include "qtele/sim.hpp"

using namespace qtele;
using Catch::Approx;

namespace {
constexpr double kTol = 1e-12;
}

TEST_CASE("statevector construction and validation") {
    StateVector s(3);
    REQUIRE(s.n_qubits() == 3);
    REQUIRE(s.dim() == 8);
    REQUIRE(s.amplitude(0) == cdouble{1.0, 0.0});
    REQUIRE(s.norm() == Approx(1.0));

    SECTION("rejects non-normalized amplitudes") {
        std::vector<cdouble> bad(8, cdouble{0.5, 0.0});
        REQUIRE_THROWS_AS(StateVector(3, std::move(bad)), InvariantViolation);
    }
    SECTION("rejects wrong amplitude count") {
        std::vector<cdouble> bad(4, cdouble{0.0, 0.0});
        bad[0] = 1.0;
        REQUIRE_THROWS_AS(StateVector(3, std::move(bad)), std::invalid_argument);
    }
    SECTION("qubit 0 is the most significant bit") {
        REQUIRE(s.mask_of(0) == 4);
        REQUIRE(s.mask_of(2) == 1);
        REQUIRE_THROWS_AS(s.mask_of(3), std::invalid_argument);
    }
}

TEST_CASE("single-qubit gates") {
    SECTION("H|0> = |+>") {
        StateVector s = apply_1q(StateVector(1), gates::H, 0);
        REQUIRE(std::abs(s.amplitude(0) - cdouble{M_SQRT1_2, 0}) < kTol);
        REQUIRE(std::abs(s.amplitude(1) - cdouble{M_SQRT1_2, 0}) < kTol);
    }
    SECTION("S H |0> = |R>") {
        StateVector s = apply_1q(apply_1q(StateVector(1), gates::H, 0), gates::S, 0);
        REQUIRE(std::abs(s.amplitude(0) - kets::r()[0]) < kTol);
        REQUIRE(std::abs(s.amplitude(1) - kets::r()[1]) < kTol);
    }
    SECTION("X is an involution on a random state") {
        StateVector s = oracle::random_state(3, 11);
        StateVector back = apply_1q(apply_1q(s, gates::X, 1), gates::X, 1);
        for (std::size_t i = 0; i < s.dim(); ++i) {
            REQUIRE(std::abs(back.amplitude(i) - s.amplitude(i)) < kTol);
        }
    }
    SECTION("matches the embedded-matrix oracle") {
        for (std::uint64_t seed : {1u, 2u, 3u}) {
            StateVector s = oracle::random_state(3, seed);
            const Eigen::Matrix2cd u = oracle::random_unitary(seed + 100);
            Unitary1Q gate({u(0, 0), u(0, 1), u(1, 0), u(1, 1)});
            for (std::size_t q = 0; q < 3; ++q) {
                const Eigen::VectorXcd expect =
                    oracle::embed_1q(3, q, u) * oracle::to_vector(s);
                const Eigen::VectorXcd got = oracle::to_vector(apply_1q(s, gate, q));
                REQUIRE((expect - got).cwiseAbs().maxCoeff() < 1e-10);
            }
        }
    }
    SECTION("rejects non-unitary matrices") {
        REQUIRE_THROWS_AS(Unitary1Q({cdouble{1, 0}, {0, 0}, {0, 0}, {2, 0}}), InvariantViolation);
    }
    SECTION("rejects out-of-range qubit") {
        REQUIRE_THROWS_AS(apply_1q(StateVector(2), gates::X, 2), std::invalid_argument);
    }
}

TEST_CASE("two-qubit gates") {
    SECTION("CZ flips the |11> amplitude only") {
        StateVector s(2, {cdouble{0.5, 0}, {0.5, 0}, {0.5, 0}, {0.5, 0}});
        StateVector out = apply_cz(s, 0, 1);
        REQUIRE(out.amplitude(0) == cdouble{0.5, 0});
        REQUIRE(out.amplitude(1) == cdouble{0.5, 0});
        REQUIRE(out.amplitude(2) == cdouble{0.5, 0});
        REQUIRE(out.amplitude(3) == cdouble{-0.5, 0});
    }
    SECTION("CZ is symmetric and matches the oracle") {
        StateVector s = oracle::random_state(4, 5);
        Eigen::Matrix4cd cz = Eigen::Matrix4cd::Identity();
        cz(3, 3) = -1.0;
        for (auto [a, b] : {std::pair<std::size_t, std::size_t>{0, 2}, {3, 1}, {2, 3}}) {
            const Eigen::VectorXcd expect =
                oracle::embed_2q(4, a, b, cz) * oracle::to_vector(s);
            const Eigen::VectorXcd got_ab = oracle::to_vector(apply_cz(s, a, b));
            const Eigen::VectorXcd got_ba = oracle::to_vector(apply_cz(s, b, a));
            REQUIRE((expect - got_ab).cwiseAbs().maxCoeff() < 1e-10);
            REQUIRE((expect - got_ba).cwiseAbs().maxCoeff() < 1e-10);
        }
    }
    SECTION("CNOT matches the oracle on both qubit orders") {
        StateVector s = oracle::random_state(3, 7);
        Eigen::Matrix4cd cn = Eigen::Matrix4cd::Zero();
        cn(0, 0) = cn(1, 1) = cn(2, 3) = cn(3, 2) = 1.0;
        for (auto [a, b] : {std::pair<std::size_t, std::size_t>{0, 1}, {2, 0}}) {
            const Eigen::VectorXcd expect =
                oracle::embed_2q(3, a, b, cn) * oracle::to_vector(s);
            const Eigen::VectorXcd got = oracle::to_vector(apply_2q(s, gates::CNOT, a, b));
            REQUIRE((expect - got).cwiseAbs().maxCoeff() < 1e-10);
        }
    }
    SECTION("identical qubit indices are rejected") {
        REQUIRE_THROWS_AS(apply_cz(StateVector(2), 1, 1), std::invalid_argument);
        REQUIRE_THROWS_AS(apply_2q(StateVector(2), gates::CNOT, 0, 0), std::invalid_argument);
    }
    SECTION("norm is preserved by random circuits") {
        StateVector s = oracle::random_state(4, 9);
        for (std::uint64_t k = 0; k < 8; ++k) {
            const Eigen::Matrix2cd u = oracle::random_unitary(40 + k);
            s = apply_1q(s, Unitary1Q({u(0, 0), u(0, 1), u(1, 0), u(1, 1)}), k % 4);
            s = apply_cz(s, k % 4, (k + 1) % 4);
            REQUIRE(s.norm() == Approx(1.0).margin(1e-12));
        }
    }
}

TEST_CASE("pauli strings and expectations") {
    SECTION("parse and print round-trip") {
        const PauliString p = PauliString::parse("IXZY");
        REQUIRE(p.str() == "IXZY");
        REQUIRE(p.at(3) == Pauli::Y);
        REQUIRE_THROWS_AS(PauliString::parse("AB"), std::invalid_argument);
        REQUIRE_THROWS_AS(PauliString::parse(""), std::invalid_argument);
    }
    SECTION("known expectations") {
        StateVector plus = apply_1q(StateVector(1), gates::H, 0);
        REQUIRE(expectation(plus, PauliString::parse("X")) == Approx(1.0));
        REQUIRE(expectation(StateVector(1), PauliString::parse("X")) == Approx(0.0).margin(kTol));
        REQUIRE(expectation(StateVector(1), PauliString::parse("Z")) == Approx(1.0));
        REQUIRE(expectation(StateVector(1), PauliString::parse("I")) == Approx(1.0));
    }
    SECTION("matches the matrix oracle on random states") {
        for (const char *text : {"XYZ", "IZX", "YYI", "ZZZ"}) {
            const PauliString p = PauliString::parse(text);
            for (std::uint64_t seed : {21u, 22u}) {
                StateVector s = oracle::random_state(3, seed);
                const Eigen::VectorXcd v = oracle::to_vector(s);
                const cdouble expect = (v.adjoint() * oracle::pauli_string_matrix(p) * v)(0);
                REQUIRE(expectation(s, p) == Approx(expect.real()).margin(1e-10));
            }
        }
    }
    SECTION("length mismatch is rejected") {
        REQUIRE_THROWS_AS(expectation(StateVector(2), PauliString::parse("X")),
                          std::invalid_argument);
    }
}

TEST_CASE("projective measurement") {
    SECTION("|+> in Z: both outcomes at 1/2") {
        StateVector plus = apply_1q(StateVector(1), gates::H, 0);
        const MeasurementSplit split = measure(plus, 0, Basis::Z);
        REQUIRE(split.plus.probability == Approx(0.5));
        REQUIRE(split.minus.probability == Approx(0.5));
        REQUIRE(split.plus.post_state.has_value());
        REQUIRE(std::abs(split.plus.post_state->amplitude(0) - cdouble{1, 0}) < kTol);
    }
    SECTION("|+> in X: deterministic +1, absent -1 branch") {
        StateVector plus = apply_1q(StateVector(1), gates::H, 0);
        const MeasurementSplit split = measure(plus, 0, Basis::X);
        REQUIRE(split.plus.probability == Approx(1.0));
        REQUIRE(split.minus.probability == Approx(0.0).margin(kTol));
        REQUIRE_FALSE(split.minus.post_state.has_value());
    }
    SECTION("|R> in X: both outcomes at 1/2") {
        StateVector r(1, {kets::r()[0], kets::r()[1]});
        const MeasurementSplit split = measure(r, 0, Basis::X);
        REQUIRE(split.plus.probability == Approx(0.5));
        REQUIRE(split.minus.probability == Approx(0.5));
    }
    SECTION("value +1 maps to bit 0 on entangled registers") {
        // Bell pair: measuring qubit 0 in Z with outcome +1 collapses
        // qubit 1 to |0>.
        StateVector bell = apply_2q(apply_1q(StateVector(2), gates::H, 0), gates::CNOT, 0, 1);
        const MeasurementSplit split = measure(bell, 0, Basis::Z);
        REQUIRE(split.plus.probability == Approx(0.5));
        REQUIRE(std::abs(split.plus.post_state->amplitude(0) - cdouble{1, 0}) < kTol);
        REQUIRE(std::abs(split.minus.post_state->amplitude(3) - cdouble{1, 0}) < kTol);
    }
    SECTION("projector reconstruction matches the oracle") {
        for (Basis basis : {Basis::Z, Basis::X}) {
            StateVector s = oracle::random_state(3, 33);
            const Eigen::VectorXcd v = oracle::to_vector(s);
            for (std::size_t q = 0; q < 3; ++q) {
                const MeasurementSplit split = measure(s, q, basis);
                const Eigen::Matrix2cd blade =
                    basis == Basis::Z ? oracle::pauli('Z') : oracle::pauli('X');
                for (const MeasurementOutcome *o : {&split.plus, &split.minus}) {
                    const Eigen::MatrixXcd proj = oracle::embed_1q(
                        3, q,
                        Eigen::Matrix2cd(0.5 * (Eigen::Matrix2cd::Identity() +
                                                static_cast<double>(o->value) * blade)));
                    const Eigen::VectorXcd pv = proj * v;
                    REQUIRE(o->probability == Approx(pv.squaredNorm()).margin(1e-10));
                    if (o->post_state) {
                        const Eigen::VectorXcd got = oracle::to_vector(*o->post_state);
                        const Eigen::VectorXcd expect = pv / pv.norm();
                        REQUIRE((expect - got).cwiseAbs().maxCoeff() < 1e-10);
                    }
                }
                REQUIRE(split.plus.probability + split.minus.probability == Approx(1.0));
            }
        }
    }
}

TEST_CASE("multinomial shot sampling") {
    SECTION("degenerate distribution puts all shots in one bucket") {
        const auto counts = sample_counts({1.0}, 8192, 7);
        REQUIRE(counts.size() == 1);
        REQUIRE(counts[0] == 8192);
    }
    SECTION("counts are conserved") {
        const auto counts = sample_counts({0.25, 0.25, 0.5}, 10000, 11);
        REQUIRE(counts[0] + counts[1] + counts[2] == 10000);
    }
    SECTION("deterministic per seed, different across seeds") {
        const auto a = sample_counts({0.3, 0.7}, 4096, 42);
        const auto b = sample_counts({0.3, 0.7}, 4096, 42);
        const auto c = sample_counts({0.3, 0.7}, 4096, 43);
        REQUIRE(a == b);
        REQUIRE(a != c);
    }
    SECTION("invalid distributions are rejected") {
        REQUIRE_THROWS_AS(sample_counts({0.5, -0.4}, 10, 1), std::invalid_argument);
        REQUIRE_THROWS_AS(sample_counts({0.5, 0.4}, 10, 1), std::invalid_argument);
        REQUIRE_THROWS_AS(sample_counts({}, 10, 1), std::invalid_argument);
        REQUIRE_THROWS_AS(sample_counts({1.0}, 0, 1), std::invalid_argument);
    }
    SECTION("tiny negative rounding noise is clamped") {
        const auto counts = sample_counts({1.0 + 5e-13, -5e-13}, 100, 3);
        REQUIRE(counts[0] == 100);
        REQUIRE(counts[1] == 0);
    }
    SECTION("frequencies stay within 5 sigma across many seeds") {
        const std::vector<double> p{0.1, 0.2, 0.3, 0.4};
        const std::uint64_t shots = 20000;
        for (std::uint64_t seed = 100; seed < 160; ++seed) {
            const auto counts = sample_counts(p, shots, seed);
            for (std::size_t i = 0; i < p.size(); ++i) {
                const double sigma = std::sqrt(p[i] * (1.0 - p[i]) * static_cast<double>(shots));
                const double dev =
                    std::abs(static_cast<double>(counts[i]) - p[i] * static_cast<double>(shots));
                REQUIRE(dev <= 5.0 * sigma);
            }
        }
    }
}

TEST_CASE("seed derivation") {
    SECTION("distinct indices yield distinct streams") {
        REQUIRE(derive_seed(42, 0) != derive_seed(42, 1));
        REQUIRE(derive_seed(42, 0) != derive_seed(43, 0));
        REQUIRE(derive_seed(42, 0, 1) != derive_seed(42, 1, 0));
    }
    SECTION("stable across calls") { REQUIRE(derive_seed(7, 3) == derive_seed(7, 3)); }
}

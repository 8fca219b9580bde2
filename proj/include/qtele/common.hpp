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
 * @file common.hpp
 * Shared numeric conventions, error types and deterministic RNG helpers.
 */
#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace qtele {

using cdouble = std::complex<double>;

/// Tolerance for structural invariants (norms, hermiticity, unitarity).
inline constexpr double kInvariantTol = 1e-10;
/// Tolerance for probability sums assembled from many branches.
inline constexpr double kProbSumTol = 1e-9;
/// Branches with probability at or below this are treated as impossible.
inline constexpr double kZeroProbTol = 1e-12;

/// Thrown when a numerical invariant that should hold by construction fails.
/// CLI maps this to exit code 2; configuration errors use std::invalid_argument.
struct InvariantViolation : std::runtime_error {
    explicit InvariantViolation(const std::string &what) : std::runtime_error(what) {}
};

/// Requested cluster size outside the range the correction calculus covers.
struct UnsupportedNError : std::invalid_argument {
    int n;
    explicit UnsupportedNError(int n_, const std::string &what)
        : std::invalid_argument(what), n(n_) {}
};

/// splitmix64 finalizer; bijective on 64-bit words.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Derives an independent child seed from (seed, index). Used to give every
/// (input, setting) pair and every sweep entry its own RNG stream so reports
/// are reproducible regardless of evaluation order.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    return mix64(mix64(seed) ^ mix64(index + 0x517cc1b727220a95ULL));
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    return derive_seed(derive_seed(seed, a), b);
}

/// Uniform double in [0, 1) with 53 random bits. Implemented directly on the
/// generator output so results are identical across standard libraries.
inline double uniform01(std::mt19937_64 &gen) {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

} // namespace qtele

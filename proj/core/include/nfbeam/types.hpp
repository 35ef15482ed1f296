// SPDX-License-Identifier: Apache-2.0
//
// nfbeam: near-field MIMO beam alignment in the wavenumber domain
// Copyright (C) 2026 The nfbeam authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef NFBEAM_TYPES_HPP
#define NFBEAM_TYPES_HPP

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <numbers>
#include <random>

namespace nfbeam
{
    using Complex = std::complex<double>;
    using CVector = Eigen::VectorXcd;
    using CMatrix = Eigen::MatrixXcd;
    using RVector = Eigen::VectorXd;
    using RMatrix = Eigen::MatrixXd;
    using Vec3 = Eigen::Vector3d;

    // All stochastic parts of the simulator draw from explicitly passed engines of this type.
    using Rng = std::mt19937_64;

    inline constexpr double kSpeedOfLight = 299792458.0; // [m/s]
    inline constexpr double kPi = std::numbers::pi;
    inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

    // Power conversion at the configuration boundary; internally everything is in watts.
    double dbm_to_watts(double dbm);
    double watts_to_dbm(double watts);

    // Independent stream seeds derived from one base seed (splitmix64 finalizer).
    std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

    // Circularly-symmetric complex Gaussian, real and imaginary parts each with variance/2.
    Complex complex_gaussian(Rng &rng, double variance);

    // Named RNG streams used by the simulator.
    namespace stream
    {
        inline constexpr std::uint64_t channel = 0x43484e4cULL;      // scatterers
        inline constexpr std::uint64_t init = 0x494e4954ULL;         // mapper weights
        inline constexpr std::uint64_t noise = 0x4e4f4953ULL;        // receiver noise
        inline constexpr std::uint64_t localization = 0x4c4f4341ULL; // position estimate error
        inline constexpr std::uint64_t random_policy = 0x52414e44ULL;
    }
}

#endif

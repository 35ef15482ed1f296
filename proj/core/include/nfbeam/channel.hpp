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

#ifndef NFBEAM_CHANNEL_HPP
#define NFBEAM_CHANNEL_HPP

#include "nfbeam/geometry.hpp"
#include "nfbeam/types.hpp"

#include <span>
#include <vector>

namespace nfbeam
{
    struct Scatterer
    {
        Vec3 position = Vec3::Zero(); // q_l, on the xz-plane
        Complex coefficient{};        // beta_l
    };

    // H = H_LoS + H_NLoS, all M x N (rows: UE antennas, columns: BS antennas).
    struct ChannelRealization
    {
        CMatrix matrix;
        CMatrix los_part;
        CMatrix nlos_part;
        std::vector<Scatterer> scatterers;
        std::uint64_t seed = 0;
    };

    // Pilot powers and receiver noise in watts. The BS pilot c_B travels on the
    // downlink and is received with bs_noise_power; c_U travels on the uplink with
    // ue_noise_power.
    struct PilotConfig
    {
        double bs_power = 0.1;        // P_B, 20 dBm
        double ue_power = 0.1;        // P_U, 20 dBm
        double bs_noise_power = 1e-9; // -60 dBm
        double ue_noise_power = 1e-9; // -60 dBm
        double pilot_phase = 0.0;     // [rad]

        Complex bs_pilot() const;
        Complex ue_pilot() const;
        void validate() const;

        bool operator==(const PilotConfig &) const = default;
    };

    // How the scatterer variance is referenced.
    //  - los: sigma_l^2 is the power of each scattered path relative to the LoS
    //    reference gain (lambda / (4 pi d_BU))^2.
    //  - absolute: beta_l ~ CN(0, sigma_l^2) with no further scaling.
    enum class NlosReference
    {
        los,
        absolute
    };

    struct ScatteringConfig
    {
        int count = 3;          // L
        double variance = 0.01; // sigma_l^2
        NlosReference reference = NlosReference::los;

        bool operator==(const ScatteringConfig &) const = default;
    };

    // Amplitude factor applied to the scatterer standard deviation.
    double nlos_reference_gain(const Scene &scene, NlosReference reference);

    // [H_LoS]_{m,n} = lambda / (4 pi |r_m - x_n|) exp(-j k0 |r_m - x_n|)
    CMatrix los_channel(const ArrayGeometry &bs, const ArrayGeometry &ue, double wavelength);

    // Positions uniform over x in [-d/2, d/2], z in [0.1 d, 0.9 d], y = 0;
    // coefficients i.i.d. CN(0, variance).
    std::vector<Scatterer> sample_scatterers(int count, const Scene &scene, double variance, Rng &rng);

    // [H_NLoS]_{m,n} = sum_l beta_l exp(-j k0 (|q_l - r_m| + |q_l - x_n|))
    CMatrix nlos_channel(const ArrayGeometry &bs, const ArrayGeometry &ue,
                         std::span<const Scatterer> scatterers, double wavenumber);

    ChannelRealization assemble_channel(const Scene &scene, const ScatteringConfig &scattering,
                                        std::uint64_t seed);

    enum class LinkDirection
    {
        downlink, // y = H p c + n, beam length N, output length M
        uplink    // y = H^T s c + n, beam length M, output length N
    };

    CVector transmit_receive(const CMatrix &channel, const CVector &beam, Complex pilot,
                             double noise_power, LinkDirection direction, Rng &rng);
}

#endif

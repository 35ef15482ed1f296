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

#include "nfbeam/channel.hpp"
#include "nfbeam/error.hpp"

#include <cmath>
#include <string>

namespace nfbeam
{
    namespace
    {
        constexpr double kCoincidence = 1e-12; // [m]

        void check_pilot_power(double power, const char *name)
        {
            if (!(power >= 0.0) || !std::isfinite(power))
                throw Error(ErrorKind::config, std::string(name) + " must be non-negative");
        }
    }

    Complex PilotConfig::bs_pilot() const
    {
        return std::polar(std::sqrt(bs_power), pilot_phase);
    }

    Complex PilotConfig::ue_pilot() const
    {
        return std::polar(std::sqrt(ue_power), pilot_phase);
    }

    void PilotConfig::validate() const
    {
        check_pilot_power(bs_power, "bs_power");
        check_pilot_power(ue_power, "ue_power");
        check_pilot_power(bs_noise_power, "bs_noise_power");
        check_pilot_power(ue_noise_power, "ue_noise_power");
    }

    double nlos_reference_gain(const Scene &scene, NlosReference reference)
    {
        if (reference == NlosReference::absolute)
            return 1.0;
        return scene.wavelength() / (4.0 * kPi * scene.config.distance);
    }

    CMatrix los_channel(const ArrayGeometry &bs, const ArrayGeometry &ue, double wavelength)
    {
        if (!(wavelength > 0.0))
            throw Error(ErrorKind::argument, "wavelength must be positive");
        const double k0 = kTwoPi / wavelength;
        CMatrix h(ue.num_antennas, bs.num_antennas);
        for (int n = 0; n < bs.num_antennas; ++n)
        {
            for (int m = 0; m < ue.num_antennas; ++m)
            {
                const double r = (ue.positions.col(m) - bs.positions.col(n)).norm();
                if (r < kCoincidence)
                    throw Error(ErrorKind::singular_geometry, "BS and UE antennas coincide");
                h(m, n) = std::polar(wavelength / (4.0 * kPi * r), -k0 * r);
            }
        }
        return h;
    }

    std::vector<Scatterer> sample_scatterers(int count, const Scene &scene, double variance, Rng &rng)
    {
        if (count < 0)
            throw Error(ErrorKind::argument, "scatterer count must be non-negative");
        if (!(variance >= 0.0))
            throw Error(ErrorKind::argument, "scatterer variance must be non-negative");

        const double d = scene.config.distance;
        std::uniform_real_distribution<double> along_x(-0.5 * d, 0.5 * d);
        std::uniform_real_distribution<double> along_z(0.1 * d, 0.9 * d);

        std::vector<Scatterer> out;
        out.reserve(static_cast<std::size_t>(count));
        for (int l = 0; l < count; ++l)
        {
            Scatterer s;
            const double x = along_x(rng);
            const double z = along_z(rng);
            s.position = Vec3(x, 0.0, z);
            s.coefficient = complex_gaussian(rng, variance);
            out.push_back(s);
        }
        return out;
    }

    CMatrix nlos_channel(const ArrayGeometry &bs, const ArrayGeometry &ue,
                         std::span<const Scatterer> scatterers, double wavenumber)
    {
        CMatrix h = CMatrix::Zero(ue.num_antennas, bs.num_antennas);
        CVector a_bs(bs.num_antennas);
        CVector a_ue(ue.num_antennas);
        for (const auto &s : scatterers)
        {
            for (int n = 0; n < bs.num_antennas; ++n)
            {
                const double r = (s.position - bs.positions.col(n)).norm();
                if (r < kCoincidence)
                    throw Error(ErrorKind::singular_geometry, "scatterer coincides with a BS antenna");
                a_bs(n) = std::polar(1.0, -wavenumber * r);
            }
            for (int m = 0; m < ue.num_antennas; ++m)
            {
                const double r = (s.position - ue.positions.col(m)).norm();
                if (r < kCoincidence)
                    throw Error(ErrorKind::singular_geometry, "scatterer coincides with a UE antenna");
                a_ue(m) = std::polar(1.0, -wavenumber * r);
            }
            h.noalias() += s.coefficient * a_ue * a_bs.transpose();
        }
        return h;
    }

    ChannelRealization assemble_channel(const Scene &scene, const ScatteringConfig &scattering,
                                        std::uint64_t seed)
    {
        const double gain = nlos_reference_gain(scene, scattering.reference);
        Rng rng(seed);

        ChannelRealization ch;
        ch.seed = seed;
        ch.los_part = los_channel(scene.bs, scene.ue, scene.wavelength());
        ch.scatterers = sample_scatterers(scattering.count, scene, scattering.variance * gain * gain, rng);
        ch.nlos_part = nlos_channel(scene.bs, scene.ue, ch.scatterers, scene.wavenumber());
        ch.matrix = ch.los_part + ch.nlos_part;
        return ch;
    }

    CVector transmit_receive(const CMatrix &channel, const CVector &beam, Complex pilot,
                             double noise_power, LinkDirection direction, Rng &rng)
    {
        const bool down = direction == LinkDirection::downlink;
        const Eigen::Index expected = down ? channel.cols() : channel.rows();
        if (beam.size() != expected)
            throw Error(ErrorKind::dimension, "beam length " + std::to_string(beam.size()) +
                                                  " does not match " + std::to_string(expected) + " antennas");
        if (!(noise_power >= 0.0))
            throw Error(ErrorKind::argument, "noise power must be non-negative");

        CVector y = down ? CVector(channel * beam * pilot) : CVector(channel.transpose() * beam * pilot);
        if (noise_power > 0.0)
        {
            for (Eigen::Index i = 0; i < y.size(); ++i)
                y(i) += complex_gaussian(rng, noise_power);
        }
        return y;
    }
}

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

#ifndef NFBEAM_GEOMETRY_HPP
#define NFBEAM_GEOMETRY_HPP

#include "nfbeam/types.hpp"

namespace nfbeam
{
    // Uniform linear array along the x-axis. Antenna indices run over
    // {-(K-1)/2, ..., (K-1)/2}; column c of `positions` holds index c - (K-1)/2.
    struct ArrayGeometry
    {
        int num_antennas = 1;
        double spacing = 0.0;             // [m]
        Vec3 center = Vec3::Zero();       // [m]
        Vec3 axis = Vec3::UnitX();        // fixed to [1,0,0]
        Eigen::Matrix3Xd positions;       // [m], 3 x K

        int half_count() const { return (num_antennas - 1) / 2; }
        double aperture() const { return (num_antennas - 1) * spacing; }

        // Position of antenna `index`, index in [-half_count(), half_count()]
        Vec3 position(int index) const;

        // x-coordinates of all antennas in column order
        RVector x_coordinates() const { return positions.row(0).transpose(); }
    };

    // Throws Error(invalid_geometry) for even or non-positive counts and non-positive spacing.
    ArrayGeometry build_ula(int count, double spacing, const Vec3 &center);

    // Rigid shift of a whole array
    ArrayGeometry translate(const ArrayGeometry &geometry, const Vec3 &offset);

    struct SceneConfig
    {
        double carrier_frequency = 28e9; // [Hz]
        double distance = 15.0;          // center-to-center d_BU [m]
        double angle = kPi / 2.0;        // UE center angle to the x-axis [rad]
        int bs_antennas = 201;
        int ue_antennas = 201;
        double spacing_fraction = 0.5; // antenna spacing in wavelengths

        double wavelength() const { return kSpeedOfLight / carrier_frequency; }
        double wavenumber() const { return kTwoPi / wavelength(); }

        // Throws Error(config) when out of range
        void validate() const;

        bool operator==(const SceneConfig &) const = default;
    };

    struct Scene
    {
        SceneConfig config;
        ArrayGeometry bs;
        ArrayGeometry ue;

        double wavelength() const { return config.wavelength(); }
        double wavenumber() const { return config.wavenumber(); }
    };

    // BS centered at the origin, UE centered at d_BU [cos(angle), 0, sin(angle)].
    Scene build_scene(const SceneConfig &config);

    // 2 (D_B + D_U)^2 / lambda
    double rayleigh_distance(const Scene &scene);

    // True iff the center distance is below the Rayleigh distance.
    bool near_field_check(const Scene &scene);
}

#endif

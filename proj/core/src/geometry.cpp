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

#include "nfbeam/geometry.hpp"
#include "nfbeam/error.hpp"

#include <cmath>
#include <string>

namespace nfbeam
{
    Vec3 ArrayGeometry::position(int index) const
    {
        if (index < -half_count() || index > half_count())
            throw Error(ErrorKind::argument, "antenna index " + std::to_string(index) + " out of range");
        return positions.col(index + half_count());
    }

    ArrayGeometry build_ula(int count, double spacing, const Vec3 &center)
    {
        if (count < 1 || count % 2 == 0)
            throw Error(ErrorKind::invalid_geometry,
                        "antenna count must be odd and positive, got " + std::to_string(count));
        if (!(spacing > 0.0) || !std::isfinite(spacing))
            throw Error(ErrorKind::invalid_geometry, "antenna spacing must be positive");
        if (!center.allFinite())
            throw Error(ErrorKind::invalid_geometry, "array center must be finite");

        ArrayGeometry g;
        g.num_antennas = count;
        g.spacing = spacing;
        g.center = center;
        g.axis = Vec3::UnitX();
        g.positions.resize(3, count);
        const int half = g.half_count();
        for (int c = 0; c < count; ++c)
        {
            const int n = c - half;
            g.positions.col(c) = center + Vec3(n * spacing, 0.0, 0.0);
        }
        return g;
    }

    ArrayGeometry translate(const ArrayGeometry &geometry, const Vec3 &offset)
    {
        return build_ula(geometry.num_antennas, geometry.spacing, geometry.center + offset);
    }

    void SceneConfig::validate() const
    {
        if (!(carrier_frequency > 0.0) || !std::isfinite(carrier_frequency))
            throw Error(ErrorKind::config, "carrier_frequency must be positive");
        if (!(distance > 0.0) || !std::isfinite(distance))
            throw Error(ErrorKind::config, "distance must be positive");
        if (!(angle > 0.0 && angle < kPi))
            throw Error(ErrorKind::config, "angle must lie in (0, pi)");
        if (bs_antennas < 1 || bs_antennas % 2 == 0 || ue_antennas < 1 || ue_antennas % 2 == 0)
            throw Error(ErrorKind::config, "antenna counts must be odd and positive");
        if (!(spacing_fraction > 0.0) || !std::isfinite(spacing_fraction))
            throw Error(ErrorKind::config, "spacing_fraction must be positive");
    }

    Scene build_scene(const SceneConfig &config)
    {
        config.validate();
        const double spacing = config.spacing_fraction * config.wavelength();
        const Vec3 ue_center(config.distance * std::cos(config.angle), 0.0,
                             config.distance * std::sin(config.angle));
        return Scene{config,
                     build_ula(config.bs_antennas, spacing, Vec3::Zero()),
                     build_ula(config.ue_antennas, spacing, ue_center)};
    }

    double rayleigh_distance(const Scene &scene)
    {
        const double d = scene.bs.aperture() + scene.ue.aperture();
        return 2.0 * d * d / scene.wavelength();
    }

    bool near_field_check(const Scene &scene)
    {
        return scene.config.distance < rayleigh_distance(scene);
    }
}

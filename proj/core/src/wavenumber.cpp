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

#include "nfbeam/wavenumber.hpp"
#include "nfbeam/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace nfbeam
{
    namespace
    {
        // Aperture ratios like (200 * lambda/2) / lambda land a few ulps below the integer.
        constexpr double kIndexSlack = 1e-9;

        int max_index(double aperture, double wavelength)
        {
            return static_cast<int>(std::floor(aperture / wavelength + kIndexSlack));
        }
    }

    WavenumberIndexSet full_index_set(double aperture, double wavelength)
    {
        if (!(aperture >= 0.0) || !(wavelength > 0.0))
            throw Error(ErrorKind::argument, "aperture must be non-negative and wavelength positive");

        WavenumberIndexSet set;
        set.aperture = aperture;
        const int j_max = max_index(aperture, wavelength);
        set.indices.reserve(static_cast<std::size_t>(2 * j_max + 1));
        for (int j = -j_max; j <= j_max; ++j)
            set.indices.push_back(j);
        return set;
    }

    WavenumberIndexSet los_truncated_index_set(const ArrayGeometry &own, const ArrayGeometry &other,
                                               double wavelength, ArraySide side)
    {
        const double k0 = kTwoPi / wavelength;
        const ArrayGeometry &bs = side == ArraySide::bs ? own : other;
        const ArrayGeometry &ue = side == ArraySide::bs ? other : own;

        double cos_min = std::numeric_limits<double>::infinity();
        double cos_max = -std::numeric_limits<double>::infinity();
        for (int n = 0; n < bs.num_antennas; ++n)
        {
            for (int m = 0; m < ue.num_antennas; ++m)
            {
                const Vec3 d = bs.positions.col(n) - ue.positions.col(m);
                const double r = d.norm();
                if (r < 1e-12)
                    throw Error(ErrorKind::singular_geometry, "BS and UE arrays coincide");
                const double c = d.x() / r;
                cos_min = std::min(cos_min, c);
                cos_max = std::max(cos_max, c);
            }
        }

        WavenumberIndexSet full = full_index_set(own.aperture(), wavelength);
        WavenumberIndexSet set;
        set.aperture = full.aperture;
        set.truncated = true;
        set.k_min = k0 * cos_min;
        set.k_max = k0 * cos_max;

        for (int j : full.indices)
        {
            const double k = own.aperture() > 0.0 ? kTwoPi * j / own.aperture() : 0.0;
            if (k >= set.k_min && k <= set.k_max)
                set.indices.push_back(j);
        }
        if (set.indices.empty())
        {
            set.indices.push_back(0);
            set.clamped = true;
        }
        return set;
    }

    TransformOperator build_transform(const ArrayGeometry &geometry, const WavenumberIndexSet &index_set,
                                      ArraySide side)
    {
        const double aperture = geometry.aperture();
        if (std::abs(index_set.aperture - aperture) > 1e-9 * std::max(1.0, aperture))
            throw Error(ErrorKind::argument, "index set aperture does not match the array aperture");
        if (index_set.indices.empty())
            throw Error(ErrorKind::argument, "index set is empty");

        const auto k = geometry.num_antennas;
        const double scale = 1.0 / std::sqrt(static_cast<double>(k));
        const RVector x = geometry.x_coordinates();

        TransformOperator op;
        op.index_set = index_set;
        op.side = side;
        op.matrix.resize(k, static_cast<Eigen::Index>(index_set.size()));
        for (std::size_t c = 0; c < index_set.size(); ++c)
        {
            const double kx = aperture > 0.0 ? kTwoPi * index_set.indices[c] / aperture : 0.0;
            for (int n = 0; n < k; ++n)
                op.matrix(n, static_cast<Eigen::Index>(c)) = std::polar(scale, kx * x(n));
        }
        return op;
    }

    WavenumberChannel project_to_wavenumber(const CMatrix &channel, const TransformOperator &ue,
                                            const TransformOperator &bs)
    {
        if (ue.matrix.rows() != channel.rows() || bs.matrix.rows() != channel.cols())
            throw Error(ErrorKind::dimension, "transform sizes do not match the " + std::to_string(channel.rows()) +
                                                  "x" + std::to_string(channel.cols()) + " channel");
        WavenumberChannel out;
        out.scaling = 1.0 / std::sqrt(static_cast<double>(channel.rows() * channel.cols()));
        out.matrix = out.scaling * (ue.matrix.adjoint() * channel * bs.matrix);
        return out;
    }

    CVector beam_to_antenna(const TransformOperator &transform, const CVector &wavenumber_beam, bool conjugate)
    {
        if (wavenumber_beam.size() != transform.matrix.cols())
            throw Error(ErrorKind::dimension, "wavenumber beam length " + std::to_string(wavenumber_beam.size()) +
                                                  " does not match index set size " +
                                                  std::to_string(transform.matrix.cols()));
        if (conjugate)
            return transform.matrix.conjugate() * wavenumber_beam;
        return transform.matrix * wavenumber_beam;
    }
}

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

#ifndef NFBEAM_WAVENUMBER_HPP
#define NFBEAM_WAVENUMBER_HPP

#include "nfbeam/geometry.hpp"
#include "nfbeam/types.hpp"

#include <vector>

namespace nfbeam
{
    enum class ArraySide
    {
        bs,
        ue
    };

    // Integer spatial-frequency indices j, each standing for the wavenumber 2 pi j / D.
    struct WavenumberIndexSet
    {
        std::vector<int> indices; // sorted ascending
        double aperture = 0.0;    // D of the array the set belongs to [m]
        bool truncated = false;
        double k_min = 0.0; // [rad/m], LoS bounds, only meaningful when truncated
        double k_max = 0.0;
        bool clamped = false; // bounds admitted no integer; {0} was substituted

        std::size_t size() const { return indices.size(); }
    };

    // Column i of `matrix` is (1/sqrt(K)) exp(j 2 pi index_i x / D) over the K antennas.
    struct TransformOperator
    {
        CMatrix matrix;
        WavenumberIndexSet index_set;
        ArraySide side = ArraySide::bs;
    };

    // matrix = scaling * Phi_U^H H Phi_B
    struct WavenumberChannel
    {
        CMatrix matrix;
        double scaling = 1.0;
    };

    // {j : (lambda j / D)^2 <= 1}
    WavenumberIndexSet full_index_set(double aperture, double wavelength);

    // LoS sub-space of `own` as illuminated by `other`. The bounds are k0 times the
    // extreme x-direction cosines of the UE -> BS unit vector over all antenna pairs,
    // which is where the LoS energy of Phi_U^H H Phi_B lands for both sides.
    WavenumberIndexSet los_truncated_index_set(const ArrayGeometry &own, const ArrayGeometry &other,
                                               double wavelength, ArraySide side);

    TransformOperator build_transform(const ArrayGeometry &geometry, const WavenumberIndexSet &index_set,
                                      ArraySide side);

    // H~ = (1/sqrt(MN)) Phi_U^H H Phi_B
    WavenumberChannel project_to_wavenumber(const CMatrix &channel, const TransformOperator &ue,
                                            const TransformOperator &bs);

    // p = Phi p' (conjugate = false) or s = conj(Phi) s' (conjugate = true)
    CVector beam_to_antenna(const TransformOperator &transform, const CVector &wavenumber_beam, bool conjugate);
}

#endif

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

#ifndef NFBEAM_BASELINES_HPP
#define NFBEAM_BASELINES_HPP

#include "nfbeam/geometry.hpp"
#include "nfbeam/types.hpp"

namespace nfbeam
{
    // lambda_max(H^H H), from the Hermitian eigen-solver on the smaller Gram matrix.
    double largest_eigenvalue(const CMatrix &channel);

    // log2(1 + power lambda_max(H^H H) / noise_power)
    double svd_optimal_bound(const CMatrix &channel, double power, double noise_power);

    struct BeamPair
    {
        CVector probing; // N
        CVector sensing; // M
    };

    // Constant-modulus beams with i.i.d. uniform phases.
    BeamPair random_beams(int bs_antennas, int ue_antennas, Rng &rng);

    // Rigid displacement of the array center on the xz-plane; magnitude uniform in
    // [0, error_magnitude], direction uniform.
    ArrayGeometry perturb_geometry(const ArrayGeometry &geometry, double error_magnitude, Rng &rng);
}

#endif

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

#include "nfbeam/baselines.hpp"
#include "nfbeam/error.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace nfbeam
{
    double largest_eigenvalue(const CMatrix &channel)
    {
        if (channel.size() == 0)
            return 0.0;
        const CMatrix gram = channel.rows() <= channel.cols() ? CMatrix(channel * channel.adjoint())
                                                              : CMatrix(channel.adjoint() * channel);
        Eigen::SelfAdjointEigenSolver<CMatrix> solver(gram, Eigen::EigenvaluesOnly);
        if (solver.info() != Eigen::Success)
            throw Error(ErrorKind::numerical_check, "eigen-solver did not converge");
        return std::max(0.0, solver.eigenvalues().maxCoeff());
    }

    double svd_optimal_bound(const CMatrix &channel, double power, double noise_power)
    {
        if (!(noise_power >= 0.0) || !(power >= 0.0))
            throw Error(ErrorKind::argument, "powers must be non-negative");
        const double lambda = largest_eigenvalue(channel);
        if (lambda == 0.0 || power == 0.0)
            return 0.0;
        return std::log2(1.0 + power * lambda / noise_power);
    }

    BeamPair random_beams(int bs_antennas, int ue_antennas, Rng &rng)
    {
        if (bs_antennas < 1 || ue_antennas < 1)
            throw Error(ErrorKind::argument, "beam lengths must be positive");
        std::uniform_real_distribution<double> phase(0.0, kTwoPi);
        auto draw = [&](int k) {
            const double mod = 1.0 / std::sqrt(static_cast<double>(k));
            CVector b(k);
            for (int i = 0; i < k; ++i)
                b(i) = std::polar(mod, phase(rng));
            return b;
        };
        BeamPair out;
        out.probing = draw(bs_antennas);
        out.sensing = draw(ue_antennas);
        return out;
    }

    ArrayGeometry perturb_geometry(const ArrayGeometry &geometry, double error_magnitude, Rng &rng)
    {
        if (!(error_magnitude >= 0.0))
            throw Error(ErrorKind::argument, "error magnitude must be non-negative");
        if (error_magnitude == 0.0)
            return geometry;
        std::uniform_real_distribution<double> radius(0.0, error_magnitude);
        std::uniform_real_distribution<double> direction(0.0, kTwoPi);
        const double r = radius(rng);
        const double a = direction(rng);
        return translate(geometry, Vec3(r * std::cos(a), 0.0, r * std::sin(a)));
    }
}

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

#include "nfbeam/diagnostics.hpp"
#include "nfbeam/error.hpp"

#include <algorithm>
#include <cmath>

namespace nfbeam
{
    namespace
    {
        // Gradients smaller than this are compared on an absolute scale; central
        // differences carry ~1e-10 round-off, which is not a relative error below it.
        constexpr double kGradientFloor = 1e-3;

        double relative_error(double a, double b)
        {
            return std::abs(a - b) / std::max({std::abs(a), std::abs(b), kGradientFloor});
        }

        double check_one(MapperParameters params, const CVector &received, const BeamMap &map, double step,
                         std::size_t &checked)
        {
            const MapperParameters grad = loss_and_gradient(params, received, map).gradient;
            double worst = 0.0;
            auto probe = [&](double &theta, double analytic) {
                const double saved = theta;
                theta = saved + step;
                const double up = loss_and_gradient(params, received, map).loss;
                theta = saved - step;
                const double down = loss_and_gradient(params, received, map).loss;
                theta = saved;
                worst = std::max(worst, relative_error(analytic, (up - down) / (2.0 * step)));
                ++checked;
            };
            for (std::size_t l = 0; l < params.layers.size(); ++l)
            {
                auto &layer = params.layers[l];
                for (Eigen::Index i = 0; i < layer.weight.size(); ++i)
                    probe(layer.weight.data()[i], grad.layers[l].weight.data()[i]);
                for (Eigen::Index i = 0; i < layer.bias.size(); ++i)
                    probe(layer.bias.data()[i], grad.layers[l].bias.data()[i]);
            }
            return worst;
        }
    }

    GradientCheckReport check_gradients(const std::vector<int> &layer_dims, int instances, std::uint64_t seed,
                                        double step)
    {
        if (instances < 1)
            throw Error(ErrorKind::argument, "at least one instance is required");
        GradientCheckReport report;
        report.instances = instances;
        Rng rng(seed);
        std::normal_distribution<double> normal(0.0, 1.0);

        for (int inst = 0; inst < instances; ++inst)
        {
            MapperParameters params = init_params(layer_dims, rng);
            for (auto &l : params.layers)
            {
                for (Eigen::Index i = 0; i < l.bias.size(); ++i)
                    l.bias(i) = 0.1 * normal(rng);
            }
            const Eigen::Index k = params.input_size();
            const Eigen::Index g = params.output_size();
            CVector received(k);
            for (Eigen::Index i = 0; i < k; ++i)
                received(i) = complex_gaussian(rng, 1.0);
            CMatrix phi(k, g);
            for (Eigen::Index i = 0; i < phi.size(); ++i)
                phi.data()[i] = complex_gaussian(rng, 1.0);

            std::vector<BeamMap> maps{BeamMap::from_matrix(phi, false), BeamMap::from_matrix(phi, true)};
            if (k == g)
                maps.push_back(BeamMap::identity(k));
            for (const auto &map : maps)
            {
                report.max_relative_error =
                    std::max(report.max_relative_error, check_one(params, received, map, step, report.parameters_checked));
            }
        }
        return report;
    }
}

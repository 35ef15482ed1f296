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

#ifndef NFBEAM_MAPPER_HPP
#define NFBEAM_MAPPER_HPP

#include "nfbeam/types.hpp"
#include "nfbeam/wavenumber.hpp"

#include <span>
#include <vector>

namespace nfbeam
{
    struct DenseLayer
    {
        RMatrix weight; // out x in
        RVector bias;   // out
    };

    // Real-valued MLP over [Re; Im] of a complex vector. Hidden layers use a
    // rectifier, the output layer is linear. The same type carries gradients.
    struct MapperParameters
    {
        std::vector<int> layer_dims; // real widths, first and last even
        std::vector<DenseLayer> layers;

        Eigen::Index input_size() const { return layer_dims.front() / 2; }  // complex
        Eigen::Index output_size() const { return layer_dims.back() / 2; }  // complex
        std::size_t parameter_count() const;
        bool all_finite() const;

        // Same shapes, all zero
        MapperParameters zeros_like() const;
    };

    struct OptimizerState
    {
        std::vector<DenseLayer> first_moment;
        std::vector<DenseLayer> second_moment;
        std::int64_t step_count = 0;
        double learning_rate = 0.005;
        double beta1 = 0.9;
        double beta2 = 0.999;
        double epsilon = 1e-8;

        static OptimizerState for_parameters(const MapperParameters &params, double learning_rate);
    };

    // {2 K_in, 128, 64, 2 K_out}
    std::vector<int> mapper_layer_dims(Eigen::Index input_complex, Eigen::Index output_complex);

    // Weights ~ U(-a, a), a = 1/sqrt(fan_in); biases zero.
    MapperParameters init_params(std::span<const int> layer_dims, Rng &rng);

    struct ForwardPass
    {
        std::vector<RVector> activations; // activations[0] is the input, then each hidden output
        RVector output;                   // linear output layer, length 2 K_out
    };

    ForwardPass forward_pass(const MapperParameters &params, const CVector &input);

    // Output recombined as first half real parts, second half imaginary parts.
    CVector forward(const MapperParameters &params, const CVector &input);

    // The map from the mapper output to an antenna-domain raw beam.
    class BeamMap
    {
    public:
        enum class Kind
        {
            identity,            // ablation: mapper output is the raw beam
            transform,           // BS: v = Phi z
            conjugate_transform  // UE: v = conj(Phi) z
        };

        static BeamMap identity(Eigen::Index size);
        static BeamMap bs(const TransformOperator &transform);
        static BeamMap ue(const TransformOperator &transform);
        static BeamMap from_matrix(const CMatrix &matrix, bool conjugate);

        Kind kind() const { return kind_; }
        Eigen::Index input_size() const;   // mapper output dimension
        Eigen::Index antenna_count() const;

        CVector apply(const CVector &z) const;
        // A^H g, the adjoint used in the backward pass
        CVector adjoint(const CVector &g) const;

    private:
        Kind kind_ = Kind::identity;
        Eigen::Index size_ = 0;
        CMatrix matrix_; // already conjugated for conjugate_transform
    };

    inline constexpr double kModulusFloor = 1e-12;

    struct LossGradient
    {
        double loss = 0.0;
        MapperParameters gradient;
        CVector beam; // constant-modulus beam (1/sqrt(K)) v ./ |v|
    };

    // L = (1/sqrt(K)) |(v ./ |v|)^T y| with v = A forward(params, y), y = received.
    // Elements with |v_i| < kModulusFloor are replaced by 1 and do not contribute gradient.
    LossGradient loss_and_gradient(const MapperParameters &params, const CVector &received, const BeamMap &map);

    // Adam with bias correction, moving parameters along +gradient.
    void ascent_step(MapperParameters &params, OptimizerState &state, const MapperParameters &gradient);
}

#endif

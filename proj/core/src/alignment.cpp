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

#include "nfbeam/alignment.hpp"
#include "nfbeam/baselines.hpp"
#include "nfbeam/error.hpp"
#include "nfbeam/mapper.hpp"
#include "nfbeam/wavenumber.hpp"

#include <cmath>
#include <string>

namespace nfbeam
{
    void AlignmentConfig::validate() const
    {
        scene.validate();
        pilot.validate();
        if (rounds < 1)
            throw Error(ErrorKind::argument, "rounds must be at least 1");
        if (scattering.count < 0 || !(scattering.variance >= 0.0))
            throw Error(ErrorKind::config, "scatterer count and variance must be non-negative");
        if (!(localization_error >= 0.0))
            throw Error(ErrorKind::config, "localization_error must be non-negative");
        if (!(bs_learning_rate > 0.0) || !(ue_learning_rate > 0.0))
            throw Error(ErrorKind::config, "learning rates must be positive");
    }

    CVector normalize_constant_modulus(const CVector &v)
    {
        const Eigen::Index k = v.size();
        CVector out(k);
        if (k == 0)
            return out;
        const double mod = 1.0 / std::sqrt(static_cast<double>(k));
        for (Eigen::Index i = 0; i < k; ++i)
        {
            const double a = std::abs(v(i));
            out(i) = a < kModulusFloor ? Complex(mod, 0.0) : v(i) * (mod / a);
        }
        return out;
    }

    double beam_gain(const CMatrix &channel, const CVector &sensing, const CVector &probing)
    {
        if (sensing.size() != channel.rows() || probing.size() != channel.cols())
            throw Error(ErrorKind::dimension, "beam lengths do not match the channel");
        const Complex amplitude = sensing.transpose() * (channel * probing);
        return std::norm(amplitude);
    }

    double throughput(const CMatrix &channel, const CVector &sensing, const CVector &probing,
                      double power, double noise_power)
    {
        return std::log2(1.0 + power * beam_gain(channel, sensing, probing) / noise_power);
    }

    AlignmentTrace run_alignment(const AlignmentConfig &config, const ChannelRealization &channel)
    {
        config.validate();
        const Scene scene = build_scene(config.scene);
        const CMatrix &h = channel.matrix;
        const Eigen::Index n = scene.bs.num_antennas;
        const Eigen::Index m = scene.ue.num_antennas;
        if (h.rows() != m || h.cols() != n)
            throw Error(ErrorKind::dimension, "channel is " + std::to_string(h.rows()) + "x" +
                                                  std::to_string(h.cols()) + ", scene needs " +
                                                  std::to_string(m) + "x" + std::to_string(n));

        Rng init_rng(derive_seed(config.seed, stream::init));
        Rng noise_rng(derive_seed(config.seed, stream::noise));
        Rng localization_rng(derive_seed(config.seed, stream::localization));

        BeamMap bs_map = BeamMap::identity(n);
        BeamMap ue_map = BeamMap::identity(m);
        if (config.use_wtm)
        {
            const double error = config.localization_error * config.scene.distance;
            const ArrayGeometry bs_est = perturb_geometry(scene.bs, error, localization_rng);
            const ArrayGeometry ue_est = perturb_geometry(scene.ue, error, localization_rng);
            const double lambda = scene.wavelength();
            bs_map = BeamMap::bs(build_transform(
                bs_est, los_truncated_index_set(bs_est, ue_est, lambda, ArraySide::bs), ArraySide::bs));
            ue_map = BeamMap::ue(build_transform(
                ue_est, los_truncated_index_set(ue_est, bs_est, lambda, ArraySide::ue), ArraySide::ue));
        }

        MapperParameters bs_params = init_params(mapper_layer_dims(n, bs_map.input_size()), init_rng);
        MapperParameters ue_params = init_params(mapper_layer_dims(m, ue_map.input_size()), init_rng);
        OptimizerState bs_opt = OptimizerState::for_parameters(bs_params, config.bs_learning_rate);
        OptimizerState ue_opt = OptimizerState::for_parameters(ue_params, config.ue_learning_rate);

        const PilotConfig &pilot = config.pilot;
        const Complex c_bs = pilot.bs_pilot();
        const Complex c_ue = pilot.ue_pilot();

        AlignmentTrace trace;
        trace.bs_beam_dim = bs_map.input_size();
        trace.ue_beam_dim = ue_map.input_size();
        trace.svd_bound = svd_optimal_bound(h, pilot.bs_power, pilot.bs_noise_power);

        CVector p = normalize_constant_modulus(bs_map.apply(forward(bs_params, CVector::Zero(n))));
        trace.initial_probing_beam = p;
        trace.rounds.reserve(static_cast<std::size_t>(config.rounds));

        for (int t = 1; t <= config.rounds; ++t)
        {
            RoundRecord rec;
            rec.round = t;

            const CVector y_ue =
                transmit_receive(h, p, c_bs, pilot.bs_noise_power, LinkDirection::downlink, noise_rng);
            rec.ue_updates_before_beam = ue_opt.step_count;
            LossGradient ue_step = loss_and_gradient(ue_params, y_ue, ue_map);
            ascent_step(ue_params, ue_opt, ue_step.gradient);
            const CVector s = std::move(ue_step.beam);

            const CVector y_bs =
                transmit_receive(h, s, c_ue, pilot.ue_noise_power, LinkDirection::uplink, noise_rng);
            rec.bs_updates_before_beam = bs_opt.step_count;
            LossGradient bs_step = loss_and_gradient(bs_params, y_bs, bs_map);
            ascent_step(bs_params, bs_opt, bs_step.gradient);
            p = std::move(bs_step.beam);

            rec.ue_loss = ue_step.loss;
            rec.bs_loss = bs_step.loss;
            rec.sensing_beam = s;
            rec.probing_beam = p;
            rec.beam_gain = beam_gain(h, s, p);
            rec.throughput = std::log2(1.0 + pilot.bs_power * rec.beam_gain / pilot.bs_noise_power);
            rec.bs_mapper_output = bs_params.output_size();
            rec.ue_mapper_output = ue_params.output_size();
            trace.rounds.push_back(std::move(rec));
        }

        trace.final_probing_beam = trace.rounds.back().probing_beam;
        trace.final_sensing_beam = trace.rounds.back().sensing_beam;
        return trace;
    }
}

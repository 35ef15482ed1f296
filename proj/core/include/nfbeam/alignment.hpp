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

#ifndef NFBEAM_ALIGNMENT_HPP
#define NFBEAM_ALIGNMENT_HPP

#include "nfbeam/channel.hpp"
#include "nfbeam/geometry.hpp"
#include "nfbeam/types.hpp"

#include <string>
#include <vector>

namespace nfbeam
{
    struct AlignmentConfig
    {
        SceneConfig scene;
        PilotConfig pilot;
        int rounds = 30; // T
        ScatteringConfig scattering;
        bool use_wtm = true;             // false: ablation, no transforms
        double localization_error = 0.0; // fraction of d_BU
        double bs_learning_rate = 0.005;
        double ue_learning_rate = 0.005;
        std::uint64_t seed = 0;

        void validate() const;

        bool operator==(const AlignmentConfig &) const = default;
    };

    struct RoundRecord
    {
        int round = 0;         // 1-based
        CVector probing_beam;  // p_{t+1}
        CVector sensing_beam;  // s_{t+1}
        double bs_loss = 0.0;  // evaluated before the BS update of this round
        double ue_loss = 0.0;  // evaluated before the UE update of this round
        double beam_gain = 0.0; // U(s_{t+1}, p_{t+1})
        double throughput = 0.0; // +inf on a noiseless downlink
        // Optimizer steps already applied when the beam of this round was produced
        std::int64_t bs_updates_before_beam = 0;
        std::int64_t ue_updates_before_beam = 0;
        Eigen::Index bs_mapper_output = 0;
        Eigen::Index ue_mapper_output = 0;
    };

    struct AlignmentTrace
    {
        std::vector<RoundRecord> rounds;
        CVector initial_probing_beam; // p_1, from the zero input
        CVector final_probing_beam;
        CVector final_sensing_beam;
        double svd_bound = 0.0;
        Eigen::Index bs_beam_dim = 0; // |G_k^(e)| or N in ablation
        Eigen::Index ue_beam_dim = 0;
    };

    // (1/sqrt(K)) v ./ |v|; elements below the modulus floor become 1/sqrt(K).
    CVector normalize_constant_modulus(const CVector &v);

    // U(s, p) = |s^T H p|^2
    double beam_gain(const CMatrix &channel, const CVector &sensing, const CVector &probing);

    // log2(1 + power |s^T H p|^2 / noise_power) [bits/s/Hz]
    double throughput(const CMatrix &channel, const CVector &sensing, const CVector &probing,
                      double power, double noise_power);

    // Ping-pong learning loop. Transforms are built from geometry displaced by the
    // configured localization error; the channel itself is never perturbed.
    AlignmentTrace run_alignment(const AlignmentConfig &config, const ChannelRealization &channel);

    // One JSON object per round plus the summary fields.
    std::string trace_to_json(const AlignmentTrace &trace);
    // round,bs_loss,ue_loss,beam_gain,throughput
    std::string trace_to_csv(const AlignmentTrace &trace);
}

#endif

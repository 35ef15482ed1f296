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
#include "format.hpp"

#include <json.hpp>

#include <sstream>

namespace nfbeam
{
    namespace
    {
        nlohmann::json beam_json(const CVector &beam)
        {
            nlohmann::json re = nlohmann::json::array();
            nlohmann::json im = nlohmann::json::array();
            for (Eigen::Index i = 0; i < beam.size(); ++i)
            {
                re.push_back(beam(i).real());
                im.push_back(beam(i).imag());
            }
            return {{"re", re}, {"im", im}};
        }
    }

    std::string trace_to_json(const AlignmentTrace &trace)
    {
        nlohmann::json rounds = nlohmann::json::array();
        for (const auto &r : trace.rounds)
        {
            rounds.push_back({{"round", r.round},
                              {"bs_loss", r.bs_loss},
                              {"ue_loss", r.ue_loss},
                              {"beam_gain", r.beam_gain},
                              {"throughput", r.throughput},
                              {"probing_beam", beam_json(r.probing_beam)},
                              {"sensing_beam", beam_json(r.sensing_beam)}});
        }
        nlohmann::json doc = {{"svd_bound", trace.svd_bound},
                              {"bs_beam_dim", trace.bs_beam_dim},
                              {"ue_beam_dim", trace.ue_beam_dim},
                              {"rounds", rounds},
                              {"final_probing_beam", beam_json(trace.final_probing_beam)},
                              {"final_sensing_beam", beam_json(trace.final_sensing_beam)}};
        return doc.dump(2) + "\n";
    }

    std::string trace_to_csv(const AlignmentTrace &trace)
    {
        using detail::format_double;
        std::ostringstream out;
        out << "round,bs_loss,ue_loss,beam_gain,throughput\n";
        for (const auto &r : trace.rounds)
        {
            out << r.round << ',' << format_double(r.bs_loss) << ',' << format_double(r.ue_loss) << ','
                << format_double(r.beam_gain) << ',' << format_double(r.throughput) << '\n';
        }
        return out.str();
    }
}

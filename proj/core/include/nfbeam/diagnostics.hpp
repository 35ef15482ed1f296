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

#ifndef NFBEAM_DIAGNOSTICS_HPP
#define NFBEAM_DIAGNOSTICS_HPP

#include "nfbeam/mapper.hpp"

#include <vector>

namespace nfbeam
{
    struct GradientCheckReport
    {
        double max_relative_error = 0.0;
        std::size_t parameters_checked = 0;
        int instances = 0;
    };

    // Compares reverse-mode gradients of the mapper loss with central differences
    // on random instances of the given architecture, for all three beam maps.
    GradientCheckReport check_gradients(const std::vector<int> &layer_dims, int instances,
                                        std::uint64_t seed, double step = 1e-6);
}

#endif

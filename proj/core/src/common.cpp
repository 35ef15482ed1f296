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

#include "nfbeam/error.hpp"
#include "nfbeam/types.hpp"

#include <cmath>

namespace nfbeam
{
    double dbm_to_watts(double dbm)
    {
        return std::pow(10.0, (dbm - 30.0) / 10.0);
    }

    double watts_to_dbm(double watts)
    {
        return 10.0 * std::log10(watts) + 30.0;
    }

    std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream)
    {
        std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (stream + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    Complex complex_gaussian(Rng &rng, double variance)
    {
        if (variance <= 0.0)
            return {0.0, 0.0};
        std::normal_distribution<double> normal(0.0, std::sqrt(variance / 2.0));
        const double re = normal(rng);
        const double im = normal(rng);
        return {re, im};
    }

    const char *to_string(ErrorKind kind)
    {
        switch (kind)
        {
        case ErrorKind::invalid_geometry:
            return "invalid geometry";
        case ErrorKind::singular_geometry:
            return "singular geometry";
        case ErrorKind::dimension:
            return "dimension mismatch";
        case ErrorKind::argument:
            return "invalid argument";
        case ErrorKind::config:
            return "configuration error";
        case ErrorKind::io:
            return "I/O error";
        case ErrorKind::numerical_check:
            return "numerical check failed";
        }
        return "error";
    }
}

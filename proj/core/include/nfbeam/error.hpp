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

#ifndef NFBEAM_ERROR_HPP
#define NFBEAM_ERROR_HPP

#include <stdexcept>
#include <string>

namespace nfbeam
{
    enum class ErrorKind
    {
        invalid_geometry,  // even or non-positive antenna count, bad spacing
        singular_geometry, // coincident points where a distance is needed
        dimension,         // vector or matrix size mismatch
        argument,          // any other invalid argument
        config,            // malformed or out-of-range configuration
        io,                // file could not be read or written
        numerical_check    // a self-check (e.g. gradient check) failed
    };

    const char *to_string(ErrorKind kind);

    class Error : public std::runtime_error
    {
    public:
        Error(ErrorKind kind, const std::string &message)
            : std::runtime_error(message), kind_(kind) {}

        ErrorKind kind() const noexcept { return kind_; }

    private:
        ErrorKind kind_;
    };
}

#endif

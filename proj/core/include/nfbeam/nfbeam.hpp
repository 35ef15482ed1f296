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

#ifndef NFBEAM_NFBEAM_HPP
#define NFBEAM_NFBEAM_HPP

#include "nfbeam/alignment.hpp"
#include "nfbeam/baselines.hpp"
#include "nfbeam/channel.hpp"
#include "nfbeam/diagnostics.hpp"
#include "nfbeam/error.hpp"
#include "nfbeam/experiment.hpp"
#include "nfbeam/geometry.hpp"
#include "nfbeam/mapper.hpp"
#include "nfbeam/types.hpp"
#include "nfbeam/wavenumber.hpp"

#endif

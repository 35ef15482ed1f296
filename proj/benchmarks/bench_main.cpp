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

#include "nfbeam/nfbeam.hpp"

#include <benchmark/benchmark.h>

using namespace nfbeam;

namespace
{
    SceneConfig scene_with(int antennas)
    {
        SceneConfig c;
        c.bs_antennas = antennas;
        c.ue_antennas = antennas;
        return c;
    }

    void BM_AssembleChannel(benchmark::State &state)
    {
        const Scene scene = build_scene(scene_with(static_cast<int>(state.range(0))));
        const ScatteringConfig sc;
        std::uint64_t seed = 0;
        for (auto _ : state)
            benchmark::DoNotOptimize(assemble_channel(scene, sc, seed++));
    }
    BENCHMARK(BM_AssembleChannel)->Arg(51)->Arg(201)->Unit(benchmark::kMicrosecond);

    void BM_TruncatedTransform(benchmark::State &state)
    {
        const Scene scene = build_scene(scene_with(201));
        for (auto _ : state)
        {
            const auto set = los_truncated_index_set(scene.bs, scene.ue, scene.wavelength(), ArraySide::bs);
            benchmark::DoNotOptimize(build_transform(scene.bs, set, ArraySide::bs));
        }
    }
    BENCHMARK(BM_TruncatedTransform)->Unit(benchmark::kMicrosecond);

    void BM_LossAndGradient(benchmark::State &state)
    {
        const Scene scene = build_scene(scene_with(201));
        const auto set = los_truncated_index_set(scene.bs, scene.ue, scene.wavelength(), ArraySide::bs);
        const BeamMap map = BeamMap::bs(build_transform(scene.bs, set, ArraySide::bs));
        Rng rng(1);
        const MapperParameters params = init_params(mapper_layer_dims(201, map.input_size()), rng);
        CVector y(201);
        for (auto &x : y)
            x = complex_gaussian(rng, 1.0);
        for (auto _ : state)
            benchmark::DoNotOptimize(loss_and_gradient(params, y, map));
    }
    BENCHMARK(BM_LossAndGradient)->Unit(benchmark::kMicrosecond);

    void BM_RunAlignment(benchmark::State &state)
    {
        AlignmentConfig c;
        c.rounds = static_cast<int>(state.range(0));
        c.use_wtm = state.range(1) != 0;
        const ChannelRealization ch = assemble_channel(build_scene(c.scene), c.scattering, 3);
        for (auto _ : state)
            benchmark::DoNotOptimize(run_alignment(c, ch));
    }
    BENCHMARK(BM_RunAlignment)->Args({15, 1})->Args({15, 0})->Unit(benchmark::kMillisecond);

    void BM_SvdBound(benchmark::State &state)
    {
        const Scene scene = build_scene(scene_with(201));
        const CMatrix h = assemble_channel(scene, ScatteringConfig{}, 4).matrix;
        for (auto _ : state)
            benchmark::DoNotOptimize(svd_optimal_bound(h, 0.1, 1e-9));
    }
    BENCHMARK(BM_SvdBound)->Unit(benchmark::kMillisecond);
}
BENCHMARK_MAIN();

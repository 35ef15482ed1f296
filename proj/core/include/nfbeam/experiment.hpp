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

#ifndef NFBEAM_EXPERIMENT_HPP
#define NFBEAM_EXPERIMENT_HPP

#include "nfbeam/alignment.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace nfbeam
{
    enum class Policy
    {
        active,
        ablation,
        random,
        svd_bound
    };

    enum class SweepVariable
    {
        distance,
        angle,
        scatterers,
        rounds
    };

    enum class OutputFormat
    {
        csv,
        json
    };

    const char *to_string(Policy policy);
    const char *to_string(SweepVariable variable);
    Policy parse_policy(std::string_view name);
    SweepVariable parse_sweep_variable(std::string_view name);
    OutputFormat parse_output_format(std::string_view name);

    struct Sweep
    {
        SweepVariable variable = SweepVariable::distance;
        std::vector<double> values; // SI units: meters, radians, counts

        bool operator==(const Sweep &) const = default;
    };

    struct ExperimentConfig
    {
        AlignmentConfig alignment; // alignment.seed is the base seed
        int repeats = 20;
        std::optional<Sweep> sweep;
        std::vector<Policy> policies{Policy::active, Policy::ablation, Policy::random, Policy::svd_bound};
        std::string output_path;
        OutputFormat output_format = OutputFormat::csv;
        unsigned workers = 0; // 0: hardware concurrency

        void validate() const;

        bool operator==(const ExperimentConfig &) const = default;
    };

    // Flat JSON object. Power fields accept numbers (watts) or strings like "20dBm";
    // angles accept numbers (radians) or strings like "90deg". Unknown keys are rejected.
    ExperimentConfig parse_experiment_config(std::string_view json_text);
    ExperimentConfig load_experiment_config(const std::filesystem::path &path);

    // Fully resolved configuration in SI units, single line.
    std::string experiment_config_to_json(const ExperimentConfig &config);

    struct CurvePoint
    {
        int round = 0;
        double mean = 0.0;
        double std = 0.0;
    };

    // One sweep point and policy.
    struct PolicyResult
    {
        std::string sweep_variable; // "none" without a sweep
        double sweep_value = 0.0;
        Policy policy = Policy::active;
        std::vector<double> values; // final throughput per repeat, ordered by repeat index
        std::vector<std::vector<double>> per_round; // [repeat][round - 1], learning policies only
        double mean = 0.0;
        double std = 0.0; // sample standard deviation, 0 for n = 1
        int n = 0;
        std::vector<CurvePoint> curve; // rounds 1..T for learning policies, {T} otherwise
    };

    struct AggregateResult
    {
        ExperimentConfig config;
        std::vector<PolicyResult> points;

        const PolicyResult *find(Policy policy, double sweep_value) const;
        const PolicyResult *find(Policy policy) const;
    };

    // Config for one sweep point with the swept variable substituted.
    AlignmentConfig sweep_point_config(const AlignmentConfig &base, SweepVariable variable, double value);

    // Deterministic in the base seed; repeat r uses seed base + r for channel and learning.
    AggregateResult run_experiment(const ExperimentConfig &config);

    // Rows: sweep_variable,sweep_value,policy,round,mean_throughput,std_throughput,n
    // preceded by '#' lines holding the base seed and resolved config.
    std::string format_csv(const AggregateResult &result);
    std::string format_json(const AggregateResult &result);

    // Throws Error(io) on failure.
    void emit_output(const AggregateResult &result, OutputFormat format, const std::filesystem::path &path);
}

#endif

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

#include "nfbeam/baselines.hpp"
#include "nfbeam/error.hpp"
#include "nfbeam/experiment.hpp"

#include <catch_amalgamated.hpp>

#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

using namespace nfbeam;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{
    ExperimentConfig small_experiment()
    {
        ExperimentConfig c;
        c.alignment.scene.bs_antennas = 15;
        c.alignment.scene.ue_antennas = 15;
        c.alignment.rounds = 4;
        c.alignment.seed = 100;
        c.repeats = 3;
        return c;
    }

    std::vector<std::vector<std::string>> csv_rows(const std::string &text)
    {
        std::vector<std::vector<std::string>> rows;
        std::istringstream in(text);
        std::string line;
        while (std::getline(in, line))
        {
            if (line.empty() || line[0] == '#')
                continue;
            std::vector<std::string> cells;
            std::istringstream ls(line);
            std::string cell;
            while (std::getline(ls, cell, ','))
                cells.push_back(cell);
            rows.push_back(cells);
        }
        return rows;
    }

    void require_kind(ErrorKind kind, const std::function<void()> &f)
    {
        try
        {
            f();
            FAIL("no error raised");
        }
        catch (const Error &e)
        {
            REQUIRE(e.kind() == kind);
        }
    }
}

TEST_CASE("one bound row per sweep value", "[experiment]")
{
    ExperimentConfig c = small_experiment();
    c.repeats = 1;
    c.policies = {Policy::svd_bound};
    c.sweep = Sweep{SweepVariable::distance, {10.0, 15.0, 20.0}};
    const auto rows = csv_rows(format_csv(run_experiment(c)));
    REQUIRE(rows.size() == 4);
    REQUIRE(rows[0] == std::vector<std::string>{"sweep_variable", "sweep_value", "policy", "round",
                                                "mean_throughput", "std_throughput", "n"});
    for (std::size_t i = 1; i < rows.size(); ++i)
    {
        REQUIRE(rows[i][0] == "distance");
        REQUIRE(rows[i][2] == "svd-bound");
        REQUIRE(rows[i][6] == "1");
    }
}

TEST_CASE("repeat r uses the channel of seed base + r", "[experiment]")
{
    ExperimentConfig c = small_experiment();
    c.policies = {Policy::svd_bound};
    const AggregateResult r = run_experiment(c);
    const PolicyResult *p = r.find(Policy::svd_bound);
    REQUIRE(p != nullptr);
    REQUIRE(p->values.size() == 3);
    const Scene scene = build_scene(c.alignment.scene);
    for (int rep = 0; rep < 3; ++rep)
    {
        const ChannelRealization ch =
            assemble_channel(scene, c.alignment.scattering, derive_seed(100 + rep, stream::channel));
        REQUIRE(p->values[rep] == svd_optimal_bound(ch.matrix, 0.1, 1e-9));
    }
}

TEST_CASE("output is byte-identical across reruns and worker counts", "[experiment]")
{
    ExperimentConfig c = small_experiment();
    c.sweep = Sweep{SweepVariable::angle, {kPi / 3, kPi / 2}};
    c.workers = 1;
    const std::string a = format_csv(run_experiment(c));
    const std::string b = format_csv(run_experiment(c));
    c.workers = 3;
    const std::string d = format_csv(run_experiment(c));
    REQUIRE(a == b);
    REQUIRE(a == d);
    REQUIRE(format_json(run_experiment(c)) == format_json(run_experiment(c)));

    c.alignment.seed = 101;
    REQUIRE(format_csv(run_experiment(c)) != a);
}

TEST_CASE("aggregates agree with a two-pass oracle", "[experiment]")
{
    ExperimentConfig c = small_experiment();
    c.repeats = 5;
    const AggregateResult r = run_experiment(c);
    for (const PolicyResult &p : r.points)
    {
        REQUIRE(p.n == 5);
        REQUIRE(p.values.size() == 5);
        double mean = 0.0;
        for (double v : p.values)
            mean += v;
        mean /= p.values.size();
        double ss = 0.0;
        for (double v : p.values)
            ss += (v - mean) * (v - mean);
        const double sd = std::sqrt(ss / (p.values.size() - 1));
        REQUIRE_THAT(p.mean, WithinAbs(mean, 1e-12));
        REQUIRE_THAT(p.std, WithinAbs(sd, 1e-12));
        REQUIRE(p.std >= 0.0);

        if (p.policy == Policy::active || p.policy == Policy::ablation)
        {
            REQUIRE(p.curve.size() == 4);
            for (std::size_t t = 0; t < p.curve.size(); ++t)
            {
                REQUIRE(p.curve[t].round == int(t) + 1);
                double m = 0.0;
                for (const auto &run : p.per_round)
                    m += run[t];
                m /= p.per_round.size();
                REQUIRE_THAT(p.curve[t].mean, WithinAbs(m, 1e-12));
            }
            REQUIRE(p.curve.back().mean == p.mean);
        }
        else
        {
            REQUIRE(p.curve.size() == 1);
            REQUIRE(p.curve[0].round == 4);
        }
    }
}

TEST_CASE("CSV and JSON carry the same numbers", "[experiment]")
{
    ExperimentConfig c = small_experiment();
    const AggregateResult r = run_experiment(c);
    const auto rows = csv_rows(format_csv(r));
    const auto j = nlohmann::json::parse(format_json(r));
    REQUIRE(j.at("base_seed").get<std::uint64_t>() == 100);
    const auto &jr = j.at("rows");
    REQUIRE(jr.size() == rows.size() - 1);
    for (std::size_t i = 0; i < jr.size(); ++i)
    {
        const auto &row = rows[i + 1];
        REQUIRE(jr[i].at("sweep_variable").get<std::string>() == row[0]);
        REQUIRE(jr[i].at("sweep_value").get<double>() == std::stod(row[1]));
        REQUIRE(jr[i].at("policy").get<std::string>() == row[2]);
        REQUIRE(jr[i].at("round").get<int>() == std::stoi(row[3]));
        REQUIRE(jr[i].at("mean_throughput").get<double>() == std::stod(row[4]));
        REQUIRE(jr[i].at("std_throughput").get<double>() == std::stod(row[5]));
        REQUIRE(jr[i].at("n").get<int>() == std::stoi(row[6]));
    }
}

TEST_CASE("single-point output carries the fixed config value", "[experiment]")
{
    ExperimentConfig c = small_experiment();
    const std::string csv = format_csv(run_experiment(c));
    REQUIRE(csv.rfind("# nfbeam experiment\n# base_seed: 100\n# config: {", 0) == 0);
    REQUIRE(csv.back() == '\n');
    std::map<std::string, std::vector<int>> rounds;
    for (const auto &row : csv_rows(csv))
    {
        if (row[0] == "sweep_variable")
            continue;
        REQUIRE(row[1] == "4");
        rounds[row[2]].push_back(std::stoi(row[3]));
    }
    REQUIRE(rounds["active"] == std::vector<int>{1, 2, 3, 4});
    REQUIRE(rounds["ablation"] == std::vector<int>{1, 2, 3, 4});
    REQUIRE(rounds["random"] == std::vector<int>{4});

    // the embedded config reproduces the run
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    std::getline(in, line);
    std::getline(in, line);
    ExperimentConfig replay = parse_experiment_config(line.substr(std::string("# config: ").size()));
    replay.workers = c.workers;
    REQUIRE(replay == c);
    REQUIRE(format_csv(run_experiment(replay)) == csv);
}

TEST_CASE("config parsing", "[experiment]")
{
    const ExperimentConfig c = parse_experiment_config(R"({
        "bs_power": "20dBm", "bs_noise_power": "-60dBm", "angle": "60deg", "distance": 20,
        "policies": "active,random", "sweep": {"variable": "angle", "values": ["30deg", 1.0]},
        "repeats": 4, "seed": 9})");
    REQUIRE_THAT(c.alignment.pilot.bs_power, WithinRel(0.1, 1e-12));
    REQUIRE_THAT(c.alignment.pilot.bs_noise_power, WithinRel(1e-9, 1e-12));
    REQUIRE_THAT(c.alignment.scene.angle, WithinRel(kPi / 3, 1e-12));
    REQUIRE(c.alignment.scene.distance == 20.0);
    REQUIRE(c.policies == std::vector<Policy>{Policy::active, Policy::random});
    REQUIRE(c.sweep->variable == SweepVariable::angle);
    REQUIRE_THAT(c.sweep->values[0], WithinRel(kPi / 6, 1e-12));
    REQUIRE(c.repeats == 4);
    REQUIRE(c.alignment.seed == 9);

    REQUIRE(parse_experiment_config("{}") == ExperimentConfig{});
    REQUIRE(parse_experiment_config(experiment_config_to_json(c)) == c);
    ExperimentConfig d = small_experiment();
    d.output_path = "out.json";
    d.output_format = OutputFormat::json;
    d.workers = 2;
    REQUIRE(parse_experiment_config(experiment_config_to_json(d)) == d);
}

TEST_CASE("config errors", "[experiment]")
{
    require_kind(ErrorKind::config, [] { parse_experiment_config(R"({"sweep": {"variable": "height", "values": [1]}})"); });
    require_kind(ErrorKind::config, [] { parse_experiment_config(R"({"sweep": {"variable": "angle", "values": [4.0]}})"); });
    require_kind(ErrorKind::config, [] { parse_experiment_config(R"({"sweep": {"variable": "distance", "values": [-1]}})"); });
    require_kind(ErrorKind::config, [] { parse_experiment_config(R"({"repeats": 0})"); });
    require_kind(ErrorKind::config, [] { parse_experiment_config(R"({"colour": 1})"); });
    require_kind(ErrorKind::config, [] { parse_experiment_config(R"({"policies": ["greedy"]})"); });
    require_kind(ErrorKind::config, [] { parse_experiment_config("{not json"); });
    require_kind(ErrorKind::config, [] { parse_sweep_variable("height"); });
    require_kind(ErrorKind::io, [] { load_experiment_config("/nonexistent/config.json"); });
}

TEST_CASE("output emission", "[experiment]")
{
    ExperimentConfig c = small_experiment();
    c.repeats = 1;
    c.policies = {Policy::random};
    const AggregateResult r = run_experiment(c);
    require_kind(ErrorKind::io, [&] { emit_output(r, OutputFormat::csv, "/proc/nfbeam/out.csv"); });

    const auto path = std::filesystem::temp_directory_path() / "nfbeam_emit_test.csv";
    emit_output(r, OutputFormat::csv, path);
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    REQUIRE(ss.str() == format_csv(r));
    std::filesystem::remove(path);
}

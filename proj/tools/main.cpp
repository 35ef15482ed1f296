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

// nfbeam command-line tool.
//
// Exit codes: 0 success, 1 configuration error, 2 numerical-check failure, 3 I/O error.

#include "nfbeam/nfbeam.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace nfbeam;

namespace
{
    enum ExitCode : int
    {
        exit_ok = 0,
        exit_config = 1,
        exit_numerical = 2,
        exit_io = 3
    };

    int exit_code_for(ErrorKind kind)
    {
        switch (kind)
        {
        case ErrorKind::numerical_check:
            return exit_numerical;
        case ErrorKind::io:
            return exit_io;
        default:
            return exit_config;
        }
    }

    std::string num(double v)
    {
        char buf[64];
        auto res = std::to_chars(buf, buf + sizeof(buf), v);
        return std::string(buf, res.ptr);
    }

    std::vector<std::string> split_list(const std::string &text)
    {
        std::vector<std::string> out;
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ','))
        {
            if (!item.empty())
                out.push_back(item);
        }
        return out;
    }

    void write_file(const fs::path &path, const std::string &text)
    {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out)
            throw Error(ErrorKind::io, "cannot open " + path.string() + " for writing");
        out << text;
        if (!out)
            throw Error(ErrorKind::io, "failed writing " + path.string());
    }

    void write_magnitudes(const fs::path &path, const CMatrix &m)
    {
        std::ostringstream out;
        for (Eigen::Index r = 0; r < m.rows(); ++r)
        {
            for (Eigen::Index c = 0; c < m.cols(); ++c)
                out << (c ? "," : "") << num(std::abs(m(r, c)));
            out << '\n';
        }
        write_file(path, out.str());
    }

    void ensure_dir(const fs::path &dir)
    {
        std::error_code ec;
        fs::create_directories(dir, ec);
        if (ec)
            throw Error(ErrorKind::io, "cannot create directory " + dir.string() + ": " + ec.message());
    }

    // Options shared by the experiment subcommands.
    struct CommonOptions
    {
        std::string config_path;
        std::optional<std::uint64_t> seed;
        std::optional<int> repeats;
        std::optional<int> rounds;
        std::string policies;
        std::string out;
        std::string format;
        std::optional<unsigned> workers;
    };

    void add_common(CLI::App *cmd, CommonOptions &o)
    {
        cmd->add_option("--config", o.config_path, "JSON config file (defaults give the 201x201, 28 GHz, 15 m reference setup)");
        cmd->add_option("--seed", o.seed, "Base seed");
        cmd->add_option("--repeats", o.repeats, "Monte-Carlo repeats per point");
        cmd->add_option("--rounds", o.rounds, "Ping-pong rounds T");
        cmd->add_option("--policy", o.policies, "Comma list of active,ablation,random,svd-bound");
        cmd->add_option("--out", o.out, "Output file (stdout when omitted)");
        cmd->add_option("--format", o.format, "csv or json");
        cmd->add_option("--workers", o.workers, "Worker threads (0 = hardware concurrency)");
    }

    ExperimentConfig resolve(const CommonOptions &o)
    {
        ExperimentConfig c = o.config_path.empty() ? ExperimentConfig{} : load_experiment_config(o.config_path);
        if (o.seed)
            c.alignment.seed = *o.seed;
        if (o.repeats)
            c.repeats = *o.repeats;
        if (o.rounds)
            c.alignment.rounds = *o.rounds;
        if (!o.policies.empty())
        {
            c.policies.clear();
            for (const auto &p : split_list(o.policies))
                c.policies.push_back(parse_policy(p));
        }
        if (!o.out.empty())
            c.output_path = o.out;
        if (!o.format.empty())
            c.output_format = parse_output_format(o.format);
        if (o.workers)
            c.workers = *o.workers;
        return c;
    }

    int emit(const AggregateResult &result)
    {
        const ExperimentConfig &c = result.config;
        if (c.output_path.empty())
        {
            std::cout << (c.output_format == OutputFormat::csv ? format_csv(result) : format_json(result));
            return exit_ok;
        }
        emit_output(result, c.output_format, c.output_path);
        std::cerr << "wrote " << c.output_path << '\n';
        return exit_ok;
    }

    double parse_sweep_value(SweepVariable variable, const std::string &text)
    {
        try
        {
            if (variable == SweepVariable::angle && text.ends_with("deg"))
                return std::stod(text.substr(0, text.size() - 3)) * kPi / 180.0;
            std::size_t used = 0;
            const double v = std::stod(text, &used);
            if (used != text.size())
                throw Error(ErrorKind::config, "bad sweep value '" + text + "'");
            return v;
        }
        catch (const std::logic_error &)
        {
            throw Error(ErrorKind::config, "bad sweep value '" + text + "'");
        }
    }

    struct ScenePieces
    {
        ExperimentConfig config;
        Scene scene;
        TransformOperator bs_full, ue_full, bs_trunc, ue_trunc;
    };

    ScenePieces scene_pieces(const std::string &config_path)
    {
        ScenePieces sp;
        sp.config = config_path.empty() ? ExperimentConfig{} : load_experiment_config(config_path);
        sp.scene = build_scene(sp.config.alignment.scene);
        const Scene &s = sp.scene;
        const double lambda = s.wavelength();
        sp.bs_full = build_transform(s.bs, full_index_set(s.bs.aperture(), lambda), ArraySide::bs);
        sp.ue_full = build_transform(s.ue, full_index_set(s.ue.aperture(), lambda), ArraySide::ue);
        const auto bs_set = los_truncated_index_set(s.bs, s.ue, lambda, ArraySide::bs);
        const auto ue_set = los_truncated_index_set(s.ue, s.bs, lambda, ArraySide::ue);
        for (const auto *set : {&bs_set, &ue_set})
        {
            if (set->clamped)
                std::cerr << "warning: LoS bounds admit no wavenumber index; using {0}\n";
        }
        sp.bs_trunc = build_transform(s.bs, bs_set, ArraySide::bs);
        sp.ue_trunc = build_transform(s.ue, ue_set, ArraySide::ue);
        return sp;
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"Near-field MIMO beam alignment by active sensing in the wavenumber domain"};
    app.require_subcommand(1);

    CommonOptions run_opts;
    auto *run = app.add_subcommand("run", "Run the alignment experiment and aggregate throughput");
    add_common(run, run_opts);

    CommonOptions sweep_opts;
    std::string sweep_variable;
    std::string sweep_values;
    auto *sweep = app.add_subcommand("sweep", "Sweep distance, angle, scatterers or rounds");
    add_common(sweep, sweep_opts);
    sweep->add_option("--variable", sweep_variable, "distance|angle|scatterers|rounds");
    sweep->add_option("--values", sweep_values, "Comma list; angles in radians or with a 'deg' suffix");

    std::string trace_config, trace_out, trace_format = "json";
    std::optional<std::uint64_t> trace_seed;
    bool trace_ablation = false;
    auto *trace = app.add_subcommand("trace", "Run one ping-pong alignment and write its per-round trace");
    trace->add_option("--config", trace_config, "JSON config file");
    trace->add_option("--seed", trace_seed, "Run seed");
    trace->add_option("--out", trace_out, "Output file (stdout when omitted)");
    trace->add_option("--format", trace_format, "csv or json");
    trace->add_flag("--ablation", trace_ablation, "Disable the wavenumber-domain transforms");

    std::string dump_config, dump_dir = ".";
    std::optional<std::uint64_t> dump_seed;
    auto *dump_channel = app.add_subcommand("dump-channel", "Write |H|, |H~_a|, |H~_e| grids as CSV");
    dump_channel->add_option("--config", dump_config, "JSON config file");
    dump_channel->add_option("--seed", dump_seed, "Channel seed (base seed of repeat 0 by default)");
    dump_channel->add_option("--out", dump_dir, "Output directory");

    std::string transform_config, transform_dir = ".";
    auto *dump_transform = app.add_subcommand("dump-transform", "Write index sets and LoS |H~| grids as CSV");
    dump_transform->add_option("--config", transform_config, "JSON config file");
    dump_transform->add_option("--out", transform_dir, "Output directory");

    std::string check_dims = "4,8,6,4";
    int check_instances = 5;
    std::uint64_t check_seed = 1;
    double check_tolerance = 1e-5;
    auto *check = app.add_subcommand("check-gradients", "Compare reverse-mode gradients with finite differences");
    check->add_option("--dims", check_dims, "Real layer widths");
    check->add_option("--instances", check_instances, "Random instances");
    check->add_option("--seed", check_seed, "Seed");
    check->add_option("--tolerance", check_tolerance, "Maximum relative error");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_config;
    }

    try
    {
        if (*run)
        {
            ExperimentConfig c = resolve(run_opts);
            c.validate();
            return emit(run_experiment(c));
        }
        if (*sweep)
        {
            ExperimentConfig c = resolve(sweep_opts);
            if (!sweep_variable.empty() || !sweep_values.empty())
            {
                Sweep s;
                s.variable = parse_sweep_variable(sweep_variable.empty() ? "distance" : sweep_variable);
                for (const auto &v : split_list(sweep_values))
                    s.values.push_back(parse_sweep_value(s.variable, v));
                c.sweep = s;
            }
            if (!c.sweep)
                throw Error(ErrorKind::config, "sweep needs --variable/--values or a 'sweep' config entry");
            c.validate();
            return emit(run_experiment(c));
        }
        if (*trace)
        {
            ExperimentConfig c = trace_config.empty() ? ExperimentConfig{} : load_experiment_config(trace_config);
            AlignmentConfig a = c.alignment;
            if (trace_seed)
                a.seed = *trace_seed;
            a.use_wtm = !trace_ablation;
            const Scene scene = build_scene(a.scene);
            const ChannelRealization ch = assemble_channel(scene, a.scattering, derive_seed(a.seed, stream::channel));
            const AlignmentTrace t = run_alignment(a, ch);
            const OutputFormat f = parse_output_format(trace_format);
            const std::string text = f == OutputFormat::csv ? trace_to_csv(t) : trace_to_json(t);
            if (trace_out.empty())
                std::cout << text;
            else
                write_file(trace_out, text);
            return exit_ok;
        }
        if (*dump_channel)
        {
            ScenePieces sp = scene_pieces(dump_config);
            const std::uint64_t seed = dump_seed.value_or(sp.config.alignment.seed);
            const ChannelRealization ch =
                assemble_channel(sp.scene, sp.config.alignment.scattering, derive_seed(seed, stream::channel));
            ensure_dir(dump_dir);
            write_magnitudes(fs::path(dump_dir) / "H.csv", ch.matrix);
            write_magnitudes(fs::path(dump_dir) / "H_a.csv",
                             project_to_wavenumber(ch.matrix, sp.ue_full, sp.bs_full).matrix);
            write_magnitudes(fs::path(dump_dir) / "H_e.csv",
                             project_to_wavenumber(ch.matrix, sp.ue_trunc, sp.bs_trunc).matrix);
            std::cerr << "wrote H.csv, H_a.csv, H_e.csv to " << dump_dir << '\n';
            return exit_ok;
        }
        if (*dump_transform)
        {
            ScenePieces sp = scene_pieces(transform_config);
            const CMatrix h = los_channel(sp.scene.bs, sp.scene.ue, sp.scene.wavelength());
            ensure_dir(transform_dir);
            std::ostringstream sets;
            sets << "side,set,index,wavenumber\n";
            auto put = [&](const char *side, const char *kind, const WavenumberIndexSet &set) {
                for (int j : set.indices)
                {
                    const double k = set.aperture > 0.0 ? kTwoPi * j / set.aperture : 0.0;
                    sets << side << ',' << kind << ',' << j << ',' << num(k) << '\n';
                }
            };
            put("bs", "full", sp.bs_full.index_set);
            put("ue", "full", sp.ue_full.index_set);
            put("bs", "truncated", sp.bs_trunc.index_set);
            put("ue", "truncated", sp.ue_trunc.index_set);
            write_file(fs::path(transform_dir) / "index_sets.csv", sets.str());
            write_magnitudes(fs::path(transform_dir) / "H_a_los.csv",
                             project_to_wavenumber(h, sp.ue_full, sp.bs_full).matrix);
            write_magnitudes(fs::path(transform_dir) / "H_e_los.csv",
                             project_to_wavenumber(h, sp.ue_trunc, sp.bs_trunc).matrix);
            std::cerr << "bs |G|=" << sp.bs_full.index_set.size() << " |G_e|=" << sp.bs_trunc.index_set.size()
                      << ", ue |G|=" << sp.ue_full.index_set.size() << " |G_e|=" << sp.ue_trunc.index_set.size()
                      << '\n';
            return exit_ok;
        }
        if (*check)
        {
            std::vector<int> dims;
            for (const auto &d : split_list(check_dims))
            {
                try
                {
                    dims.push_back(std::stoi(d));
                }
                catch (const std::logic_error &)
                {
                    throw Error(ErrorKind::config, "bad layer width '" + d + "'");
                }
            }
            const GradientCheckReport r = check_gradients(dims, check_instances, check_seed);
            std::cout << "instances: " << r.instances << "\nparameters checked: " << r.parameters_checked
                      << "\nmax relative error: " << r.max_relative_error << '\n';
            if (!(r.max_relative_error < check_tolerance))
            {
                std::cout << "FAIL (tolerance " << check_tolerance << ")\n";
                return exit_numerical;
            }
            std::cout << "PASS\n";
            return exit_ok;
        }
    }
    catch (const Error &e)
    {
        std::cerr << "nfbeam: " << to_string(e.kind()) << ": " << e.what() << '\n';
        return exit_code_for(e.kind());
    }
    catch (const std::exception &e)
    {
        std::cerr << "nfbeam: " << e.what() << '\n';
        return exit_config;
    }
    return exit_ok;
}

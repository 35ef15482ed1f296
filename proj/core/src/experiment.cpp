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

#include "nfbeam/experiment.hpp"
#include "nfbeam/baselines.hpp"
#include "nfbeam/error.hpp"
#include "format.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <sstream>
#include <thread>

namespace nfbeam
{
    using nlohmann::json;

    const char *to_string(Policy policy)
    {
        switch (policy)
        {
        case Policy::active:
            return "active";
        case Policy::ablation:
            return "ablation";
        case Policy::random:
            return "random";
        case Policy::svd_bound:
            return "svd-bound";
        }
        return "?";
    }

    const char *to_string(SweepVariable variable)
    {
        switch (variable)
        {
        case SweepVariable::distance:
            return "distance";
        case SweepVariable::angle:
            return "angle";
        case SweepVariable::scatterers:
            return "scatterers";
        case SweepVariable::rounds:
            return "rounds";
        }
        return "?";
    }

    Policy parse_policy(std::string_view name)
    {
        for (Policy p : {Policy::active, Policy::ablation, Policy::random, Policy::svd_bound})
        {
            if (name == to_string(p))
                return p;
        }
        throw Error(ErrorKind::config, "unknown policy '" + std::string(name) + "'");
    }

    SweepVariable parse_sweep_variable(std::string_view name)
    {
        for (SweepVariable v : {SweepVariable::distance, SweepVariable::angle, SweepVariable::scatterers,
                                SweepVariable::rounds})
        {
            if (name == to_string(v))
                return v;
        }
        throw Error(ErrorKind::config, "unknown sweep variable '" + std::string(name) + "'");
    }

    OutputFormat parse_output_format(std::string_view name)
    {
        if (name == "csv")
            return OutputFormat::csv;
        if (name == "json")
            return OutputFormat::json;
        throw Error(ErrorKind::config, "unknown output format '" + std::string(name) + "'");
    }

    namespace
    {
        const char *reference_name(NlosReference r)
        {
            return r == NlosReference::los ? "los" : "absolute";
        }

        double parse_suffixed(const json &value, const std::string &key, std::string_view suffix,
                              double (*convert)(double))
        {
            if (value.is_number())
                return value.get<double>();
            if (value.is_string())
            {
                const std::string s = value.get<std::string>();
                if (s.size() > suffix.size() && s.ends_with(suffix))
                {
                    const std::string number = s.substr(0, s.size() - suffix.size());
                    std::size_t used = 0;
                    double v = 0.0;
                    try
                    {
                        v = std::stod(number, &used);
                    }
                    catch (const std::exception &)
                    {
                        used = 0;
                    }
                    if (used == number.size() && used > 0)
                        return convert(v);
                }
            }
            throw Error(ErrorKind::config, "key '" + key + "' expects a number or a \"<value>" +
                                               std::string(suffix) + "\" string");
        }

        double parse_power(const json &value, const std::string &key)
        {
            return parse_suffixed(value, key, "dBm", &dbm_to_watts);
        }

        double degrees_to_radians(double deg)
        {
            return deg * kPi / 180.0;
        }

        double parse_angle(const json &value, const std::string &key)
        {
            return parse_suffixed(value, key, "deg", &degrees_to_radians);
        }

        double parse_number(const json &value, const std::string &key)
        {
            if (!value.is_number())
                throw Error(ErrorKind::config, "key '" + key + "' expects a number");
            return value.get<double>();
        }

        int parse_int(const json &value, const std::string &key)
        {
            if (!value.is_number_integer())
                throw Error(ErrorKind::config, "key '" + key + "' expects an integer");
            return value.get<int>();
        }

        std::vector<Policy> parse_policies(const json &value)
        {
            std::vector<Policy> out;
            if (value.is_string())
            {
                std::stringstream ss(value.get<std::string>());
                std::string item;
                while (std::getline(ss, item, ','))
                {
                    if (!item.empty())
                        out.push_back(parse_policy(item));
                }
            }
            else if (value.is_array())
            {
                for (const auto &v : value)
                {
                    if (!v.is_string())
                        throw Error(ErrorKind::config, "policies must be strings");
                    out.push_back(parse_policy(v.get<std::string>()));
                }
            }
            else
            {
                throw Error(ErrorKind::config, "policies must be a list or a comma-separated string");
            }
            return out;
        }

        Sweep parse_sweep(const json &value)
        {
            if (!value.is_object() || !value.contains("variable") || !value.contains("values"))
                throw Error(ErrorKind::config, "sweep needs 'variable' and 'values'");
            for (const auto &[key, _] : value.items())
            {
                if (key != "variable" && key != "values")
                    throw Error(ErrorKind::config, "unknown sweep key '" + key + "'");
            }
            if (!value["variable"].is_string() || !value["values"].is_array())
                throw Error(ErrorKind::config, "sweep.variable must be a string and sweep.values a list");
            Sweep s;
            s.variable = parse_sweep_variable(value["variable"].get<std::string>());
            for (const auto &v : value["values"])
            {
                switch (s.variable)
                {
                case SweepVariable::angle:
                    s.values.push_back(parse_angle(v, "sweep.values"));
                    break;
                case SweepVariable::scatterers:
                case SweepVariable::rounds:
                    s.values.push_back(parse_int(v, "sweep.values"));
                    break;
                case SweepVariable::distance:
                    s.values.push_back(parse_number(v, "sweep.values"));
                    break;
                }
            }
            return s;
        }

        json config_json(const ExperimentConfig &c, bool runtime_settings = true)
        {
            const AlignmentConfig &a = c.alignment;
            json policies = json::array();
            for (Policy p : c.policies)
                policies.push_back(to_string(p));
            json j = {{"carrier_frequency", a.scene.carrier_frequency},
                      {"distance", a.scene.distance},
                      {"angle", a.scene.angle},
                      {"bs_antennas", a.scene.bs_antennas},
                      {"ue_antennas", a.scene.ue_antennas},
                      {"spacing_fraction", a.scene.spacing_fraction},
                      {"bs_power", a.pilot.bs_power},
                      {"ue_power", a.pilot.ue_power},
                      {"bs_noise_power", a.pilot.bs_noise_power},
                      {"ue_noise_power", a.pilot.ue_noise_power},
                      {"pilot_phase", a.pilot.pilot_phase},
                      {"rounds", a.rounds},
                      {"scatterer_count", a.scattering.count},
                      {"scatterer_variance", a.scattering.variance},
                      {"nlos_reference", reference_name(a.scattering.reference)},
                      {"localization_error", a.localization_error},
                      {"bs_learning_rate", a.bs_learning_rate},
                      {"ue_learning_rate", a.ue_learning_rate},
                      {"seed", a.seed},
                      {"repeats", c.repeats},
                      {"policies", policies},
                      {"output_path", c.output_path},
                      {"output_format", c.output_format == OutputFormat::csv ? "csv" : "json"},
                      {"workers", c.workers}};
            if (c.sweep)
                j["sweep"] = {{"variable", to_string(c.sweep->variable)}, {"values", c.sweep->values}};
            if (!runtime_settings)
            {
                // results do not depend on where or how they are written
                j.erase("output_path");
                j.erase("output_format");
                j.erase("workers");
            }
            return j;
        }

        bool is_learning(Policy p)
        {
            return p == Policy::active || p == Policy::ablation;
        }

        // Welford accumulation; sample standard deviation.
        struct Moments
        {
            double mean = 0.0;
            double m2 = 0.0;
            int n = 0;

            void add(double x)
            {
                ++n;
                const double d = x - mean;
                mean += d / n;
                m2 += d * (x - mean);
            }
            double std() const { return n > 1 ? std::sqrt(m2 / (n - 1)) : 0.0; }
        };

        // Per-run outcome of every requested policy.
        struct RunOutcome
        {
            std::vector<std::vector<double>> per_round; // indexed like config.policies
            std::vector<double> final_value;
        };

        RunOutcome run_repeat(const AlignmentConfig &point, const std::vector<Policy> &policies, std::uint64_t seed)
        {
            const Scene scene = build_scene(point.scene);
            const ChannelRealization channel =
                assemble_channel(scene, point.scattering, derive_seed(seed, stream::channel));

            RunOutcome out;
            out.per_round.resize(policies.size());
            out.final_value.resize(policies.size());
            for (std::size_t i = 0; i < policies.size(); ++i)
            {
                switch (policies[i])
                {
                case Policy::active:
                case Policy::ablation:
                {
                    AlignmentConfig cfg = point;
                    cfg.seed = seed;
                    cfg.use_wtm = policies[i] == Policy::active;
                    const AlignmentTrace trace = run_alignment(cfg, channel);
                    for (const auto &r : trace.rounds)
                        out.per_round[i].push_back(r.throughput);
                    out.final_value[i] = out.per_round[i].back();
                    break;
                }
                case Policy::random:
                {
                    Rng rng(derive_seed(seed, stream::random_policy));
                    const BeamPair beams = random_beams(scene.bs.num_antennas, scene.ue.num_antennas, rng);
                    out.final_value[i] = throughput(channel.matrix, beams.sensing, beams.probing,
                                                    point.pilot.bs_power, point.pilot.bs_noise_power);
                    break;
                }
                case Policy::svd_bound:
                    out.final_value[i] =
                        svd_optimal_bound(channel.matrix, point.pilot.bs_power, point.pilot.bs_noise_power);
                    break;
                }
            }
            return out;
        }
    }

    void ExperimentConfig::validate() const
    {
        alignment.validate();
        if (repeats < 1)
            throw Error(ErrorKind::config, "repeats must be at least 1");
        if (policies.empty())
            throw Error(ErrorKind::config, "at least one policy is required");
        if (sweep)
        {
            if (sweep->values.empty())
                throw Error(ErrorKind::config, "sweep.values must not be empty");
            for (double v : sweep->values)
            {
                bool ok = std::isfinite(v);
                switch (sweep->variable)
                {
                case SweepVariable::distance:
                    ok = ok && v > 0.0;
                    break;
                case SweepVariable::angle:
                    ok = ok && v > 0.0 && v < kPi;
                    break;
                case SweepVariable::scatterers:
                    ok = ok && v >= 0.0 && v == std::floor(v);
                    break;
                case SweepVariable::rounds:
                    ok = ok && v >= 1.0 && v == std::floor(v);
                    break;
                }
                if (!ok)
                    throw Error(ErrorKind::config, std::string("invalid ") + to_string(sweep->variable) +
                                                       " sweep value " + detail::format_double(v));
            }
        }
    }

    ExperimentConfig parse_experiment_config(std::string_view json_text)
    {
        json doc;
        try
        {
            doc = json::parse(json_text.begin(), json_text.end());
        }
        catch (const json::parse_error &e)
        {
            throw Error(ErrorKind::config, std::string("config is not valid JSON: ") + e.what());
        }
        if (doc.is_null())
            doc = json::object();
        if (!doc.is_object())
            throw Error(ErrorKind::config, "config must be a JSON object");

        ExperimentConfig c;
        AlignmentConfig &a = c.alignment;
        for (const auto &[key, value] : doc.items())
        {
            if (key == "carrier_frequency")
                a.scene.carrier_frequency = parse_number(value, key);
            else if (key == "distance")
                a.scene.distance = parse_number(value, key);
            else if (key == "angle")
                a.scene.angle = parse_angle(value, key);
            else if (key == "bs_antennas")
                a.scene.bs_antennas = parse_int(value, key);
            else if (key == "ue_antennas")
                a.scene.ue_antennas = parse_int(value, key);
            else if (key == "spacing_fraction")
                a.scene.spacing_fraction = parse_number(value, key);
            else if (key == "bs_power")
                a.pilot.bs_power = parse_power(value, key);
            else if (key == "ue_power")
                a.pilot.ue_power = parse_power(value, key);
            else if (key == "bs_noise_power")
                a.pilot.bs_noise_power = parse_power(value, key);
            else if (key == "ue_noise_power")
                a.pilot.ue_noise_power = parse_power(value, key);
            else if (key == "pilot_phase")
                a.pilot.pilot_phase = parse_angle(value, key);
            else if (key == "rounds")
                a.rounds = parse_int(value, key);
            else if (key == "scatterer_count")
                a.scattering.count = parse_int(value, key);
            else if (key == "scatterer_variance")
                a.scattering.variance = parse_number(value, key);
            else if (key == "nlos_reference")
            {
                const std::string r = value.is_string() ? value.get<std::string>() : "";
                if (r == "los")
                    a.scattering.reference = NlosReference::los;
                else if (r == "absolute")
                    a.scattering.reference = NlosReference::absolute;
                else
                    throw Error(ErrorKind::config, "nlos_reference must be \"los\" or \"absolute\"");
            }
            else if (key == "localization_error")
                a.localization_error = parse_number(value, key);
            else if (key == "bs_learning_rate")
                a.bs_learning_rate = parse_number(value, key);
            else if (key == "ue_learning_rate")
                a.ue_learning_rate = parse_number(value, key);
            else if (key == "seed")
            {
                if (!value.is_number_unsigned())
                    throw Error(ErrorKind::config, "seed must be a non-negative integer");
                a.seed = value.get<std::uint64_t>();
            }
            else if (key == "repeats")
                c.repeats = parse_int(value, key);
            else if (key == "sweep")
            {
                if (value.is_null())
                    c.sweep.reset();
                else
                    c.sweep = parse_sweep(value);
            }
            else if (key == "policies")
                c.policies = parse_policies(value);
            else if (key == "output_path")
            {
                if (!value.is_string())
                    throw Error(ErrorKind::config, "output_path must be a string");
                c.output_path = value.get<std::string>();
            }
            else if (key == "output_format")
            {
                if (!value.is_string())
                    throw Error(ErrorKind::config, "output_format must be a string");
                c.output_format = parse_output_format(value.get<std::string>());
            }
            else if (key == "workers")
            {
                const int w = parse_int(value, key);
                if (w < 0)
                    throw Error(ErrorKind::config, "workers must be non-negative");
                c.workers = static_cast<unsigned>(w);
            }
            else
                throw Error(ErrorKind::config, "unknown config key '" + key + "'");
        }
        c.validate();
        return c;
    }

    ExperimentConfig load_experiment_config(const std::filesystem::path &path)
    {
        std::ifstream in(path);
        if (!in)
            throw Error(ErrorKind::io, "cannot open config file " + path.string());
        std::stringstream buf;
        buf << in.rdbuf();
        return parse_experiment_config(buf.str());
    }

    std::string experiment_config_to_json(const ExperimentConfig &config)
    {
        return config_json(config).dump();
    }

    const PolicyResult *AggregateResult::find(Policy policy, double sweep_value) const
    {
        for (const auto &p : points)
        {
            if (p.policy == policy && p.sweep_value == sweep_value)
                return &p;
        }
        return nullptr;
    }

    const PolicyResult *AggregateResult::find(Policy policy) const
    {
        for (const auto &p : points)
        {
            if (p.policy == policy)
                return &p;
        }
        return nullptr;
    }

    AlignmentConfig sweep_point_config(const AlignmentConfig &base, SweepVariable variable, double value)
    {
        AlignmentConfig c = base;
        switch (variable)
        {
        case SweepVariable::distance:
            c.scene.distance = value;
            break;
        case SweepVariable::angle:
            c.scene.angle = value;
            break;
        case SweepVariable::scatterers:
            c.scattering.count = static_cast<int>(value);
            break;
        case SweepVariable::rounds:
            c.rounds = static_cast<int>(value);
            break;
        }
        return c;
    }

    AggregateResult run_experiment(const ExperimentConfig &config)
    {
        config.validate();

        const SweepVariable variable = config.sweep ? config.sweep->variable : SweepVariable::rounds;
        const std::vector<double> values =
            config.sweep ? config.sweep->values : std::vector<double>{static_cast<double>(config.alignment.rounds)};
        const std::size_t repeats = static_cast<std::size_t>(config.repeats);

        std::vector<AlignmentConfig> point_configs;
        for (double v : values)
            point_configs.push_back(sweep_point_config(config.alignment, variable, v));

        // Every (point, repeat) run writes only its own slot, so the reduction below
        // sees the same data regardless of scheduling.
        const std::size_t tasks = values.size() * repeats;
        std::vector<RunOutcome> outcomes(tasks);
        std::vector<std::exception_ptr> failures(tasks);
        std::atomic<std::size_t> next{0};
        auto worker = [&]() {
            for (std::size_t t = next++; t < tasks; t = next++)
            {
                const std::size_t point = t / repeats;
                const std::uint64_t seed = config.alignment.seed + (t % repeats);
                try
                {
                    outcomes[t] = run_repeat(point_configs[point], config.policies, seed);
                }
                catch (...)
                {
                    failures[t] = std::current_exception();
                }
            }
        };
        unsigned workers = config.workers ? config.workers : std::max(1u, std::thread::hardware_concurrency());
        workers = static_cast<unsigned>(std::min<std::size_t>(workers, tasks));
        if (workers <= 1)
        {
            worker();
        }
        else
        {
            std::vector<std::jthread> pool;
            for (unsigned w = 0; w < workers; ++w)
                pool.emplace_back(worker);
        }
        for (const auto &f : failures)
        {
            if (f)
                std::rethrow_exception(f);
        }

        AggregateResult result;
        result.config = config;
        for (std::size_t pt = 0; pt < values.size(); ++pt)
        {
            const int rounds = point_configs[pt].rounds;
            for (std::size_t pi = 0; pi < config.policies.size(); ++pi)
            {
                PolicyResult pr;
                pr.sweep_variable = to_string(variable);
                pr.sweep_value = values[pt];
                pr.policy = config.policies[pi];

                Moments total;
                for (std::size_t r = 0; r < repeats; ++r)
                {
                    const RunOutcome &o = outcomes[pt * repeats + r];
                    pr.values.push_back(o.final_value[pi]);
                    total.add(o.final_value[pi]);
                    if (is_learning(pr.policy))
                        pr.per_round.push_back(o.per_round[pi]);
                }
                pr.mean = total.mean;
                pr.std = total.std();
                pr.n = total.n;

                if (is_learning(pr.policy))
                {
                    for (int t = 1; t <= rounds; ++t)
                    {
                        Moments m;
                        for (const auto &run : pr.per_round)
                            m.add(run[static_cast<std::size_t>(t - 1)]);
                        pr.curve.push_back({t, m.mean, m.std()});
                    }
                }
                else
                {
                    pr.curve.push_back({rounds, pr.mean, pr.std});
                }
                result.points.push_back(std::move(pr));
            }
        }
        return result;
    }

    std::string format_csv(const AggregateResult &result)
    {
        using detail::format_double;
        std::ostringstream out;
        out << "# nfbeam experiment\n";
        out << "# base_seed: " << result.config.alignment.seed << '\n';
        out << "# config: " << config_json(result.config, false).dump() << '\n';
        out << "sweep_variable,sweep_value,policy,round,mean_throughput,std_throughput,n\n";
        for (const auto &p : result.points)
        {
            for (const auto &c : p.curve)
            {
                out << p.sweep_variable << ',' << format_double(p.sweep_value) << ',' << to_string(p.policy) << ','
                    << c.round << ',' << format_double(c.mean) << ',' << format_double(c.std) << ',' << p.n << '\n';
            }
        }
        return out.str();
    }

    std::string format_json(const AggregateResult &result)
    {
        json rows = json::array();
        for (const auto &p : result.points)
        {
            for (const auto &c : p.curve)
            {
                rows.push_back({{"sweep_variable", p.sweep_variable},
                                {"sweep_value", p.sweep_value},
                                {"policy", to_string(p.policy)},
                                {"round", c.round},
                                {"mean_throughput", c.mean},
                                {"std_throughput", c.std},
                                {"n", p.n}});
            }
        }
        json doc = {{"base_seed", result.config.alignment.seed},
                    {"config", config_json(result.config, false)},
                    {"rows", rows}};
        return doc.dump(2) + "\n";
    }

    void emit_output(const AggregateResult &result, OutputFormat format, const std::filesystem::path &path)
    {
        const std::string text = format == OutputFormat::csv ? format_csv(result) : format_json(result);
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out)
            throw Error(ErrorKind::io, "cannot open " + path.string() + " for writing");
        out << text;
        out.flush();
        if (!out)
            throw Error(ErrorKind::io, "failed writing " + path.string());
    }
}

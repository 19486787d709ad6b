// Copyright 2026 The qloop Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// qloop command-line front end.
//
//   qloop run    --sites 8 --sink 4 --strength 1 --noise depolarizing --p 0.1 --steps 40
//   qloop sweep  --config sweep.json --workers 4 --out results.csv
//   qloop figure --name fig5 --out data/
//
// Exit status: 0 on success, 1 for usage or validation errors, 2 when the
// engine reports a numerical contract violation or output fails.

#include <cstdio>
#include <iostream>
#include <map>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "qloop/error.hpp"
#include "qloop/harness.hpp"

namespace {

using namespace qloop;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitRuntime = 2;

struct RunOptions {
    std::size_t sites = 8;
    std::size_t sink = 1;
    double strength = 1.0;
    std::string noise = "none";
    double p = 0.0;
    double dephase_angle = 0.0;
    std::string coin = "symmetric";
    std::optional<double> theta;
    double init_delta = InitialStateSpec{}.delta_init;
    double init_eta = 0.0;
    std::size_t steps = 40;
    std::string engine = "density";
    bool mid = false;
    std::optional<std::size_t> mid_every;
    bool distribution = false;
    std::string out;
    std::string format = "csv";
    std::string label = "run";
};

struct SweepOptions {
    std::string config;
    std::size_t workers = 1;
    std::string out;
    std::string format = "csv";
};

struct FigureOptions {
    std::string name;
    std::string out = ".";
    std::size_t workers = 1;
};

[[noreturn]] void usage(const std::string& message)
{
    throw Error(ErrorCode::InvalidConfig, message);
}

OutputFormat output_format(const std::string& name)
{
    return name == "json" ? OutputFormat::Json : OutputFormat::Csv;
}

void emit(std::span<const ExperimentResult> results, const std::string& format,
          const std::string& out, std::string_view comment)
{
    if (!out.empty()) {
        write_results(results, output_format(format), out, comment);
        return;
    }
    if (format == "json") {
        std::cout << results_json(results);
        return;
    }
    std::cout << results_csv(results, comment);
    bool any = false;
    for (const auto& r : results) {
        for (const auto& rec : r.records) {
            any = any || rec.distribution.has_value();
        }
    }
    if (any) {
        std::cout << '\n' << distribution_csv(results);
    }
}

int run_command(const RunOptions& o)
{
    ExperimentConfig config;
    config.loop.n = o.sites;
    config.loop.sink_site = o.sink;
    config.loop.sink_strength = o.strength;
    if (o.coin == "rotation") {
        config.loop.coin = CoinSpec::rotation(o.theta.value_or(0.0));
    } else if (o.theta) {
        usage("--theta needs --coin rotation");
    }
    config.loop.initial.delta_init = o.init_delta;
    config.loop.initial.eta = o.init_eta;
    const auto kind = parse_noise_kind(o.noise);
    config.noise = {*kind, o.p, o.dephase_angle};
    config.t_max = o.steps;
    config.observables.mid = o.mid;
    config.observables.distribution = o.distribution;
    config.mid_every = o.mid_every;
    config.label = o.label;
    config.validate();

    std::vector<ResultRecord> records;
    if (o.engine == "statevector") {
        if (config.noise.kind != NoiseSpec::Kind::None) {
            usage("--engine statevector only supports --noise none");
        }
        RecordOptions options;
        options.observables = config.observables;
        options.mid_every = config.effective_mid_every();
        records = evolve_statevector(config.loop, config.t_max, options);
    } else {
        records = run_experiment(config);
    }
    const std::vector<ExperimentResult> results = {{config, std::move(records)}};
    emit(results, o.format, o.out, {});
    return kExitOk;
}

int sweep_command(const SweepOptions& o)
{
    const SweepSpec spec = load_sweep_spec(o.config);
    const auto results = run_sweep(spec, o.workers);
    emit(results, o.format, o.out, {});
    return kExitOk;
}

int figure_command(const FigureOptions& o)
{
    const FigurePreset preset = figure_preset(o.name);
    const std::filesystem::path dir(o.out);
    for (const auto& panel : preset.panels) {
        std::vector<ExperimentConfig> configs;
        for (const auto& series : panel.series) {
            for (auto& point : series.expand()) {
                configs.push_back(std::move(point));
            }
        }
        const auto results = run_batch(configs, o.workers);
        const std::string comment =
            fmt::format("{} panel {}: {}\nsites are 0-based; the walker starts on index 0",
                        preset.name, panel.name, panel.note);
        const auto path = dir / fmt::format("{}_{}.csv", preset.name, panel.name);
        write_results(results, OutputFormat::Csv, path, comment);
        std::cerr << "wrote " << path.string() << '\n';
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Discrete-time quantum walk on a loop with a sink"};
    app.require_subcommand(1);

    RunOptions run;
    auto* run_cmd = app.add_subcommand("run", "Evolve a single configuration");
    run_cmd->add_option("--sites", run.sites, "Number of loop sites n")->required();
    run_cmd->add_option("--sink", run.sink, "0-based sink site index")->required();
    run_cmd->add_option("--strength", run.strength, "Sink strength r in [0, 1]");
    run_cmd->add_option("--noise", run.noise, "Coin noise channel")
        ->check(CLI::IsMember({"none", "depolarizing", "dephasing"}));
    run_cmd->add_option("--p", run.p, "Noise strength P in [0, 1]");
    run_cmd->add_option("--dephase-angle", run.dephase_angle, "Dephasing angle in radians");
    run_cmd->add_option("--coin", run.coin, "Coin operator")
        ->check(CLI::IsMember({"symmetric", "rotation"}));
    run_cmd->add_option("--theta", run.theta, "Rotation coin angle in radians");
    run_cmd->add_option("--init-delta", run.init_delta, "Initial coin polar angle");
    run_cmd->add_option("--init-eta", run.init_eta, "Initial coin relative phase");
    run_cmd->add_option("--steps", run.steps, "Number of steps t_max");
    run_cmd->add_option("--engine", run.engine, "Propagation engine")
        ->check(CLI::IsMember({"density", "statevector"}));
    run_cmd->add_flag("--mid", run.mid, "Record measurement-induced disturbance");
    run_cmd->add_option("--mid-every", run.mid_every, "Compute MID every m steps");
    run_cmd->add_flag("--distribution", run.distribution, "Record site probabilities");
    run_cmd->add_option("--label", run.label, "Label written to every row");
    run_cmd->add_option("--out", run.out, "Output file (stdout when omitted)");
    run_cmd->add_option("--format", run.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));

    SweepOptions sweep;
    auto* sweep_cmd = app.add_subcommand("sweep", "Run a parameter sweep from a JSON config");
    sweep_cmd->add_option("--config", sweep.config, "Sweep document")->required();
    sweep_cmd->add_option("--workers", sweep.workers, "Worker threads")
        ->check(CLI::PositiveNumber);
    sweep_cmd->add_option("--out", sweep.out, "Output file (stdout when omitted)");
    sweep_cmd->add_option("--format", sweep.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));

    FigureOptions figure;
    figure.workers = std::max(1u, std::thread::hardware_concurrency());
    auto* figure_cmd = app.add_subcommand("figure", "Regenerate the data behind a figure");
    figure_cmd->add_option("--name", figure.name, "Preset name")
        ->required()
        ->check(CLI::IsMember(figure_names()));
    figure_cmd->add_option("--out", figure.out, "Output directory");
    figure_cmd->add_option("--workers", figure.workers, "Worker threads")
        ->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (run_cmd->parsed()) return run_command(run);
        if (sweep_cmd->parsed()) return sweep_command(sweep);
        return figure_command(figure);
    } catch (const Error& e) {
        std::cerr << "qloop: " << e.what() << '\n';
        return is_usage_error(e.code()) ? kExitUsage : kExitRuntime;
    } catch (const std::exception& e) {
        std::cerr << "qloop: " << e.what() << '\n';
        return kExitRuntime;
    }
}

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

#ifndef QLOOP_HARNESS_HPP
#define QLOOP_HARNESS_HPP

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qloop/noise.hpp"
#include "qloop/observables.hpp"
#include "qloop/walk.hpp"

namespace qloop {

struct ExperimentConfig {
    LoopConfig loop;
    NoiseSpec noise;
    std::size_t t_max = 40;
    ObservableFlags observables;
    /// MID cadence; empty selects the default (1 for n <= 21, else 5).
    std::optional<std::size_t> mid_every;
    std::string label;

    std::size_t effective_mid_every() const;
    void validate() const;

    bool operator==(const ExperimentConfig&) const = default;
};

/// Names accepted as sweep axes.
inline constexpr std::string_view kSweepParameters[] = {
    "n", "k", "r", "P", "delta_phase", "theta", "delta_init", "eta"};

struct SweepAxis {
    std::string parameter;
    std::vector<double> values;

    bool operator==(const SweepAxis&) const = default;
};

/// Cross product of axes applied on top of base. The first axis varies
/// slowest; expansion order is the output order.
struct SweepSpec {
    ExperimentConfig base;
    std::vector<SweepAxis> axes;

    std::size_t size() const;
    std::vector<ExperimentConfig> expand() const;

    bool operator==(const SweepSpec&) const = default;
};

struct ExperimentResult {
    ExperimentConfig config;
    std::vector<ResultRecord> records;
};

/// Deterministic: identical configs give bit-identical records. Engine errors
/// are rethrown with the config label prepended.
std::vector<ResultRecord> run_experiment(const ExperimentConfig& config);

/// Runs every grid point on a pool of `workers` threads. Results come back in
/// expansion order regardless of scheduling. The first failing point aborts
/// the sweep and its parameters are reported in the error.
std::vector<ExperimentResult> run_sweep(const SweepSpec& spec, std::size_t workers = 1);

/// Runs a batch of independent experiments, order-preserving.
std::vector<ExperimentResult> run_batch(std::span<const ExperimentConfig> configs,
                                        std::size_t workers = 1);

// ---- figure presets -------------------------------------------------------

struct FigurePanel {
    std::string name;   ///< "a", "b", ... or "main"
    std::string note;   ///< grid description, emitted as a CSV comment line
    std::vector<SweepSpec> series;
};

struct FigurePreset {
    std::string name;
    std::vector<FigurePanel> panels;
};

const std::vector<std::string>& figure_names();

/// Throws UnknownPreset.
FigurePreset figure_preset(std::string_view name);

/// Uniform grid first, first+step, ..., last (inclusive), rounded to 12
/// decimals so that 0.02 * 15 prints as 0.3.
std::vector<double> uniform_grid(double first, double last, double step);

// ---- output ---------------------------------------------------------------

enum class OutputFormat { Csv, Json };

inline constexpr std::string_view kCsvHeader =
    "label,n,k,r,noise,P,delta_phase,theta,delta_init,eta,t,te,trace,mid";
inline constexpr std::string_view kDistributionHeader = "label,t,site,probability";

std::string format_number(double value);

/// Main table. `comment`, when non-empty, is written first as "# ..." lines.
std::string results_csv(std::span<const ExperimentResult> results, std::string_view comment = {});
std::string distribution_csv(std::span<const ExperimentResult> results);
std::string results_json(std::span<const ExperimentResult> results);

/// Sibling path for the distribution table: out.csv -> out.distribution.csv.
std::filesystem::path distribution_path(const std::filesystem::path& path);

/// Writes the main table and, for CSV when any distribution was recorded,
/// the distribution sibling. Throws Io with the offending path.
void write_results(std::span<const ExperimentResult> results, OutputFormat format,
                   const std::filesystem::path& path, std::string_view comment = {});

// ---- config files -----------------------------------------------------------

/// Parse JSON documents whose keys mirror the struct field names exactly.
/// Unknown keys raise InvalidConfig.
ExperimentConfig parse_experiment_config(std::string_view json_text);
SweepSpec parse_sweep_spec(std::string_view json_text);
SweepSpec load_sweep_spec(const std::filesystem::path& path);

std::string to_json(const ExperimentConfig& config);
std::string to_json(const SweepSpec& spec);

} // namespace qloop

#endif // QLOOP_HARNESS_HPP

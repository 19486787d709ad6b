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

#include "qloop/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include <fmt/format.h>

#include "qloop/error.hpp"

namespace qloop {

namespace {

std::size_t as_count(std::string_view parameter, double value)
{
    if (!(value >= 0.0) || value != std::floor(value) || value > 1e9) {
        throw Error(ErrorCode::InvalidConfig,
                    fmt::format("sweep axis '{}' needs non-negative integers, got {}", parameter,
                                value));
    }
    return static_cast<std::size_t>(value);
}

void assign(ExperimentConfig& config, std::string_view parameter, double value)
{
    if (parameter == "n") {
        config.loop.n = as_count(parameter, value);
    } else if (parameter == "k") {
        config.loop.sink_site = as_count(parameter, value);
    } else if (parameter == "r") {
        config.loop.sink_strength = value;
    } else if (parameter == "P") {
        config.noise.strength = value;
    } else if (parameter == "delta_phase") {
        config.noise.dephase_angle = value;
    } else if (parameter == "theta") {
        config.loop.coin = CoinSpec::rotation(value);
    } else if (parameter == "delta_init") {
        config.loop.initial.delta_init = value;
    } else if (parameter == "eta") {
        config.loop.initial.eta = value;
    } else {
        throw Error(ErrorCode::InvalidConfig, fmt::format("unknown sweep parameter '{}'", parameter));
    }
}

std::string with_context(const ExperimentConfig& config, const std::exception& e)
{
    return fmt::format("[{}] {}", config.label.empty() ? "<unlabelled>" : config.label, e.what());
}

} // namespace

std::size_t ExperimentConfig::effective_mid_every() const
{
    if (mid_every) {
        return *mid_every;
    }
    return loop.n <= 21 ? 1 : 5;
}

void ExperimentConfig::validate() const
{
    loop.validate();
    noise.validate();
    if (mid_every && *mid_every == 0) {
        throw Error(ErrorCode::InvalidConfig, "mid_every must be at least 1");
    }
}

std::size_t SweepSpec::size() const
{
    std::size_t total = 1;
    for (const auto& axis : axes) {
        total *= axis.values.size();
    }
    return total;
}

std::vector<ExperimentConfig> SweepSpec::expand() const
{
    for (const auto& axis : axes) {
        if (std::find(std::begin(kSweepParameters), std::end(kSweepParameters), axis.parameter) ==
            std::end(kSweepParameters)) {
            throw Error(ErrorCode::InvalidConfig,
                        fmt::format("unknown sweep parameter '{}'", axis.parameter));
        }
        if (axis.values.empty()) {
            throw Error(ErrorCode::InvalidConfig,
                        fmt::format("sweep axis '{}' has no values", axis.parameter));
        }
    }

    std::vector<ExperimentConfig> points;
    points.reserve(size());
    std::vector<std::size_t> index(axes.size(), 0);
    for (std::size_t p = 0, total = size(); p < total; ++p) {
        ExperimentConfig config = base;
        std::string suffix;
        for (std::size_t a = 0; a < axes.size(); ++a) {
            const double value = axes[a].values[index[a]];
            assign(config, axes[a].parameter, value);
            suffix += fmt::format("{}{}={}", suffix.empty() ? "" : ";", axes[a].parameter,
                                  format_number(value));
        }
        if (!suffix.empty()) {
            config.label = fmt::format("{}[{}]", base.label, suffix);
        }
        try {
            config.validate();
        } catch (const Error& e) {
            throw Error(e.code(), with_context(config, e));
        }
        points.push_back(std::move(config));

        // Odometer with the last axis fastest.
        for (std::size_t a = axes.size(); a-- > 0;) {
            if (++index[a] < axes[a].values.size()) {
                break;
            }
            index[a] = 0;
        }
    }
    return points;
}

std::vector<ResultRecord> run_experiment(const ExperimentConfig& config)
{
    try {
        config.validate();
        RecordOptions options;
        options.observables = config.observables;
        options.mid_every = config.effective_mid_every();
        return evolve(config.loop, config.noise, config.t_max, options);
    } catch (const Error& e) {
        throw Error(e.code(), with_context(config, e));
    }
}

std::vector<ExperimentResult> run_batch(std::span<const ExperimentConfig> configs,
                                        std::size_t workers)
{
    std::vector<ExperimentResult> results(configs.size());
    std::atomic<std::size_t> next{0};
    std::atomic<bool> abort{false};
    std::mutex failure_mutex;
    std::size_t failed_index = configs.size();
    std::exception_ptr failure;

    auto worker = [&] {
        while (!abort.load(std::memory_order_relaxed)) {
            const std::size_t i = next.fetch_add(1);
            if (i >= configs.size()) {
                return;
            }
            try {
                results[i] = {configs[i], run_experiment(configs[i])};
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (i < failed_index) {
                    failed_index = i;
                    failure = std::current_exception();
                }
                abort.store(true);
            }
        }
    };

    const std::size_t threads = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(configs.size(), 1));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (std::size_t t = 0; t < threads; ++t) {
            pool.emplace_back(worker);
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    return results;
}

std::vector<ExperimentResult> run_sweep(const SweepSpec& spec, std::size_t workers)
{
    const std::vector<ExperimentConfig> points = spec.expand();
    return run_batch(points, workers);
}

} // namespace qloop

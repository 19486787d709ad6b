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

#include "qloop/walk.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qloop/error.hpp"

namespace qloop {

namespace {

const Complex kI(0.0, 1.0);

void check_dimension(std::size_t got, std::size_t n)
{
    if (got != 2 * n) {
        throw Error(ErrorCode::DimensionMismatch,
                    "state dimension " + std::to_string(got) + " does not match loop of " +
                        std::to_string(n) + " sites");
    }
}

ResultRecord make_record(std::size_t t, double trace)
{
    ResultRecord rec;
    rec.t = t;
    rec.trace = trace;
    rec.te = std::clamp(1.0 - trace, 0.0, 1.0);
    return rec;
}

void record_mid(ResultRecord& rec, const DensityMatrix& rho, const RecordOptions& options)
{
    if (!options.observables.mid || rec.t % options.mid_every != 0) {
        return;
    }
    if (!(rec.trace > kTraceFloor)) {
        rec.mid = 0.0;
        rec.vanished = true;
        return;
    }
    rec.mid = mid(rho);
}

void check_options(const RecordOptions& options)
{
    if (options.mid_every == 0) {
        throw Error(ErrorCode::InvalidConfig, "mid_every must be at least 1");
    }
}

} // namespace

void LoopConfig::validate() const
{
    if (n < 3) {
        throw Error(ErrorCode::InvalidConfig, "loop needs at least 3 sites, got " + std::to_string(n));
    }
    if (sink_site >= n) {
        throw Error(ErrorCode::InvalidConfig,
                    "sink site " + std::to_string(sink_site) + " outside loop of " +
                        std::to_string(n) + " sites");
    }
    if (!(sink_strength >= 0.0 && sink_strength <= 1.0)) {
        throw Error(ErrorCode::InvalidConfig,
                    "sink strength must lie in [0, 1], got " + std::to_string(sink_strength));
    }
    if (initial.start_site >= n) {
        throw Error(ErrorCode::InvalidConfig, "start site outside the loop");
    }
    if (!std::isfinite(coin.theta) || !std::isfinite(initial.delta_init) ||
        !std::isfinite(initial.eta)) {
        throw Error(ErrorCode::InvalidConfig, "coin and initial-state angles must be finite");
    }
}

CoinMatrix build_coin(const CoinSpec& spec)
{
    CoinMatrix b;
    if (spec.kind == CoinSpec::Kind::Rotation) {
        const double c = std::cos(spec.theta);
        const double s = std::sin(spec.theta);
        b << c, s,
             -s, c;
    } else {
        const double h = 1.0 / std::sqrt(2.0);
        b << h, -kI * h,
             -kI * h, h;
    }
    return b;
}

ComplexMatrix build_shift(std::size_t n)
{
    const auto sites = static_cast<Eigen::Index>(n);
    ComplexMatrix s = ComplexMatrix::Zero(2 * sites, 2 * sites);
    for (Eigen::Index j = 0; j < sites; ++j) {
        s((j + sites - 1) % sites, j) = 1.0;
        s(sites + (j + 1) % sites, sites + j) = 1.0;
    }
    return s;
}

ComplexMatrix build_walk(const LoopConfig& config)
{
    config.validate();
    const auto n = static_cast<Eigen::Index>(config.n);
    const CoinMatrix b = build_coin(config.coin);
    ComplexMatrix lifted = ComplexMatrix::Zero(2 * n, 2 * n);
    for (Eigen::Index a = 0; a < 2; ++a) {
        for (Eigen::Index c = 0; c < 2; ++c) {
            lifted.block(a * n, c * n, n, n).diagonal().setConstant(b(a, c));
        }
    }
    return build_shift(config.n) * lifted;
}

ComplexMatrix build_sink(std::size_t n, std::size_t k, double r)
{
    if (!(r >= 0.0 && r <= 1.0)) {
        throw Error(ErrorCode::InvalidConfig, "sink strength must lie in [0, 1]");
    }
    if (k >= n) {
        throw Error(ErrorCode::InvalidConfig, "sink site outside the loop");
    }
    const auto sites = static_cast<Eigen::Index>(n);
    ComplexMatrix s = ComplexMatrix::Identity(2 * sites, 2 * sites);
    const double keep = std::sqrt(1.0 - r);
    const auto site = static_cast<Eigen::Index>(k);
    s(site, site) = keep;
    s(sites + site, sites + site) = keep;
    return s;
}

PureState initial_state(const LoopConfig& config)
{
    config.validate();
    const auto n = static_cast<Eigen::Index>(config.n);
    const auto start = static_cast<Eigen::Index>(config.initial.start_site);
    ComplexVector v = ComplexVector::Zero(2 * n);
    v[start] = std::cos(config.initial.delta_init / 2.0);
    v[n + start] = std::exp(kI * config.initial.eta) * std::sin(config.initial.delta_init / 2.0);
    return PureState(std::move(v));
}

LoopPropagator::LoopPropagator(const LoopConfig& config)
    : config_(config),
      coin_(build_coin(config.coin)),
      walk_(build_walk(config)),
      step_(build_sink(config.n, config.sink_site, config.sink_strength) * walk_),
      sink_factor_(std::sqrt(1.0 - config.sink_strength))
{
    const auto n = static_cast<Eigen::Index>(config.n);
    shifted_.resize(static_cast<std::size_t>(2 * n));
    for (Eigen::Index j = 0; j < n; ++j) {
        shifted_[static_cast<std::size_t>(j)] = (j + n - 1) % n;
        shifted_[static_cast<std::size_t>(n + j)] = n + (j + 1) % n;
    }
}

PureState LoopPropagator::step(const PureState& psi) const
{
    check_dimension(psi.dim(), config_.n);
    return PureState(step_ * psi.amplitudes());
}

DensityMatrix LoopPropagator::step(const DensityMatrix& rho, const NoiseSpec& noise) const
{
    check_dimension(rho.dim(), config_.n);
    noise.validate();
    return DensityMatrix(step_raw(rho.matrix(), noise));
}

ComplexMatrix LoopPropagator::step_raw(const ComplexMatrix& rho, const NoiseSpec& noise) const
{
    const ComplexMatrix mixed = conjugate_coin(apply_channel_unchecked(rho, noise), coin_);

    const auto dim = static_cast<Eigen::Index>(shifted_.size());
    ComplexMatrix out(dim, dim);
    for (Eigen::Index col = 0; col < dim; ++col) {
        const Eigen::Index to_col = shifted_[static_cast<std::size_t>(col)];
        for (Eigen::Index row = 0; row < dim; ++row) {
            out(shifted_[static_cast<std::size_t>(row)], to_col) = mixed(row, col);
        }
    }

    if (sink_factor_ != 1.0) {
        const auto n = static_cast<Eigen::Index>(config_.n);
        const auto k = static_cast<Eigen::Index>(config_.sink_site);
        for (Eigen::Index idx : {k, n + k}) {
            out.row(idx) *= sink_factor_;
            out.col(idx) *= sink_factor_;
        }
    }
    return out;
}

PureState step_pure(const PureState& psi, const LoopConfig& config)
{
    return LoopPropagator(config).step(psi);
}

DensityMatrix step_density(const DensityMatrix& rho, const LoopConfig& config,
                           const NoiseSpec& noise)
{
    return LoopPropagator(config).step(rho, noise);
}

std::vector<ResultRecord> evolve(const LoopConfig& config, const NoiseSpec& noise,
                                 std::size_t t_max, const RecordOptions& options)
{
    check_options(options);
    noise.validate();
    const LoopPropagator propagator(config);

    std::vector<ResultRecord> records;
    records.reserve(t_max + 1);
    DensityMatrix rho = pure_to_density(initial_state(config));
    for (std::size_t t = 0;; ++t) {
        ResultRecord rec = make_record(t, rho.trace());
        if (options.observables.distribution) {
            rec.distribution = position_distribution(rho);
        }
        record_mid(rec, rho, options);
        records.push_back(std::move(rec));
        if (t == t_max) {
            break;
        }
        rho = DensityMatrix(propagator.step_raw(rho.matrix(), noise));
    }
    return records;
}

std::vector<ResultRecord> evolve_statevector(const LoopConfig& config, std::size_t t_max,
                                             const RecordOptions& options)
{
    check_options(options);
    const LoopPropagator propagator(config);

    std::vector<ResultRecord> records;
    records.reserve(t_max + 1);
    PureState psi = initial_state(config);
    for (std::size_t t = 0;; ++t) {
        ResultRecord rec = make_record(t, psi.norm_squared());
        if (options.observables.distribution) {
            rec.distribution = position_distribution(psi);
        }
        if (options.observables.mid && t % options.mid_every == 0) {
            record_mid(rec, pure_to_density(psi), options);
        }
        records.push_back(std::move(rec));
        if (t == t_max) {
            break;
        }
        psi = propagator.step(psi);
    }
    return records;
}

} // namespace qloop

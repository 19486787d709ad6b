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

#ifndef QLOOP_WALK_HPP
#define QLOOP_WALK_HPP

#include <cstddef>
#include <numbers>
#include <vector>

#include "qloop/noise.hpp"
#include "qloop/observables.hpp"
#include "qloop/qstate.hpp"

namespace qloop {

struct CoinSpec {
    enum class Kind { Rotation, SymmetricDft };

    Kind kind = Kind::SymmetricDft;
    double theta = 0.0; ///< radians, rotation only

    static CoinSpec rotation(double theta) { return {Kind::Rotation, theta}; }
    static CoinSpec symmetric() { return {Kind::SymmetricDft, 0.0}; }

    bool operator==(const CoinSpec&) const = default;
};

/// cos(delta/2)|up> + exp(i eta) sin(delta/2)|down>, localized at start_site.
/// The defaults give the symmetric state (|up> + |down>)/sqrt(2).
struct InitialStateSpec {
    double delta_init = std::numbers::pi / 2.0;
    double eta = 0.0;
    std::size_t start_site = 0;

    bool operator==(const InitialStateSpec&) const = default;
};

/// Closed loop of n sites with an absorbing sink. Sites are 0-based and all
/// shifts wrap mod n: the site labelled k in a 1-based drawing is index k-1.
struct LoopConfig {
    std::size_t n = 8;
    std::size_t sink_site = 1;
    double sink_strength = 1.0; ///< r: fraction of probability absorbed per visit
    CoinSpec coin;
    InitialStateSpec initial;

    /// Throws InvalidConfig.
    void validate() const;

    bool operator==(const LoopConfig&) const = default;
};

/// Index of the site nearest to / farthest from the start site 0.
inline std::size_t nearest_sink(std::size_t /*n*/) { return 1; }
inline std::size_t farthest_sink(std::size_t n) { return n / 2; }

CoinMatrix build_coin(const CoinSpec& spec);

/// Conditional shift: |up, j> -> |up, j-1>, |down, j> -> |down, j+1> (mod n).
ComplexMatrix build_shift(std::size_t n);

/// W = S (B (x) 1_n).
ComplexMatrix build_walk(const LoopConfig& config);

/// Diagonal 1_2 (x) s_k with sqrt(1 - r) at site k.
ComplexMatrix build_sink(std::size_t n, std::size_t k, double r);

PureState initial_state(const LoopConfig& config);

/**
 * Precomputed one-step propagator for a loop configuration.
 *
 * Pure states go through the dense sink * walk matrix. Density matrices go
 * through a structured kernel that never forms 2n x 2n products: the coin
 * acts blockwise, the shift is an index permutation, and the sink scales two
 * rows and two columns. Each density step applies channel, then W, then the
 * sink. Instances are immutable and can be shared across threads.
 */
class LoopPropagator {
public:
    explicit LoopPropagator(const LoopConfig& config);

    const LoopConfig& config() const noexcept { return config_; }
    const ComplexMatrix& walk_matrix() const noexcept { return walk_; }
    const ComplexMatrix& step_matrix() const noexcept { return step_; }

    PureState step(const PureState& psi) const;
    DensityMatrix step(const DensityMatrix& rho, const NoiseSpec& noise) const;

    /// Unchecked kernel on a raw coin-major matrix; noise must be validated.
    ComplexMatrix step_raw(const ComplexMatrix& rho, const NoiseSpec& noise) const;

private:
    LoopConfig config_;
    CoinMatrix coin_;
    ComplexMatrix walk_;
    ComplexMatrix step_; ///< sink * walk
    std::vector<Eigen::Index> shifted_; ///< destination index of each basis index
    double sink_factor_;
};

PureState step_pure(const PureState& psi, const LoopConfig& config);
DensityMatrix step_density(const DensityMatrix& rho, const LoopConfig& config,
                           const NoiseSpec& noise);

struct RecordOptions {
    ObservableFlags observables;
    std::size_t mid_every = 1;
};

/// Density-matrix evolution; returns records for t = 0..t_max, where t = 0 is
/// the initial state.
std::vector<ResultRecord> evolve(const LoopConfig& config, const NoiseSpec& noise,
                                 std::size_t t_max, const RecordOptions& options = {});

/// Noiseless state-vector evolution with the same record layout as evolve.
std::vector<ResultRecord> evolve_statevector(const LoopConfig& config, std::size_t t_max,
                                             const RecordOptions& options = {});

} // namespace qloop

#endif // QLOOP_WALK_HPP

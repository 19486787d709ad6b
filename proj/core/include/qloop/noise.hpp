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

#ifndef QLOOP_NOISE_HPP
#define QLOOP_NOISE_HPP

#include <optional>
#include <string_view>

#include "qloop/qstate.hpp"

namespace qloop {

/**
 * Coin-space noise channel. All Kraus operators act as K (x) 1_n, so the
 * position register is never touched directly.
 *
 *  - depolarizing:  rho -> (1-P) rho + P/3 (X rho X + Y rho Y + Z rho Z)
 *  - dephasing:     rho -> P E rho E^dagger + (1-P) rho,
 *                   E = |up><up| + exp(-i delta) |down><down|
 *
 * Note the depolarizing parameterization: a single application fully mixes
 * the coin at P = 3/4, not at P = 1.
 */
struct NoiseSpec {
    enum class Kind { None, Depolarizing, Dephasing };

    Kind kind = Kind::None;
    double strength = 0.0;      ///< P in [0, 1]
    double dephase_angle = 0.0; ///< radians, dephasing only

    static NoiseSpec none() { return {}; }
    static NoiseSpec depolarizing(double p) { return {Kind::Depolarizing, p, 0.0}; }
    static NoiseSpec dephasing(double p, double angle) { return {Kind::Dephasing, p, angle}; }

    /// Throws BadProbability / InvalidConfig.
    void validate() const;

    bool operator==(const NoiseSpec&) const = default;
};

std::string_view to_string(NoiseSpec::Kind kind) noexcept;
std::optional<NoiseSpec::Kind> parse_noise_kind(std::string_view name) noexcept;

DensityMatrix apply_depolarizing(const DensityMatrix& rho, double p);
DensityMatrix apply_dephasing(const DensityMatrix& rho, double p, double angle);
DensityMatrix apply_channel(const DensityMatrix& rho, const NoiseSpec& spec);

/// Raw-matrix form of apply_channel used by the propagator hot loop; skips
/// the DensityMatrix invariant checks. The spec must already be validated.
ComplexMatrix apply_channel_unchecked(const ComplexMatrix& rho, const NoiseSpec& spec);

} // namespace qloop

#endif // QLOOP_NOISE_HPP

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

#ifndef QLOOP_OBSERVABLES_HPP
#define QLOOP_OBSERVABLES_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "qloop/qstate.hpp"

namespace qloop {

/// States with trace at or below this are treated as fully absorbed.
inline constexpr double kTraceFloor = 1e-12;

/// Tolerance on the relative gap between marginal eigenvalues below which
/// they are merged into one measurement projector.
inline constexpr double kDegeneracyTolerance = 1e-10;

/// Observables of one time step. distribution sums to trace (it is not
/// renormalized); mid is empty when it was not computed at this step.
struct ResultRecord {
    std::size_t t = 0;
    double te = 0.0;
    double trace = 1.0;
    std::optional<std::vector<double>> distribution;
    std::optional<double> mid;
    bool vanished = false; ///< trace fell below kTraceFloor, mid reported as 0

    bool operator==(const ResultRecord&) const = default;
};

struct ObservableFlags {
    bool te = true;
    bool distribution = false;
    bool mid = false;

    bool operator==(const ObservableFlags&) const = default;
};

/// 1 - trace, clamped to [0, 1].
double transport_efficiency(const DensityMatrix& rho);
double transport_efficiency(const PureState& psi);

std::vector<double> position_distribution(const DensityMatrix& rho);
std::vector<double> position_distribution(const PureState& psi);

/// I = S(rho_position) + S(rho_coin) - S(rho), in nats, evaluated on
/// rho / trace(rho).
double mutual_information(const DensityMatrix& rho);

/**
 * Post-measurement state of a local projective measurement in the
 * eigenbases of both marginals. Eigenvalues of a marginal that agree within
 * kDegeneracyTolerance (relative to its largest eigenvalue) share one
 * projector, so a maximally mixed marginal does not disturb the state.
 *
 * The map is linear in rho and preserves its trace.
 */
DensityMatrix mid_projection(const DensityMatrix& rho);

/// Measurement-induced disturbance Q = I(rho) - I(Pi(rho)), nats, >= 0.
/// Scale invariant. Throws VanishedState when trace <= kTraceFloor.
double mid(const DensityMatrix& rho);

} // namespace qloop

#endif // QLOOP_OBSERVABLES_HPP

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

#include "qloop/noise.hpp"

#include <cmath>
#include <string>

#include "qloop/error.hpp"

namespace qloop {

namespace {

const Complex kI(0.0, 1.0);

void check_probability(double p)
{
    if (!(p >= 0.0 && p <= 1.0)) {
        throw Error(ErrorCode::BadProbability,
                    "noise strength must lie in [0, 1], got " + std::to_string(p));
    }
}

// Both channels act on the four n x n coin blocks [[A, B], [C, D]] of rho.
// Summing the Pauli conjugations gives X+Y+Z terms [[A + 2D, -B], [-C, D + 2A]],
// so the depolarizing map mixes the diagonal blocks and scales the
// off-diagonal ones. Conjugating by E = diag(1, exp(-i delta)) only rephases
// the off-diagonal blocks.
ComplexMatrix depolarize(const ComplexMatrix& rho, double p)
{
    if (p == 0.0) {
        return rho;
    }
    const Eigen::Index n = rho.rows() / 2;
    const double keep = 1.0 - 2.0 * p / 3.0;
    const double swap = 2.0 * p / 3.0;
    ComplexMatrix out(rho.rows(), rho.cols());
    out.topLeftCorner(n, n) = keep * rho.topLeftCorner(n, n) + swap * rho.bottomRightCorner(n, n);
    out.bottomRightCorner(n, n) =
        keep * rho.bottomRightCorner(n, n) + swap * rho.topLeftCorner(n, n);
    out.topRightCorner(n, n) = (1.0 - 4.0 * p / 3.0) * rho.topRightCorner(n, n);
    out.bottomLeftCorner(n, n) = (1.0 - 4.0 * p / 3.0) * rho.bottomLeftCorner(n, n);
    return out;
}

ComplexMatrix dephase(const ComplexMatrix& rho, double p, double angle)
{
    if (p == 0.0) {
        return rho;
    }
    const Eigen::Index n = rho.rows() / 2;
    const Complex phase = (1.0 - p) + p * std::exp(kI * angle);
    ComplexMatrix out = rho;
    out.topRightCorner(n, n) *= phase;
    out.bottomLeftCorner(n, n) *= std::conj(phase);
    return out;
}

} // namespace

void NoiseSpec::validate() const
{
    check_probability(strength);
    if (!std::isfinite(dephase_angle)) {
        throw Error(ErrorCode::InvalidConfig, "dephasing angle must be finite");
    }
}

std::string_view to_string(NoiseSpec::Kind kind) noexcept
{
    switch (kind) {
    case NoiseSpec::Kind::None: return "none";
    case NoiseSpec::Kind::Depolarizing: return "depolarizing";
    case NoiseSpec::Kind::Dephasing: return "dephasing";
    }
    return "none";
}

std::optional<NoiseSpec::Kind> parse_noise_kind(std::string_view name) noexcept
{
    if (name == "none") return NoiseSpec::Kind::None;
    if (name == "depolarizing") return NoiseSpec::Kind::Depolarizing;
    if (name == "dephasing") return NoiseSpec::Kind::Dephasing;
    return std::nullopt;
}

DensityMatrix apply_depolarizing(const DensityMatrix& rho, double p)
{
    check_probability(p);
    static_cast<void>(rho.sites()); // BadDimension on odd dim
    return DensityMatrix(depolarize(rho.matrix(), p));
}

DensityMatrix apply_dephasing(const DensityMatrix& rho, double p, double angle)
{
    check_probability(p);
    static_cast<void>(rho.sites()); // BadDimension on odd dim
    return DensityMatrix(dephase(rho.matrix(), p, angle));
}

DensityMatrix apply_channel(const DensityMatrix& rho, const NoiseSpec& spec)
{
    spec.validate();
    switch (spec.kind) {
    case NoiseSpec::Kind::None: return rho;
    case NoiseSpec::Kind::Depolarizing: return apply_depolarizing(rho, spec.strength);
    case NoiseSpec::Kind::Dephasing:
        return apply_dephasing(rho, spec.strength, spec.dephase_angle);
    }
    return rho;
}

ComplexMatrix apply_channel_unchecked(const ComplexMatrix& rho, const NoiseSpec& spec)
{
    switch (spec.kind) {
    case NoiseSpec::Kind::None: return rho;
    case NoiseSpec::Kind::Depolarizing: return depolarize(rho, spec.strength);
    case NoiseSpec::Kind::Dephasing: return dephase(rho, spec.strength, spec.dephase_angle);
    }
    return rho;
}

} // namespace qloop

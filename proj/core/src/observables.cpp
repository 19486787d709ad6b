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

#include "qloop/observables.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qloop/error.hpp"

namespace qloop {

namespace {

// Labels each (ascending) eigenvalue with the index of its degeneracy group.
std::vector<int> degeneracy_groups(const RealVector& values)
{
    std::vector<int> groups(static_cast<std::size_t>(values.size()), 0);
    const double scale = std::max(values.cwiseAbs().maxCoeff(), 1e-300);
    int current = 0;
    for (Eigen::Index i = 1; i < values.size(); ++i) {
        if (values[i] - values[i - 1] > kDegeneracyTolerance * scale) {
            ++current;
        }
        groups[static_cast<std::size_t>(i)] = current;
    }
    return groups;
}

void require_live(double tr)
{
    if (!(tr > kTraceFloor)) {
        throw Error(ErrorCode::VanishedState,
                    "state trace " + std::to_string(tr) + " is below the vanishing floor");
    }
}

double mutual_information_normalized(const DensityMatrix& rho)
{
    return von_neumann_entropy(partial_trace(rho, Subsystem::Position)) +
           von_neumann_entropy(partial_trace(rho, Subsystem::Coin)) -
           von_neumann_entropy(rho);
}

} // namespace

double transport_efficiency(const DensityMatrix& rho)
{
    return std::clamp(1.0 - rho.trace(), 0.0, 1.0);
}

double transport_efficiency(const PureState& psi)
{
    return std::clamp(1.0 - psi.norm_squared(), 0.0, 1.0);
}

std::vector<double> position_distribution(const DensityMatrix& rho)
{
    const std::size_t n = rho.sites();
    const ComplexMatrix& m = rho.matrix();
    std::vector<double> p(n);
    for (std::size_t j = 0; j < n; ++j) {
        const auto up = static_cast<Eigen::Index>(j);
        const auto down = static_cast<Eigen::Index>(n + j);
        p[j] = m(up, up).real() + m(down, down).real();
    }
    return p;
}

std::vector<double> position_distribution(const PureState& psi)
{
    if (psi.dim() % 2 != 0) {
        throw Error(ErrorCode::BadDimension, "pure state dimension must be even");
    }
    const std::size_t n = psi.dim() / 2;
    const ComplexVector& a = psi.amplitudes();
    std::vector<double> p(n);
    for (std::size_t j = 0; j < n; ++j) {
        p[j] = std::norm(a[static_cast<Eigen::Index>(j)]) +
               std::norm(a[static_cast<Eigen::Index>(n + j)]);
    }
    return p;
}

double mutual_information(const DensityMatrix& rho)
{
    require_live(rho.trace());
    return mutual_information_normalized(rho.normalized(kTraceFloor));
}

DensityMatrix mid_projection(const DensityMatrix& rho)
{
    require_live(rho.trace());
    const auto n = static_cast<Eigen::Index>(rho.sites());

    const Eigensystem position = hermitian_eigendecomposition(
        partial_trace(rho, Subsystem::Position).matrix());
    const Eigensystem coin = hermitian_eigendecomposition(
        partial_trace(rho, Subsystem::Coin).matrix());
    const std::vector<int> position_group = degeneracy_groups(position.values);
    const std::vector<int> coin_group = degeneracy_groups(coin.values);

    // Product eigenbasis in coin-major order: column c*n + j is
    // coin.vectors[:, c] (x) position.vectors[:, j].
    const Eigen::Index dim = 2 * n;
    ComplexMatrix basis(dim, dim);
    for (Eigen::Index c = 0; c < 2; ++c) {
        for (Eigen::Index j = 0; j < n; ++j) {
            for (Eigen::Index a = 0; a < 2; ++a) {
                basis.block(a * n, c * n + j, n, 1) = coin.vectors(a, c) * position.vectors.col(j);
            }
        }
    }

    // In the product basis, the pinching keeps exactly the entries whose row
    // and column fall in the same (coin group, position group) cell.
    ComplexMatrix local = basis.adjoint() * rho.matrix() * basis;
    for (Eigen::Index col = 0; col < dim; ++col) {
        const int col_coin = coin_group[static_cast<std::size_t>(col / n)];
        const int col_pos = position_group[static_cast<std::size_t>(col % n)];
        for (Eigen::Index row = 0; row < dim; ++row) {
            if (coin_group[static_cast<std::size_t>(row / n)] != col_coin ||
                position_group[static_cast<std::size_t>(row % n)] != col_pos) {
                local(row, col) = Complex(0.0, 0.0);
            }
        }
    }
    ComplexMatrix projected = basis * local * basis.adjoint();
    // Restore exact Hermiticity lost to round-off in the two products.
    projected = 0.5 * (projected + projected.adjoint()).eval();
    return DensityMatrix(std::move(projected));
}

double mid(const DensityMatrix& rho)
{
    require_live(rho.trace());
    const DensityMatrix normalized = rho.normalized(kTraceFloor);
    const DensityMatrix projected = mid_projection(normalized).normalized(kTraceFloor);
    const double q =
        mutual_information_normalized(normalized) - mutual_information_normalized(projected);
    if (q < -1e-8) {
        throw Error(ErrorCode::ContractViolation,
                    "measurement-induced disturbance came out negative: " + std::to_string(q));
    }
    return std::max(q, 0.0);
}

} // namespace qloop

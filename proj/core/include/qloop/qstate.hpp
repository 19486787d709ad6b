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

#ifndef QLOOP_QSTATE_HPP
#define QLOOP_QSTATE_HPP

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

namespace qloop {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using CoinMatrix = Eigen::Matrix2cd;

inline constexpr double kHermitianTolerance = 1e-10;
inline constexpr double kPsdTolerance = 1e-10;
inline constexpr double kTraceTolerance = 1e-10;
/// Eigenvalues at or below this contribute nothing to an entropy.
inline constexpr double kEigenvalueFloor = 1e-14;

/**
 * Density operator on a finite Hilbert space.
 *
 * The walk uses a coin-major basis for the 2n-dimensional coin (x) position
 * space: index i = c*n + j, with c = 0 for spin up, c = 1 for spin down and
 * j the 0-based site. Reduced states (2x2 coin, n x n position) are plain
 * DensityMatrix values too.
 *
 * Construction checks squareness, finiteness and Hermiticity. Positivity is
 * checked lazily by the spectral routines that depend on it.
 */
class DensityMatrix {
public:
    explicit DensityMatrix(ComplexMatrix matrix);

    std::size_t dim() const noexcept { return static_cast<std::size_t>(matrix_.rows()); }
    const ComplexMatrix& matrix() const noexcept { return matrix_; }

    /// Real part of the trace (the imaginary part is zero up to round-off).
    double trace() const;

    /// Number of loop sites for a coin (x) position state, dim / 2.
    std::size_t sites() const;

    DensityMatrix scaled(double factor) const;

    /// Divides by the trace. Throws VanishedState when trace <= floor.
    DensityMatrix normalized(double floor = 1e-12) const;

private:
    ComplexMatrix matrix_;
};

/// Amplitude vector in the same coin-major basis as DensityMatrix.
class PureState {
public:
    explicit PureState(ComplexVector amplitudes);

    std::size_t dim() const noexcept { return static_cast<std::size_t>(amplitudes_.size()); }
    const ComplexVector& amplitudes() const noexcept { return amplitudes_; }
    double norm_squared() const { return amplitudes_.squaredNorm(); }

private:
    ComplexVector amplitudes_;
};

struct Eigensystem {
    RealVector values;     ///< ascending
    ComplexMatrix vectors; ///< column i belongs to values[i]
};

enum class Subsystem { Coin, Position };

Eigensystem hermitian_eigendecomposition(const ComplexMatrix& m);

/// Von Neumann entropy in nats. Requires unit trace.
double von_neumann_entropy(const DensityMatrix& rho);

DensityMatrix partial_trace(const DensityMatrix& rho, Subsystem keep);

DensityMatrix pure_to_density(const PureState& psi);

/// Max-norm of m - m^dagger.
double hermiticity_defect(const ComplexMatrix& m);

/// Computes (K (x) 1_n) rho (K (x) 1_n)^dagger blockwise for a coin-major
/// matrix of dimension 2n, without forming the 2n x 2n lift of K.
ComplexMatrix conjugate_coin(const ComplexMatrix& rho, const CoinMatrix& k);

} // namespace qloop

#endif // QLOOP_QSTATE_HPP

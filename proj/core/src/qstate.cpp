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

#include "qloop/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "qloop/error.hpp"

namespace qloop {

namespace {

bool all_finite(const ComplexMatrix& m)
{
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) {
                return false;
            }
        }
    }
    return true;
}

} // namespace

double hermiticity_defect(const ComplexMatrix& m)
{
    double worst = 0.0;
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        for (Eigen::Index i = 0; i <= j; ++i) {
            worst = std::max(worst, std::abs(m(i, j) - std::conj(m(j, i))));
        }
    }
    return worst;
}

DensityMatrix::DensityMatrix(ComplexMatrix matrix) : matrix_(std::move(matrix))
{
    if (matrix_.rows() == 0 || matrix_.rows() != matrix_.cols()) {
        throw Error(ErrorCode::BadDimension,
                    "density matrix must be square and non-empty, got " +
                        std::to_string(matrix_.rows()) + "x" + std::to_string(matrix_.cols()));
    }
    if (!all_finite(matrix_)) {
        throw Error(ErrorCode::ContractViolation, "density matrix has non-finite entries");
    }
    const double defect = hermiticity_defect(matrix_);
    if (defect > kHermitianTolerance) {
        throw Error(ErrorCode::NonHermitianInput,
                    "density matrix deviates from Hermitian by " + std::to_string(defect));
    }
}

double DensityMatrix::trace() const { return matrix_.trace().real(); }

std::size_t DensityMatrix::sites() const
{
    if (dim() % 2 != 0) {
        throw Error(ErrorCode::BadDimension,
                    "coin x position state needs an even dimension, got " + std::to_string(dim()));
    }
    return dim() / 2;
}

DensityMatrix DensityMatrix::scaled(double factor) const { return DensityMatrix(matrix_ * factor); }

DensityMatrix DensityMatrix::normalized(double floor) const
{
    const double tr = trace();
    if (!(tr > floor)) {
        throw Error(ErrorCode::VanishedState,
                    "cannot normalize state with trace " + std::to_string(tr));
    }
    return DensityMatrix(matrix_ / tr);
}

PureState::PureState(ComplexVector amplitudes) : amplitudes_(std::move(amplitudes))
{
    if (amplitudes_.size() == 0) {
        throw Error(ErrorCode::BadDimension, "pure state must be non-empty");
    }
    for (Eigen::Index i = 0; i < amplitudes_.size(); ++i) {
        if (!std::isfinite(amplitudes_[i].real()) || !std::isfinite(amplitudes_[i].imag())) {
            throw Error(ErrorCode::ContractViolation, "pure state has non-finite amplitudes");
        }
    }
}

Eigensystem hermitian_eigendecomposition(const ComplexMatrix& m)
{
    if (m.rows() == 0 || m.rows() != m.cols()) {
        throw Error(ErrorCode::BadDimension, "eigendecomposition needs a square matrix");
    }
    const double defect = hermiticity_defect(m);
    if (defect > kHermitianTolerance) {
        throw Error(ErrorCode::NonHermitianInput,
                    "matrix deviates from Hermitian by " + std::to_string(defect));
    }
    // Eigen returns eigenvalues in increasing order and is deterministic for
    // a given input, which keeps MID projectors reproducible run to run.
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorCode::ContractViolation, "Hermitian eigensolver did not converge");
    }
    return {solver.eigenvalues(), solver.eigenvectors()};
}

double von_neumann_entropy(const DensityMatrix& rho)
{
    const double tr = rho.trace();
    if (std::abs(tr - 1.0) > kTraceTolerance) {
        throw Error(ErrorCode::NotNormalized,
                    "entropy needs unit trace, got " + std::to_string(tr));
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(rho.matrix(), Eigen::EigenvaluesOnly);
    double s = 0.0;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
        const double lambda = solver.eigenvalues()[i];
        if (lambda < -kPsdTolerance) {
            throw Error(ErrorCode::PsdViolation,
                        "negative eigenvalue " + std::to_string(lambda));
        }
        if (lambda > kEigenvalueFloor) {
            s -= lambda * std::log(lambda);
        }
    }
    return s;
}

DensityMatrix partial_trace(const DensityMatrix& rho, Subsystem keep)
{
    const auto n = static_cast<Eigen::Index>(rho.sites());
    const ComplexMatrix& m = rho.matrix();
    if (keep == Subsystem::Coin) {
        ComplexMatrix out(2, 2);
        for (Eigen::Index a = 0; a < 2; ++a) {
            for (Eigen::Index b = 0; b < 2; ++b) {
                out(a, b) = m.block(a * n, b * n, n, n).trace();
            }
        }
        return DensityMatrix(std::move(out));
    }
    return DensityMatrix(m.topLeftCorner(n, n) + m.bottomRightCorner(n, n));
}

DensityMatrix pure_to_density(const PureState& psi)
{
    const ComplexVector& v = psi.amplitudes();
    return DensityMatrix(v * v.adjoint());
}

ComplexMatrix conjugate_coin(const ComplexMatrix& rho, const CoinMatrix& k)
{
    const Eigen::Index n = rho.rows() / 2;
    if (rho.rows() != rho.cols() || rho.rows() % 2 != 0) {
        throw Error(ErrorCode::BadDimension, "coin conjugation needs a square even-dimensional matrix");
    }
    // out_ab = sum_cd k_ac conj(k_bd) rho_cd, one pass over the four blocks.
    // Products are expanded by hand so the compiler never takes the checked
    // complex-multiply path.
    double wr[2][2][4];
    double wi[2][2][4];
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            for (int c = 0; c < 2; ++c) {
                for (int d = 0; d < 2; ++d) {
                    const Complex w = k(a, c) * std::conj(k(b, d));
                    wr[a][b][2 * c + d] = w.real();
                    wi[a][b][2 * c + d] = w.imag();
                }
            }
        }
    }

    ComplexMatrix out(rho.rows(), rho.cols());
    for (Eigen::Index col = 0; col < n; ++col) {
        const Complex* s00 = &rho(0, col);
        const Complex* s01 = &rho(0, n + col);
        const Complex* s10 = &rho(n, col);
        const Complex* s11 = &rho(n, n + col);
        Complex* dst[2][2] = {{&out(0, col), &out(0, n + col)}, {&out(n, col), &out(n, n + col)}};
        for (Eigen::Index row = 0; row < n; ++row) {
            const double xr[4] = {s00[row].real(), s01[row].real(), s10[row].real(), s11[row].real()};
            const double xi[4] = {s00[row].imag(), s01[row].imag(), s10[row].imag(), s11[row].imag()};
            for (int a = 0; a < 2; ++a) {
                for (int b = 0; b < 2; ++b) {
                    double re = 0.0;
                    double im = 0.0;
                    for (int q = 0; q < 4; ++q) {
                        re += wr[a][b][q] * xr[q] - wi[a][b][q] * xi[q];
                        im += wr[a][b][q] * xi[q] + wi[a][b][q] * xr[q];
                    }
                    dst[a][b][row] = Complex(re, im);
                }
            }
        }
    }
    return out;
}

} // namespace qloop

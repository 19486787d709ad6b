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
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "qloop/error.hpp"
#include "qloop/walk.hpp"
#include "support/oracles.hpp"

using namespace qloop;
using qloop::ref::max_abs_diff;

namespace {

constexpr double kPi = std::numbers::pi;

ComplexMatrix coin_product(const Eigen::Matrix2cd& coin, const ComplexMatrix& position)
{
    const Eigen::Index n = position.rows();
    ComplexMatrix out(2 * n, 2 * n);
    for (Eigen::Index a = 0; a < 2; ++a)
        for (Eigen::Index b = 0; b < 2; ++b)
            out.block(a * n, b * n, n, n) = coin(a, b) * position;
    return out;
}

ComplexMatrix coin_marginal(const DensityMatrix& rho)
{
    return partial_trace(rho, Subsystem::Coin).matrix();
}

std::vector<double> te_series(const LoopConfig& c, const NoiseSpec& noise, std::size_t t_max)
{
    std::vector<double> te;
    for (const auto& rec : evolve(c, noise, t_max)) {
        te.push_back(rec.te);
    }
    return te;
}

} // namespace

TEST(NoiseSpec, validation_and_names)
{
    EXPECT_THROW(NoiseSpec::depolarizing(-0.01).validate(), Error);
    EXPECT_THROW(NoiseSpec::dephasing(1.01, 0.0).validate(), Error);
    try {
        NoiseSpec::depolarizing(2.0).validate();
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::BadProbability);
    }
    EXPECT_NO_THROW(NoiseSpec::dephasing(1.0, kPi).validate());
    for (auto kind : {NoiseSpec::Kind::None, NoiseSpec::Kind::Depolarizing,
                      NoiseSpec::Kind::Dephasing}) {
        EXPECT_EQ(parse_noise_kind(to_string(kind)), kind);
    }
    EXPECT_FALSE(parse_noise_kind("amplitude_damping"));
}

TEST(Depolarizing, zero_strength_is_identity)
{
    std::mt19937_64 rng(41);
    const DensityMatrix rho(ref::random_density(10, rng));
    EXPECT_LE(max_abs_diff(apply_depolarizing(rho, 0.0).matrix(), rho.matrix()), 1e-15);
}

TEST(Depolarizing, three_quarters_fully_mixes_coin)
{
    std::mt19937_64 rng(43);
    const DensityMatrix rho(ref::random_density(12, rng, 0.7));
    EXPECT_LE(max_abs_diff(coin_marginal(apply_depolarizing(rho, 0.75)),
                           ComplexMatrix::Identity(2, 2) * 0.7 / 2.0),
              1e-12);
}

TEST(Depolarizing, full_strength_on_up_coin)
{
    std::mt19937_64 rng(47);
    const ComplexMatrix pos = ref::random_density(4, rng, 0.8);
    Eigen::Matrix2cd up = Eigen::Matrix2cd::Zero();
    up(0, 0) = 1.0;
    const DensityMatrix out = apply_depolarizing(DensityMatrix(coin_product(up, pos)), 1.0);
    ComplexMatrix expected = ComplexMatrix::Zero(2, 2);
    expected(0, 0) = 0.8 / 3.0;
    expected(1, 1) = 0.8 * 2.0 / 3.0;
    EXPECT_LE(max_abs_diff(coin_marginal(out), expected), 1e-12);
}

TEST(Depolarizing, maximally_mixed_coin_is_fixed)
{
    std::mt19937_64 rng(53);
    const ComplexMatrix pos = ref::random_density(5, rng);
    const DensityMatrix rho(coin_product(Eigen::Matrix2cd::Identity() / 2.0, pos));
    for (double p : {0.0, 0.1, 0.5, 0.75, 1.0}) {
        EXPECT_LE(max_abs_diff(apply_depolarizing(rho, p).matrix(), rho.matrix()), 1e-12);
    }
}

TEST(Dephasing, zero_angle_is_identity)
{
    std::mt19937_64 rng(59);
    const DensityMatrix rho(ref::random_density(8, rng));
    EXPECT_LE(max_abs_diff(apply_dephasing(rho, 0.7, 0.0).matrix(), rho.matrix()), 1e-15);
}

TEST(Dephasing, half_phase_flip_kills_coin_coherence)
{
    ComplexVector v = ComplexVector::Zero(6);
    v[0] = v[3] = 1.0 / std::sqrt(2.0);
    const DensityMatrix out = apply_dephasing(pure_to_density(PureState(v)), 0.5, kPi);
    const ComplexMatrix coin = coin_marginal(out);
    EXPECT_NEAR(std::abs(coin(0, 1)), 0.0, 1e-15);
    EXPECT_NEAR(coin(0, 0).real(), 0.5, 1e-15);
}

TEST(Dephasing, leaves_coin_block_diagonals_alone)
{
    std::mt19937_64 rng(61);
    const DensityMatrix rho(ref::random_density(10, rng));
    const DensityMatrix out = apply_dephasing(rho, 0.8, 1.3);
    EXPECT_LE((out.matrix().diagonal() - rho.matrix().diagonal()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Channel, dispatch_and_involution)
{
    std::mt19937_64 rng(67);
    const DensityMatrix rho(ref::random_density(8, rng, 0.5));
    EXPECT_EQ(apply_channel(rho, NoiseSpec::none()).matrix(), rho.matrix());
    EXPECT_LE(max_abs_diff(apply_channel(rho, NoiseSpec::depolarizing(0.0)).matrix(), rho.matrix()),
              1e-15);
    const NoiseSpec flip = NoiseSpec::dephasing(1.0, kPi);
    EXPECT_LE(max_abs_diff(apply_channel(apply_channel(rho, flip), flip).matrix(), rho.matrix()),
              1e-12);
    EXPECT_THROW(apply_channel(rho, NoiseSpec::depolarizing(1.5)), Error);
    EXPECT_THROW(apply_channel(DensityMatrix(ComplexMatrix::Identity(3, 3)), flip), Error);
}

TEST(Channel, trace_preserving_positive_and_linear)
{
    std::mt19937_64 rng(71);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 2 + trial % 6;
        const NoiseSpec spec = trial % 2 == 0
                                   ? NoiseSpec::depolarizing(unit(rng))
                                   : NoiseSpec::dephasing(unit(rng), 2.0 * kPi * unit(rng));
        const ComplexMatrix a = ref::random_density(2 * n, rng, unit(rng), 1 + trial % 3);
        const ComplexMatrix b = ref::random_density(2 * n, rng, unit(rng));
        const DensityMatrix out = apply_channel(DensityMatrix(a), spec);
        EXPECT_NEAR(out.trace(), DensityMatrix(a).trace(), 1e-12);
        EXPECT_GE(hermitian_eigendecomposition(out.matrix()).values.minCoeff(), -1e-10);

        const double alpha = unit(rng);
        const ComplexMatrix lhs =
            apply_channel(DensityMatrix(alpha * a + (1.0 - alpha) * b), spec).matrix();
        const ComplexMatrix rhs = alpha * out.matrix() +
                                  (1.0 - alpha) * apply_channel(DensityMatrix(b), spec).matrix();
        EXPECT_LE(max_abs_diff(lhs, rhs), 1e-12);
    }
}

// With P = 1 and delta = pi every step conjugates the coin by Z. Matching
// that walk to the clean one takes site phases i^j on the coin components,
// which only close around the ring when 4 divides n. A perfect sink cuts the
// ring and removes the closing condition.
TEST(Dephasing, full_phase_flip_reproduces_clean_transport)
{
    const NoiseSpec flip = NoiseSpec::dephasing(1.0, kPi);
    struct Case { std::size_t n; double r; };
    for (Case c : {Case{8, 0.6}, Case{8, 1.0}, Case{12, 0.3}, Case{16, 0.6}, Case{21, 1.0},
                   Case{7, 1.0}, Case{10, 1.0}}) {
        for (std::size_t k : {nearest_sink(c.n), farthest_sink(c.n)}) {
            LoopConfig loop;
            loop.n = c.n;
            loop.sink_site = k;
            loop.sink_strength = c.r;
            const auto clean = te_series(loop, NoiseSpec::none(), 100);
            const auto flipped = te_series(loop, flip, 100);
            for (std::size_t t = 0; t < clean.size(); ++t) {
                ASSERT_NEAR(clean[t], flipped[t], 1e-10)
                    << "n=" << c.n << " k=" << k << " r=" << c.r << " t=" << t;
            }
        }
    }
}

TEST(Dephasing, full_phase_flip_differs_when_gauge_cannot_close)
{
    struct Case { std::size_t n; std::size_t k; double r; };
    for (Case c : {Case{21, 1, 0.6}, Case{21, 10, 0.6}, Case{10, 1, 0.3}, Case{6, 3, 0.6}}) {
        LoopConfig loop;
        loop.n = c.n;
        loop.sink_site = c.k;
        loop.sink_strength = c.r;
        const auto clean = te_series(loop, NoiseSpec::none(), 100);
        const auto flipped = te_series(loop, NoiseSpec::dephasing(1.0, kPi), 100);
        double worst = 0.0;
        for (std::size_t t = 0; t < clean.size(); ++t) {
            worst = std::max(worst, std::abs(clean[t] - flipped[t]));
        }
        EXPECT_GT(worst, 1e-3) << "n=" << c.n << " k=" << c.k;
    }
}

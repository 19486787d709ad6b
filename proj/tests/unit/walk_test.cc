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

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "qloop/error.hpp"
#include "support/oracles.hpp"

using namespace qloop;
using qloop::ref::max_abs_diff;

namespace {

const Complex kI(0.0, 1.0);

LoopConfig loop(std::size_t n, std::size_t k, double r)
{
    LoopConfig c;
    c.n = n;
    c.sink_site = k;
    c.sink_strength = r;
    return c;
}

// Dense one-step reference built without the engine's operators:
// S_k W K(rho) W^dagger S_k^dagger with K a Kraus sum on the lifted coin.
ComplexMatrix reference_step(const ComplexMatrix& rho, std::size_t n, std::size_t k, double r,
                             const NoiseSpec& noise)
{
    const auto sites = static_cast<Eigen::Index>(n);
    ComplexMatrix channel_out;
    if (noise.kind == NoiseSpec::Kind::Depolarizing) {
        Eigen::Matrix2cd x, y, z;
        x << 0, 1, 1, 0;
        y << 0, -kI, kI, 0;
        z << 1, 0, 0, -1;
        channel_out = (1.0 - noise.strength) * rho;
        for (const auto& pauli : {x, y, z}) {
            const ComplexMatrix l = ref::lift_coin(pauli, n);
            channel_out += noise.strength / 3.0 * l * rho * l.adjoint();
        }
    } else if (noise.kind == NoiseSpec::Kind::Dephasing) {
        Eigen::Matrix2cd e;
        e << 1, 0, 0, std::exp(-kI * noise.dephase_angle);
        const ComplexMatrix l = ref::lift_coin(e, n);
        channel_out = noise.strength * l * rho * l.adjoint() + (1.0 - noise.strength) * rho;
    } else {
        channel_out = rho;
    }

    Eigen::Matrix2cd b;
    b << 1, -kI, -kI, 1;
    b /= std::sqrt(2.0);
    ComplexMatrix shift = ComplexMatrix::Zero(2 * sites, 2 * sites);
    for (Eigen::Index j = 0; j < sites; ++j) {
        shift((j + sites - 1) % sites, j) = 1.0;
        shift(sites + (j + 1) % sites, sites + j) = 1.0;
    }
    ComplexMatrix sink = ComplexMatrix::Identity(2 * sites, 2 * sites);
    sink(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) = std::sqrt(1.0 - r);
    sink(sites + static_cast<Eigen::Index>(k), sites + static_cast<Eigen::Index>(k)) =
        std::sqrt(1.0 - r);
    const ComplexMatrix u = sink * shift * ref::lift_coin(b, n);
    return u * channel_out * u.adjoint();
}

} // namespace

TEST(Coin, examples)
{
    EXPECT_EQ(build_coin(CoinSpec::rotation(0.0)), CoinMatrix::Identity());
    CoinMatrix quarter;
    quarter << 0, 1, -1, 0;
    EXPECT_LE((build_coin(CoinSpec::rotation(std::numbers::pi / 2)) - quarter).cwiseAbs().maxCoeff(),
              1e-15);
    const CoinMatrix b = build_coin(CoinSpec::symmetric());
    const double h = 1.0 / std::sqrt(2.0);
    CoinMatrix expected;
    expected << h, -kI * h, -kI * h, h;
    EXPECT_LE((b - expected).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_LE((b * b.adjoint() - CoinMatrix::Identity()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Shift, cyclic_wrap)
{
    const ComplexMatrix s = build_shift(3);
    // |up,0> (index 0) -> |up,2> (index 2); |down,2> (index 5) -> |down,0> (index 3).
    EXPECT_EQ(s(2, 0), Complex(1.0));
    EXPECT_EQ(s(3, 5), Complex(1.0));
    for (std::size_t n : {3, 4, 9, 50}) {
        const ComplexMatrix sn = build_shift(n);
        EXPECT_EQ(sn * sn.adjoint(), ComplexMatrix::Identity(2 * n, 2 * n));
    }
}

TEST(Walk, identity_coin_is_conditional_shift)
{
    LoopConfig c = loop(3, 1, 0.0);
    c.coin = CoinSpec::rotation(0.0);
    EXPECT_EQ(build_walk(c), build_shift(3));
}

TEST(Walk, one_application_by_hand)
{
    LoopConfig c = loop(4, 2, 0.0);
    ComplexVector up0 = ComplexVector::Zero(8);
    up0[0] = 1.0;
    const ComplexVector out = build_walk(c) * up0;
    ComplexVector expected = ComplexVector::Zero(8);
    expected[3] = 1.0 / std::sqrt(2.0);       // |up,3>
    expected[4 + 1] = -kI / std::sqrt(2.0);   // |down,1>
    EXPECT_LE((out - expected).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Walk, unitary_for_both_coins)
{
    for (std::size_t n : {3, 8, 31, 64, 128}) {
        for (const CoinSpec& coin : {CoinSpec::symmetric(), CoinSpec::rotation(0.37)}) {
            LoopConfig c = loop(n, 1, 0.0);
            c.coin = coin;
            const ComplexMatrix w = build_walk(c);
            EXPECT_LE(max_abs_diff(w * w.adjoint(), ComplexMatrix::Identity(2 * n, 2 * n)), 1e-12);
        }
    }
}

TEST(Sink, examples)
{
    EXPECT_EQ(build_sink(5, 2, 0.0), ComplexMatrix::Identity(10, 10));
    ComplexVector diag(6);
    diag << 1, 0, 1, 1, 0, 1;
    EXPECT_EQ(build_sink(3, 1, 1.0), ComplexMatrix(diag.asDiagonal()));
    const ComplexMatrix partial = build_sink(8, 3, 0.6);
    EXPECT_NEAR(partial(3, 3).real(), 0.6324555320336759, 1e-15);
    EXPECT_NEAR(partial(11, 11).real(), 0.6324555320336759, 1e-15);
    const ComplexMatrix full = build_sink(7, 4, 1.0);
    EXPECT_EQ(full * full, full);
    EXPECT_THROW(build_sink(3, 1, 1.5), Error);
}

TEST(InitialState, examples)
{
    LoopConfig c = loop(5, 1, 1.0);
    c.initial.start_site = 2;
    c.initial.delta_init = 0.0;
    ComplexVector expected = ComplexVector::Zero(10);
    expected[2] = 1.0;
    EXPECT_EQ(initial_state(c).amplitudes(), expected);

    c.initial.delta_init = std::numbers::pi / 2;
    expected[2] = expected[7] = 1.0 / std::sqrt(2.0);
    EXPECT_LE((initial_state(c).amplitudes() - expected).cwiseAbs().maxCoeff(), 1e-15);

    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> angle(-7.0, 7.0);
    for (int i = 0; i < 20; ++i) {
        c.initial.delta_init = angle(rng);
        c.initial.eta = angle(rng);
        EXPECT_NEAR(initial_state(c).norm_squared(), 1.0, 1e-14);
    }
}

TEST(Config, validation)
{
    EXPECT_THROW(loop(2, 1, 1.0).validate(), Error);
    EXPECT_THROW(loop(5, 5, 1.0).validate(), Error);
    EXPECT_THROW(loop(5, 1, -0.1).validate(), Error);
    LoopConfig c = loop(5, 1, 1.0);
    c.initial.start_site = 9;
    EXPECT_THROW(c.validate(), Error);
    EXPECT_NO_THROW(loop(5, 1, 0.5).validate());
}

TEST(StepPure, first_step_absorbs_half)
{
    const PureState psi = step_pure(initial_state(loop(21, 1, 1.0)), loop(21, 1, 1.0));
    EXPECT_NEAR(psi.norm_squared(), 0.5, 1e-12);
}

TEST(StepPure, no_sink_preserves_norm)
{
    const LoopConfig c = loop(9, 3, 0.0);
    const LoopPropagator prop(c);
    PureState psi = initial_state(c);
    for (int t = 0; t < 100; ++t) {
        psi = prop.step(psi);
        ASSERT_NEAR(psi.norm_squared(), 1.0, 1e-12);
    }
}

TEST(StepPure, matches_component_recurrences)
{
    for (std::size_t n : {5, 8, 21}) {
        for (double r : {0.0, 0.5, 1.0}) {
            for (std::size_t k : {std::size_t{1}, n / 2, n - 1}) {
                const LoopConfig c = loop(n, k, r);
                const LoopPropagator prop(c);
                ref::RecurrenceWalk oracle(n, k, r);
                PureState psi = initial_state(c);
                for (int t = 1; t <= 20; ++t) {
                    psi = prop.step(psi);
                    oracle.step();
                    ASSERT_LE(max_abs_diff(oracle.absorbed_state(), psi.amplitudes()), 1e-12)
                        << "n=" << n << " k=" << k << " r=" << r << " t=" << t;
                }
            }
        }
    }
}

TEST(StepPure, rejects_wrong_dimension)
{
    try {
        step_pure(PureState(ComplexVector::Zero(6)), loop(4, 1, 1.0));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
    }
}

TEST(StepDensity, pure_input_tracks_state_vector)
{
    for (std::size_t n : {5, 8, 21}) {
        for (double r : {0.0, 0.5, 1.0}) {
            const LoopConfig c = loop(n, n / 2, r);
            const LoopPropagator prop(c);
            PureState psi = initial_state(c);
            DensityMatrix rho = pure_to_density(psi);
            for (int t = 1; t <= 20; ++t) {
                psi = prop.step(psi);
                rho = prop.step(rho, NoiseSpec::none());
                ASSERT_LE(max_abs_diff(rho.matrix(), pure_to_density(psi).matrix()), 1e-10);
            }
        }
    }
}

TEST(StepDensity, structured_kernel_matches_dense_reference)
{
    std::mt19937_64 rng(29);
    const std::vector<NoiseSpec> noises = {NoiseSpec::none(), NoiseSpec::depolarizing(0.37),
                                           NoiseSpec::dephasing(0.61, 2.1),
                                           NoiseSpec::dephasing(1.0, std::numbers::pi)};
    for (std::size_t n : {3, 6, 11}) {
        for (const NoiseSpec& noise : noises) {
            const ComplexMatrix rho = ref::random_density(2 * n, rng, 0.8);
            const LoopConfig c = loop(n, 2, 0.45);
            const DensityMatrix out = step_density(DensityMatrix(rho), c, noise);
            EXPECT_LE(max_abs_diff(out.matrix(), reference_step(rho, n, 2, 0.45, noise)), 1e-13);
        }
    }
}

TEST(StepDensity, trace_contracts_and_is_kept_without_sink)
{
    std::mt19937_64 rng(31);
    for (double r : {0.0, 0.3, 1.0}) {
        const LoopConfig c = loop(7, 3, r);
        for (int trial = 0; trial < 5; ++trial) {
            const DensityMatrix rho(ref::random_density(14, rng, 0.9));
            const double after = step_density(rho, c, NoiseSpec::depolarizing(0.2)).trace();
            EXPECT_LE(after, rho.trace() + 1e-12);
            if (r == 0.0) {
                EXPECT_NEAR(after, rho.trace(), 1e-12);
            }
        }
    }
}

TEST(StepDensity, rejects_wrong_dimension)
{
    EXPECT_THROW(step_density(DensityMatrix(ComplexMatrix::Identity(6, 6) / 6.0), loop(4, 1, 1.0),
                              NoiseSpec::none()),
                 Error);
}

TEST(Evolve, zero_steps_gives_initial_record)
{
    const auto records = evolve(loop(8, 4, 1.0), NoiseSpec::none(), 0);
    ASSERT_EQ(records.size(), 1u);
    EXPECT_EQ(records[0].t, 0u);
    EXPECT_EQ(records[0].te, 0.0);
}

TEST(Evolve, te_non_decreasing_and_dual_to_trace)
{
    const auto records = evolve(loop(8, 4, 1.0), NoiseSpec::none(), 40);
    ASSERT_EQ(records.size(), 41u);
    for (std::size_t t = 0; t < records.size(); ++t) {
        EXPECT_EQ(records[t].t, t);
        EXPECT_NEAR(records[t].te + records[t].trace, 1.0, 1e-12);
        if (t > 0) {
            EXPECT_GE(records[t].te, records[t - 1].te - 1e-12);
        }
    }
}

TEST(Evolve, matches_recurrence_te)
{
    const auto records = evolve(loop(8, 4, 1.0), NoiseSpec::none(), 10);
    ref::RecurrenceWalk oracle(8, 4, 1.0);
    for (int t = 0; t < 10; ++t) {
        oracle.step();
    }
    EXPECT_NEAR(records.back().te, 1.0 - oracle.survival(), 1e-10);
}

TEST(Evolve, statevector_engine_agrees)
{
    RecordOptions opts;
    opts.observables.distribution = true;
    const LoopConfig c = loop(9, 4, 0.7);
    const auto dense = evolve(c, NoiseSpec::none(), 30, opts);
    const auto sv = evolve_statevector(c, 30, opts);
    ASSERT_EQ(dense.size(), sv.size());
    for (std::size_t t = 0; t < dense.size(); ++t) {
        EXPECT_NEAR(dense[t].te, sv[t].te, 1e-12);
        for (std::size_t j = 0; j < 9; ++j) {
            EXPECT_NEAR((*dense[t].distribution)[j], (*sv[t].distribution)[j], 1e-12);
        }
    }
}

TEST(Evolve, reflection_symmetry_without_sink)
{
    RecordOptions opts;
    opts.observables.distribution = true;
    for (std::size_t n : {5, 8, 9, 12}) {
        const auto records = evolve(loop(n, 2, 0.0), NoiseSpec::none(), 30, opts);
        for (const auto& rec : records) {
            const auto& p = *rec.distribution;
            for (std::size_t j = 0; j < n; ++j) {
                ASSERT_NEAR(p[j], p[(n - j) % n], 1e-12) << "n=" << n << " t=" << rec.t;
            }
        }
    }
}

TEST(Evolve, ring_distribution_at_t25)
{
    RecordOptions opts;
    opts.observables.distribution = true;
    const auto near = evolve(loop(21, 1, 1.0), NoiseSpec::none(), 25, opts);
    const auto& p = *near.back().distribution;
    EXPECT_NEAR(p[1], 0.0, 1e-12);
    double front = 0.0;
    double back = 0.0;
    for (std::size_t j = 2; j <= 11; ++j) front += p[j];
    for (std::size_t j = 12; j <= 20; ++j) back += p[j];
    // Weight piles up just past the sink; the far arc keeps only a trickle.
    EXPECT_GT(front, 0.3);
    EXPECT_LT(back, 0.05);
    EXPECT_NEAR(p[4], 0.1442, 1e-4);

    const auto far = evolve(loop(21, 10, 1.0), NoiseSpec::none(), 25, opts);
    EXPECT_NEAR((*far.back().distribution)[10], 0.0, 1e-12);
}

TEST(Evolve, small_noise_helps_nearest_sink_early)
{
    const LoopConfig c = loop(7, 1, 1.0);
    const auto clean = evolve(c, NoiseSpec::none(), 40);
    const auto light = evolve(c, NoiseSpec::depolarizing(0.02), 40);
    const auto heavy = evolve(c, NoiseSpec::depolarizing(0.1), 40);
    for (std::size_t t = 1; t <= 9; ++t) {
        EXPECT_LE(clean[t].te, light[t].te + 1e-12) << "t=" << t;
        EXPECT_LE(light[t].te, heavy[t].te + 1e-12) << "t=" << t;
    }
}

TEST(Evolve, bad_mid_every)
{
    RecordOptions opts;
    opts.mid_every = 0;
    EXPECT_THROW(evolve(loop(5, 1, 1.0), NoiseSpec::none(), 3, opts), Error);
}

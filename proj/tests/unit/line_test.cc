// Copyright 2026 The cosim Authors
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

#include <gtest/gtest.h>

#include <chrono>
#include <cmath>
#include <numbers>

#include "cosim/constants.h"
#include "cosim/error.h"
#include "cosim/line.h"

namespace cosim {
namespace {

LineSpec resonator() {
    LineSpec line;
    line.id = "res";
    line.length_m = 5.66e-3;
    line.inductance_per_m = 0.7e-6;
    line.capacitance_per_m = 280e-12;
    return line;
}

TEST(Line, CharacteristicValues) {
    const LineSpec line = resonator();
    EXPECT_NEAR(characteristic_impedance(line), 50.0, 1e-12);
    EXPECT_NEAR(phase_velocity(line), 1.0 / std::sqrt(0.7e-6 * 280e-12), 1e-3);
}

TEST(Line, FundamentalAt400Elements) {
    const auto start = std::chrono::steady_clock::now();
    const LineSystem sys = assemble(resonator(), 400);
    const Eigen::VectorXd omega = fem_mode_frequencies(sys, 3);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    EXPECT_NEAR(omega[0] / kTwoPi / 6.31e9, 1.0, 1e-3);
    // Analytic pi v / d.
    EXPECT_NEAR(omega[0] / kTwoPi, 6.309944472e9, 6.31e9 * 1e-4);
    EXPECT_NEAR(omega[1] / omega[0], 2.0, 1e-3);
    EXPECT_LT(wall, 1.0);
}

TEST(Line, LumpedAndConsistentMassBracketTheExactMode) {
    const double exact = 6.309944472e9;
    const double lumped = fem_mode_frequencies(assemble(resonator(), 50, false), 1)[0] / kTwoPi;
    const double consistent = fem_mode_frequencies(assemble(resonator(), 50, true), 1)[0] / kTwoPi;
    EXPECT_LT(lumped, exact);
    EXPECT_GT(consistent, exact);
}

TEST(Line, AnalyticModes) {
    const ModeData m = eigenmodes(resonator(), 4, 5.66e-3);
    for (int k = 0; k < 4; ++k) {
        EXPECT_NEAR(m.omega[k], (k + 1) * kTwoPi * 6.309944472e9, 1e3);
        EXPECT_NEAR(m.amplitude[k], (k % 2 == 0) ? -1.0 : 1.0, 1e-12);
    }
    LineSpec shorted = resonator();
    shorted.right_end = ShortEnd{};
    EXPECT_FALSE(is_open_open(shorted));
    EXPECT_THROW(eigenmodes(shorted, 2, 0.0), DomainError);
}

TEST(Line, LocateAndProjectPointCurrent) {
    const LineSystem sys = assemble(resonator(), 10);
    const NodeWeights w = sys.locate(0.37 * 5.66e-3);
    EXPECT_NEAR(w.weight[0] + w.weight[1], 1.0, 1e-15);
    EXPECT_EQ(w.node[1], w.node[0] + 1);
    Eigen::VectorXd load = Eigen::VectorXd::Zero(sys.node_count());
    add_point_current(sys, load, w, 2.5e-6);
    EXPECT_NEAR(load.sum(), 2.5e-6, 1e-20);
    EXPECT_THROW(sys.locate(-1e-6), DomainError);
    EXPECT_THROW(sys.locate(6e-3), DomainError);
}

TEST(Line, RejectsBadMesh) {
    EXPECT_THROW(assemble(resonator(), 1), DomainError);
    LineSpec bad = resonator();
    bad.length_m = 0;
    EXPECT_THROW(assemble(bad, 10), DomainError);
}

LineState mode_state(const LineSystem &sys, double dt) {
    LineState s = LineState::quiescent(sys, dt);
    for (Eigen::Index i = 0; i < sys.node_count(); ++i) {
        const double x = sys.nodes[i] / sys.spec.length_m;
        s.previous[i] = 1e-15 * (std::cos(std::numbers::pi * x) + 0.3 * std::cos(3 * std::numbers::pi * x));
    }
    s.current = s.previous;
    return s;
}

TEST(Line, EnergyConservedOverManyUndrivenSteps) {
    const LineSystem sys = assemble(resonator(), 400);
    const double dt = 0.5 * sys.cfl_limit();
    LineState s = mode_state(sys, dt);
    const Eigen::VectorXd load = Eigen::VectorXd::Zero(sys.node_count());
    step(sys, s, load, 0.5 * dt);
    const double e0 = discrete_energy(sys, s);
    ASSERT_GT(e0, 0.0);
    double worst = 0;
    for (int m = 1; m < 100000; ++m) {
        step(sys, s, load, (m + 0.5) * dt);
        if (m % 1000 == 0) worst = std::max(worst, std::abs(discrete_energy(sys, s) - e0) / e0);
    }
    worst = std::max(worst, std::abs(discrete_energy(sys, s) - e0) / e0);
    EXPECT_LT(worst, 1e-6);
}

TEST(Line, ConsistentMassConservesEnergyToo) {
    const LineSystem sys = assemble(resonator(), 100, true);
    const double dt = 0.5 * sys.cfl_limit();
    LineState s = mode_state(sys, dt);
    const Eigen::VectorXd load = Eigen::VectorXd::Zero(sys.node_count());
    step(sys, s, load, 0.5 * dt);
    const double e0 = discrete_energy(sys, s);
    for (int m = 1; m < 20000; ++m) step(sys, s, load, (m + 0.5) * dt);
    EXPECT_LT(std::abs(discrete_energy(sys, s) - e0) / e0, 1e-6);
}

TEST(Line, UnstableStepIsDetected) {
    const LineSystem sys = assemble(resonator(), 100);
    const double dt = 1.5 * sys.cfl_limit();
    LineState s = mode_state(sys, dt);
    for (Eigen::Index i = 0; i < sys.node_count(); ++i) s.current[i] += ((i % 2) ? 1e-18 : -1e-18);
    const Eigen::VectorXd load = Eigen::VectorXd::Zero(sys.node_count());
    try {
        for (int m = 0; m < 100000; ++m) step(sys, s, load, (m + 0.5) * dt);
        FAIL() << "instability not detected";
    } catch (const SolverError &e) {
        EXPECT_NE(std::string(e.what()).find("CFL violation suspected"), std::string::npos);
    }
}

TEST(Line, ResistiveEndDissipates) {
    LineSpec line = resonator();
    line.right_end = ResistorEnd{50.0};
    const LineSystem sys = assemble(line, 100);
    const double dt = 0.5 * sys.cfl_limit();
    LineState s = mode_state(sys, dt);
    const Eigen::VectorXd load = Eigen::VectorXd::Zero(sys.node_count());
    step(sys, s, load, 0.5 * dt);
    const double e0 = discrete_energy(sys, s);
    for (int m = 1; m < 20000; ++m) step(sys, s, load, (m + 0.5) * dt);
    EXPECT_LT(discrete_energy(sys, s), 0.01 * e0);
}

TEST(Line, ShortedEndStaysAtZeroFlux) {
    LineSpec line = resonator();
    line.left_end = ShortEnd{};
    const LineSystem sys = assemble(line, 50);
    const double dt = 0.5 * sys.cfl_limit();
    LineState s = LineState::quiescent(sys, dt);
    Eigen::VectorXd load = Eigen::VectorXd::Zero(sys.node_count());
    add_point_current(sys, load, sys.locate(line.length_m), 1e-6);
    for (int m = 0; m < 2000; ++m) step(sys, s, load, (m + 0.5) * dt);
    EXPECT_EQ(s.current[0], 0.0);
    EXPECT_NE(s.current[sys.node_count() - 1], 0.0);
}

TEST(Line, TheveninSourceLaunchesAWave) {
    LineSpec line = resonator();
    FlatTopGaussian p;
    p.amplitude_v = 1e-3;
    p.carrier_hz = 5e9;
    p.duration_s = 1e-9;
    p.rise_fall_s = 0.2e-9;
    p.sigma_s = 0.05e-9;
    line.left_end = TheveninEnd{p, 50.0};
    const LineSystem sys = assemble(line, 100);
    const double dt = 0.5 * sys.cfl_limit();
    LineState s = LineState::quiescent(sys, dt);
    const Eigen::VectorXd load = Eigen::VectorXd::Zero(sys.node_count());
    double peak = 0;
    for (int m = 0; m < 20000; ++m) {
        step(sys, s, load, (m + 0.5) * dt);
        peak = std::max(peak, std::abs(sample_phidot(s, sys.node_count() - 1)));
    }
    // A matched source into an open end: the far-end voltage reaches about
    // the open-circuit amplitude.
    EXPECT_GT(peak, 0.5e-3);
    EXPECT_LT(peak, 2.5e-3);
}

}  // namespace
}  // namespace cosim

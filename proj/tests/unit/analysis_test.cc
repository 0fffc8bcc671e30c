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

#include <cmath>
#include <numbers>

#include "cosim/analysis.h"
#include "cosim/error.h"

namespace cosim {
namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> grid(double t_end, int n) {
    std::vector<double> t(n);
    for (int i = 0; i < n; ++i) t[i] = t_end * i / (n - 1);
    return t;
}

Trajectory rabi_trajectory(double f, double t_end, int n) {
    Trajectory tr;
    tr.dims = {2};
    tr.labels = {"0", "1"};
    tr.t = grid(t_end, n);
    for (double t : tr.t) {
        const double p1 = std::pow(std::sin(kPi * f * t), 2);
        tr.populations.push_back({1 - p1, p1});
    }
    return tr;
}

TEST(Analysis, DominantFrequencyWithinOneBin) {
    const std::vector<double> t = grid(2e-6, 4001);
    for (double f : {0.75e6, 1.23e6, 4.1e6}) {
        std::vector<double> y;
        for (double s : t) y.push_back(0.3 + std::cos(2 * kPi * f * s + 0.4));
        const Spectrum s = dominant_frequency(t, y);
        EXPECT_NEAR(s.bin_hz, 0.5e6, 1e3);
        EXPECT_LT(std::abs(s.peak_hz - f), s.bin_hz) << f;
    }
}

TEST(Analysis, SelfComparisonIsExact) {
    const Trajectory a = rabi_trajectory(1.5e6, 2e-6, 2001);
    const Comparison c = compare(a, a);
    EXPECT_EQ(c.max_pop_diff, 0.0);
    EXPECT_EQ(c.rabi_freq_a, c.rabi_freq_b);
    // Population oscillates at the Rabi frequency itself.
    EXPECT_LT(std::abs(c.rabi_freq_a - 1.5e6), c.bin_hz);
}

TEST(Analysis, ComparisonUsesOverlapOfTimeRanges) {
    const Trajectory a = rabi_trajectory(1e6, 2e-6, 2001);
    const Trajectory b = rabi_trajectory(1e6, 1e-6, 3001);
    const Comparison c = compare(a, b);
    EXPECT_LT(c.max_pop_diff, 1e-5);
    EXPECT_NEAR(c.bin_hz, 1e6, 1e3);
}

TEST(Analysis, DisjointRangesAreRejected) {
    Trajectory a = rabi_trajectory(1e6, 1e-6, 101);
    Trajectory b = a;
    for (double &t : b.t) t += 2e-6;
    EXPECT_THROW(compare(a, b), DomainError);
}

TEST(Analysis, EnvelopeOfSteadyTone) {
    const double f = 5e9;
    const std::vector<double> t = grid(20e-9, 20001);
    std::vector<double> v;
    for (double s : t) v.push_back(2.5e-3 * std::sin(2 * kPi * f * s + 1.0));
    const Envelope e = envelope(t, v, f);
    ASSERT_GT(e.value.size(), 90u);
    for (double x : e.value) EXPECT_NEAR(x, 2.5e-3, 2.5e-3 * 2e-3);
    EXPECT_EQ(envelope_difference(e, e), 0.0);

    Envelope scaled = e;
    for (double &x : scaled.value) x *= 7;
    EXPECT_NEAR(envelope_difference(e, scaled), 0.0, 1e-15);
}

TEST(Analysis, EnvelopeDifferenceSeesShapeChange) {
    const double f = 5e9;
    const std::vector<double> t = grid(20e-9, 20001);
    std::vector<double> flat, ramp;
    for (double s : t) {
        flat.push_back(std::sin(2 * kPi * f * s));
        ramp.push_back((s / 20e-9) * std::sin(2 * kPi * f * s));
    }
    EXPECT_GT(envelope_difference(envelope(t, flat, f), envelope(t, ramp, f)), 0.3);
}

TEST(Analysis, EnvelopeNeedsResolvedCarrier) {
    const std::vector<double> t = grid(20e-9, 201);
    const std::vector<double> v(t.size(), 0.0);
    EXPECT_THROW(envelope(t, v, 5e9), DomainError);
    EXPECT_THROW(envelope(grid(0.1e-9, 201), std::vector<double>(201, 0.0), 5e9), DomainError);
}

TEST(Analysis, LinearResampling) {
    const std::vector<double> y = resample({0, 1, 2}, {0, 10, 30}, {-1, 0.5, 1.5, 3});
    EXPECT_EQ(y, (std::vector<double>{0, 5, 20, 30}));
}

}  // namespace
}  // namespace cosim

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

#include "cosim/pulse.h"

namespace cosim {
namespace {

constexpr double kPi = std::numbers::pi;

FlatTopGaussian flat_top() {
    FlatTopGaussian p;
    p.amplitude_v = 140e-6;
    p.carrier_hz = 5.11e9;
    p.phase_rad = 0.3;
    p.duration_s = 340e-9;
    p.rise_fall_s = 15e-9;
    p.sigma_s = 5e-9;
    p.offset_s = 30e-9;
    return p;
}

TEST(Pulse, FlatTopShape) {
    const FlatTopGaussian p = flat_top();
    EXPECT_EQ(flat_top_envelope(p, 200e-9), 1.0);
    EXPECT_EQ(flat_top_envelope(p, 45e-9), 1.0);
    EXPECT_NEAR(flat_top_envelope(p, 40e-9), std::exp(-0.5), 1e-12);
    EXPECT_EQ(flat_top_envelope(p, 45e-9 - 4.01 * 5e-9), 0.0);
    EXPECT_EQ(flat_top_envelope(p, 0.0), 0.0);
    EXPECT_EQ(flat_top_envelope(p, 1e-6), 0.0);
    for (double x : {1e-9, 7e-9, 19e-9})
        EXPECT_NEAR(flat_top_envelope(p, 45e-9 - x), flat_top_envelope(p, 355e-9 + x), 1e-12);
    EXPECT_NEAR(pulse_end_time(p), 355e-9 + 4 * 5e-9, 1e-15);
}

TEST(Pulse, FlatTopVoltage) {
    const FlatTopGaussian p = flat_top();
    const double t = 123.4e-9;
    EXPECT_NEAR(eval_pulse(p, t), 140e-6 * std::cos(2 * kPi * 5.11e9 * t + 0.3), 1e-15);
    const PulseSpec shifted = with_phase(p, 0.3 + kPi);
    EXPECT_NEAR(eval_pulse(shifted, t), -eval_pulse(p, t), 1e-15);
    EXPECT_EQ(pulse_carrier_hz(p), 5.11e9);
    EXPECT_EQ(pulse_amplitude_v(p), 140e-6);
}

TEST(Pulse, ZeroDurationIsOff) {
    FlatTopGaussian p = flat_top();
    p.duration_s = 0;
    for (double t = 0; t < 100e-9; t += 1e-9) EXPECT_EQ(eval_pulse(p, t), 0.0);
    EXPECT_EQ(pulse_end_time(p), p.offset_s);
}

TEST(Pulse, ModulatedGaussian) {
    ModulatedGaussian g{40e-6, 4.6e9, 35e-9, 7e-9};
    EXPECT_EQ(eval_pulse(g, 35e-9), 0.0);
    EXPECT_NEAR(gaussian_envelope(g, 42e-9), std::exp(-0.5), 1e-12);
    const double t = 37.3e-9;
    EXPECT_NEAR(eval_pulse(g, t),
                40e-6 * std::sin(2 * kPi * 4.6e9 * (t - 35e-9)) * std::exp(-std::pow(t - 35e-9, 2) / (2 * 49e-18)),
                1e-15);
    EXPECT_EQ(std::get<ModulatedGaussian>(with_phase(g, 1.0)), g);
    EXPECT_GT(pulse_end_time(g), 35e-9 + 4 * 7e-9);
}

}  // namespace
}  // namespace cosim

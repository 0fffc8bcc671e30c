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

#include "cosim/pulse.h"

#include <cmath>

#include "cosim/constants.h"

namespace cosim {

namespace {

double gaussian_edge(double t, double centre, double sigma) {
    const double x = (t - centre) / sigma;
    if (std::abs(x) > kFlatTopClampSigmas) return 0.0;
    return std::exp(-0.5 * x * x);
}

}  // namespace

double flat_top_envelope(const FlatTopGaussian &p, double t) {
    if (p.duration_s == 0.0) return 0.0;
    const double rise = p.offset_s + p.rise_fall_s;
    const double fall = p.offset_s + p.duration_s - p.rise_fall_s;
    if (t < rise) return gaussian_edge(t, rise, p.sigma_s);
    if (t <= fall) return 1.0;
    return gaussian_edge(t, fall, p.sigma_s);
}

double gaussian_envelope(const ModulatedGaussian &p, double t) {
    const double x = (t - p.offset_s) / p.sigma_s;
    return std::exp(-0.5 * x * x);
}

double eval_pulse(const PulseSpec &pulse, double t) {
    if (const auto *p = std::get_if<FlatTopGaussian>(&pulse)) {
        const double env = flat_top_envelope(*p, t);
        if (env == 0.0) return 0.0;
        return p->amplitude_v * std::cos(kTwoPi * p->carrier_hz * t + p->phase_rad) * env;
    }
    const auto &g = std::get<ModulatedGaussian>(pulse);
    return g.amplitude_v * std::sin(kTwoPi * g.carrier_hz * (t - g.offset_s)) * gaussian_envelope(g, t);
}

double pulse_envelope(const PulseSpec &pulse, double t) {
    if (const auto *p = std::get_if<FlatTopGaussian>(&pulse)) return flat_top_envelope(*p, t);
    return gaussian_envelope(std::get<ModulatedGaussian>(pulse), t);
}

double pulse_carrier_hz(const PulseSpec &pulse) {
    return std::visit([](const auto &p) { return p.carrier_hz; }, pulse);
}

double pulse_amplitude_v(const PulseSpec &pulse) {
    return std::visit([](const auto &p) { return p.amplitude_v; }, pulse);
}

PulseSpec with_phase(const PulseSpec &pulse, double phase_rad) {
    PulseSpec out = pulse;
    if (auto *p = std::get_if<FlatTopGaussian>(&out)) p->phase_rad = phase_rad;
    return out;
}

double pulse_end_time(const PulseSpec &pulse) {
    if (const auto *p = std::get_if<FlatTopGaussian>(&pulse)) {
        if (p->duration_s == 0.0) return p->offset_s;
        return p->offset_s + p->duration_s - p->rise_fall_s + kFlatTopClampSigmas * p->sigma_s;
    }
    const auto &g = std::get<ModulatedGaussian>(pulse);
    return g.offset_s + 8.0 * g.sigma_s;
}

}  // namespace cosim

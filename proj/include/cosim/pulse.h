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

#ifndef COSIM_PULSE_H
#define COSIM_PULSE_H

#include "cosim/spec.h"

namespace cosim {

/// Number of Gaussian standard deviations beyond which the flat-top edges are
/// clamped to zero. Truncation error is exp(-8) ~ 3.4e-4 of the amplitude.
inline constexpr double kFlatTopClampSigmas = 4.0;

/// Flat-top envelope in [0, 1]: Gaussian rise centred at t0 + rise_fall,
/// plateau, mirrored Gaussian fall centred at t0 + duration - rise_fall.
/// A zero duration switches the pulse off.
double flat_top_envelope(const FlatTopGaussian &pulse, double t);

/// Decaying Gaussian envelope exp(-(t - t0)^2 / (2 sigma^2)).
double gaussian_envelope(const ModulatedGaussian &pulse, double t);

/// Source voltage at time t (V).
///   flat top:   V cos(2 pi f t + phase) f(t)
///   modulated:  V sin(2 pi f (t - t0)) exp(-(t - t0)^2 / (2 sigma^2))
double eval_pulse(const PulseSpec &pulse, double t);

double pulse_envelope(const PulseSpec &pulse, double t);
double pulse_carrier_hz(const PulseSpec &pulse);
double pulse_amplitude_v(const PulseSpec &pulse);

/// Copy of `pulse` with its phase replaced (flat top only; the modulated
/// Gaussian has no phase parameter and is returned unchanged).
PulseSpec with_phase(const PulseSpec &pulse, double phase_rad);

/// Latest time at which the pulse is non-negligible.
double pulse_end_time(const PulseSpec &pulse);

}  // namespace cosim

#endif

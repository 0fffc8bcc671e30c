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

#ifndef COSIM_ANALYSIS_H
#define COSIM_ANALYSIS_H

#include <optional>
#include <vector>

#include "cosim/dynamics.h"

namespace cosim {

struct Envelope {
    std::vector<double> t;
    std::vector<double> value;
};

/// Maximum of |V| over windows of one carrier period, hopping one period.
/// Throws DomainError when a window exceeds the record or the sampling is
/// coarser than 20 points per period.
Envelope envelope(const std::vector<double> &t, const std::vector<double> &signal, double carrier_hz);

/// Relative L2 distance between two envelopes after normalizing each to unit
/// peak, on the common window count.
double envelope_difference(const Envelope &a, const Envelope &b);

struct Spectrum {
    double peak_hz = 0;
    double bin_hz = 0;  // 1 / record length
};

/// Dominant frequency of a uniformly sampled signal (mean removed, Hann
/// window, quadratic interpolation of the log magnitude around the peak).
Spectrum dominant_frequency(const std::vector<double> &t, const std::vector<double> &signal);

/// Linear interpolation of (t, y) onto `grid`. Points outside are clamped.
std::vector<double> resample(const std::vector<double> &t, const std::vector<double> &y,
                             const std::vector<double> &grid);

struct Comparison {
    double max_pop_diff = 0;
    double rabi_freq_a = 0;
    double rabi_freq_b = 0;
    double bin_hz = 0;
    std::optional<double> rel_l2_envelope_diff;
};

/// Compares two trajectories on the overlap of their time ranges. Rabi
/// frequencies are taken from the excited-state population of
/// `rabi_transmon`. Throws DomainError for disjoint ranges.
Comparison compare(const Trajectory &a, const Trajectory &b, std::size_t rabi_transmon = 0,
                   std::optional<double> carrier_hz = std::nullopt);

}  // namespace cosim

#endif

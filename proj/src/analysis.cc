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

#include "cosim/analysis.h"

#include <unsupported/Eigen/FFT>
#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "cosim/error.h"

namespace cosim {

Envelope envelope(const std::vector<double> &t, const std::vector<double> &signal, double carrier_hz) {
    if (t.size() != signal.size()) throw DomainError("envelope: time and signal lengths differ");
    Envelope out;
    if (signal.size() < 2) return out;
    const double ts = (t.back() - t.front()) / static_cast<double>(t.size() - 1);
    const double period = 1.0 / carrier_hz;
    if (ts * 20.0 > period * (1.0 + 1e-9)) throw DomainError("envelope: sample rate below 20x the carrier");
    const auto window = static_cast<std::size_t>(std::lround(period / ts));
    if (window > signal.size()) throw DomainError("envelope: window exceeds the record");
    for (std::size_t start = 0; start + window <= signal.size(); start += window) {
        double peak = 0;
        for (std::size_t i = start; i < start + window; ++i) peak = std::max(peak, std::abs(signal[i]));
        out.t.push_back(0.5 * (t[start] + t[start + window - 1]));
        out.value.push_back(peak);
    }
    return out;
}

double envelope_difference(const Envelope &a, const Envelope &b) {
    const std::size_t n = std::min(a.value.size(), b.value.size());
    if (n == 0) return 0.0;
    const double pa = *std::max_element(a.value.begin(), a.value.begin() + static_cast<long>(n));
    const double pb = *std::max_element(b.value.begin(), b.value.begin() + static_cast<long>(n));
    if (pa == 0.0 && pb == 0.0) return 0.0;
    if (pa == 0.0 || pb == 0.0) return 1.0;
    double num = 0, den = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = a.value[i] / pa, y = b.value[i] / pb;
        num += (x - y) * (x - y);
        den += x * x;
    }
    return std::sqrt(num / den);
}

Spectrum dominant_frequency(const std::vector<double> &t, const std::vector<double> &signal) {
    const std::size_t n = signal.size();
    if (n < 4 || t.size() != n) throw DomainError("spectrum needs at least 4 uniformly spaced samples");
    const double ts = (t.back() - t.front()) / static_cast<double>(n - 1);
    Spectrum out;
    out.bin_hz = 1.0 / (ts * static_cast<double>(n));

    double mean = 0;
    for (double v : signal) mean += v;
    mean /= static_cast<double>(n);
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double w = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n - 1));
        x[i] = (signal[i] - mean) * w;
    }
    Eigen::FFT<double> fft;
    std::vector<std::complex<double>> spec;
    fft.fwd(spec, x);
    const std::size_t half = n / 2;
    std::size_t k = 1;
    for (std::size_t i = 2; i <= half; ++i)
        if (std::abs(spec[i]) > std::abs(spec[k])) k = i;
    double delta = 0;
    if (k >= 1 && k + 1 <= half) {
        const double floor = 1e-300;
        const double a = std::log(std::abs(spec[k - 1]) + floor);
        const double b = std::log(std::abs(spec[k]) + floor);
        const double c = std::log(std::abs(spec[k + 1]) + floor);
        const double denom = a - 2.0 * b + c;
        if (denom < 0) delta = std::clamp(0.5 * (a - c) / denom, -0.5, 0.5);
    }
    out.peak_hz = (static_cast<double>(k) + delta) * out.bin_hz;
    return out;
}

std::vector<double> resample(const std::vector<double> &t, const std::vector<double> &y, const std::vector<double> &grid) {
    std::vector<double> out(grid.size());
    if (t.empty()) return out;
    std::size_t j = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double g = grid[i];
        if (g <= t.front()) {
            out[i] = y.front();
            continue;
        }
        if (g >= t.back()) {
            out[i] = y.back();
            continue;
        }
        while (j + 1 < t.size() && t[j + 1] < g) ++j;
        const double w = (g - t[j]) / (t[j + 1] - t[j]);
        out[i] = (1.0 - w) * y[j] + w * y[j + 1];
    }
    return out;
}

Comparison compare(const Trajectory &a, const Trajectory &b, std::size_t rabi_transmon, std::optional<double> carrier_hz) {
    if (a.t.empty() || b.t.empty()) throw DomainError("compare: empty trajectory");
    if (a.labels != b.labels) throw DomainError("compare: trajectories have different state spaces");
    const double lo = std::max(a.t.front(), b.t.front());
    const double hi = std::min(a.t.back(), b.t.back());
    if (lo > hi) throw DomainError("compare: disjoint time ranges");
    const double tol = 1e-9 * std::max(std::abs(hi), 1e-12);

    std::vector<double> grid;
    std::vector<std::size_t> index;
    for (std::size_t i = 0; i < a.t.size(); ++i) {
        if (a.t[i] < lo - tol || a.t[i] > hi + tol) continue;
        grid.push_back(a.t[i]);
        index.push_back(i);
    }
    Comparison out;
    for (std::size_t s = 0; s < a.labels.size(); ++s) {
        std::vector<double> ya(index.size()), yb_raw(b.t.size());
        for (std::size_t i = 0; i < index.size(); ++i) ya[i] = a.populations[index[i]][s];
        for (std::size_t i = 0; i < b.t.size(); ++i) yb_raw[i] = b.populations[i][s];
        const std::vector<double> yb = resample(b.t, yb_raw, grid);
        for (std::size_t i = 0; i < grid.size(); ++i) out.max_pop_diff = std::max(out.max_pop_diff, std::abs(ya[i] - yb[i]));
    }

    if (grid.size() >= 4 && rabi_transmon < a.dims.size()) {
        const std::vector<double> pa_full = a.level_population(rabi_transmon, 1);
        std::vector<double> pa(index.size());
        for (std::size_t i = 0; i < index.size(); ++i) pa[i] = pa_full[index[i]];
        const std::vector<double> pb = resample(b.t, b.level_population(rabi_transmon, 1), grid);
        const Spectrum sa = dominant_frequency(grid, pa);
        const Spectrum sb = dominant_frequency(grid, pb);
        out.rabi_freq_a = sa.peak_hz;
        out.rabi_freq_b = sb.peak_hz;
        out.bin_hz = sa.bin_hz;
    }
    if (carrier_hz && !a.probe.empty() && !b.probe.empty() && !a.probe[0].empty() && !b.probe[0].empty()) {
        const Envelope ea = envelope(a.t, a.probe[0], *carrier_hz);
        const Envelope eb = envelope(b.t, b.probe[0], *carrier_hz);
        out.rel_l2_envelope_diff = envelope_difference(ea, eb);
    }
    return out;
}

}  // namespace cosim

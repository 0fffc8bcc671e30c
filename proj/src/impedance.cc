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

#include "cosim/impedance.h"

#include <cmath>
#include <limits>

#include "cosim/error.h"

namespace cosim {

namespace {

using cd = std::complex<double>;
const cd kI(0.0, 1.0);

Eigen::Matrix2cd series(cd z) {
    Eigen::Matrix2cd m;
    m << 1.0, z, 0.0, 1.0;
    return m;
}

Eigen::Matrix2cd shunt(cd y) {
    Eigen::Matrix2cd m;
    m << 1.0, 0.0, y, 1.0;
    return m;
}

bool is_open_series(const TwoPortElement &e) {
    const auto *s = std::get_if<SeriesCapacitor>(&e);
    return s && s->capacitance_f == 0.0;
}

}  // namespace

std::complex<double> series_capacitor_impedance(double capacitance_f, double omega) {
    return 1.0 / (kI * omega * capacitance_f);
}

Eigen::Matrix2cd abcd_matrix(const TwoPortElement &element, double omega) {
    if (const auto *c = std::get_if<ShuntCapacitor>(&element)) return shunt(kI * omega * c->capacitance_f);
    if (const auto *c = std::get_if<SeriesCapacitor>(&element))
        return series(series_capacitor_impedance(c->capacitance_f, omega));
    if (const auto *l = std::get_if<UniformLine>(&element)) {
        const double z0 = std::sqrt(l->inductance_per_m / l->capacitance_per_m);
        const double bd = omega * std::sqrt(l->inductance_per_m * l->capacitance_per_m) * l->length_m;
        if (std::abs(std::sin(bd)) < kPoleGuard) throw SolverError("pole proximity: line section is a multiple of a half wavelength");
        Eigen::Matrix2cd m;
        m << std::cos(bd), kI * z0 * std::sin(bd), kI * std::sin(bd) / z0, std::cos(bd);
        return m;
    }
    const auto &s = std::get<ShuntStub>(element);
    const double y0 = std::sqrt(s.capacitance_per_m / s.inductance_per_m);
    const double bl = omega * std::sqrt(s.inductance_per_m * s.capacitance_per_m) * s.length_m;
    if (s.shorted) {
        if (std::abs(std::sin(bl)) < kPoleGuard) throw SolverError("pole proximity: shorted stub shorts the port");
        return shunt(-kI * y0 * std::cos(bl) / std::sin(bl));
    }
    if (std::abs(std::cos(bl)) < kPoleGuard) throw SolverError("pole proximity: open stub shorts the port");
    return shunt(kI * y0 * std::tan(bl));
}

Eigen::Matrix2cd network_impedance(const TwoPortNetwork &network, double omega) {
    if (!(omega > 0)) throw DomainError("impedance needs omega > 0");

    // An open series element splits the cascade; each side is then seen open.
    for (std::size_t cut = 0; cut < network.elements.size(); ++cut) {
        if (!is_open_series(network.elements[cut])) continue;
        Eigen::Matrix2cd left = Eigen::Matrix2cd::Identity(), right = Eigen::Matrix2cd::Identity();
        for (std::size_t i = 0; i < cut; ++i) left *= abcd_matrix(network.elements[i], omega);
        for (std::size_t i = cut + 1; i < network.elements.size(); ++i) {
            if (is_open_series(network.elements[i])) continue;
            right *= abcd_matrix(network.elements[i], omega);
        }
        const double inf = std::numeric_limits<double>::infinity();
        Eigen::Matrix2cd z;
        z(0, 0) = left(1, 0) == 0.0 ? cd(0, -inf) : left(0, 0) / left(1, 0);
        z(1, 1) = right(1, 0) == 0.0 ? cd(0, -inf) : right(1, 1) / right(1, 0);
        z(0, 1) = z(1, 0) = 0.0;
        return z;
    }

    Eigen::Matrix2cd t = Eigen::Matrix2cd::Identity();
    for (const auto &e : network.elements) t *= abcd_matrix(e, omega);
    const cd c = t(1, 0);
    if (c == 0.0 || !std::isfinite(std::abs(c))) throw SolverError("pole proximity: open-circuit impedance diverges");
    Eigen::Matrix2cd z;
    // Every element has unit determinant, so Z12 = Z21 = 1/C.
    z(0, 0) = t(0, 0) / c;
    z(1, 1) = t(1, 1) / c;
    z(0, 1) = z(1, 0) = 1.0 / c;
    return z;
}

}  // namespace cosim

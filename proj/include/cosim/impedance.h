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

#ifndef COSIM_IMPEDANCE_H
#define COSIM_IMPEDANCE_H

#include <Eigen/Dense>
#include <complex>
#include <variant>
#include <vector>

namespace cosim {

// Engineering phasor convention e^{+i omega t}: a capacitor is 1/(i omega C)
// and an open-circuited line looks like -i Z0 cot(beta d).

struct ShuntCapacitor {
    double capacitance_f = 0;
};
struct SeriesCapacitor {
    double capacitance_f = 0;
};
struct UniformLine {
    double length_m = 0;
    double inductance_per_m = 0;
    double capacitance_per_m = 0;
};

/// A line section hanging off the through path, open or shorted at its far end.
struct ShuntStub {
    double length_m = 0;
    double inductance_per_m = 0;
    double capacitance_per_m = 0;
    bool shorted = false;
};

using TwoPortElement = std::variant<ShuntCapacitor, SeriesCapacitor, UniformLine, ShuntStub>;

/// A cascade of two-port elements from port 1 to port 2.
struct TwoPortNetwork {
    std::vector<TwoPortElement> elements;
};

Eigen::Matrix2cd abcd_matrix(const TwoPortElement &element, double omega);
std::complex<double> series_capacitor_impedance(double capacitance_f, double omega);

/// Open-circuit impedance matrix of the cascade at angular frequency omega > 0.
/// A series element with zero capacitance disconnects the ports (Z12 = 0).
/// Throws SolverError("pole proximity ...") within the guard band of a
/// lossless-network pole.
Eigen::Matrix2cd network_impedance(const TwoPortNetwork &network, double omega);

inline constexpr double kPoleGuard = 1e-9;

}  // namespace cosim

#endif

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

#include "cosim/coupling.h"

#include <cmath>
#include <numbers>
#include <utility>

#include "cosim/constants.h"
#include "cosim/error.h"

namespace cosim {

namespace {

double mode_prefactor(double beta, double omega, const LineSpec &line) {
    const double e = PhysicalConstants::e;
    const double hbar = PhysicalConstants::hbar;
    return 2.0 * e * beta * std::sqrt(hbar * omega / (line.length_m * line.capacitance_per_m)) / hbar;
}

Eigen::VectorXd transitions(const TransmonSpectrum &s, const Eigen::VectorXd *levels) {
    const Eigen::VectorXd &q = levels ? *levels : s.eigenfrequencies;
    Eigen::VectorXd out(q.size() - 1);
    for (Eigen::Index j = 0; j + 1 < q.size(); ++j) out[j] = q[j + 1] - q[j];
    return out;
}

Termination end_of(const LineSpec &line, bool right) { return right ? line.right_end : line.left_end; }

void append_stub(TwoPortNetwork &net, const LineSpec &line, double length, const Termination &end) {
    if (length <= 0) {
        if (std::holds_alternative<ShortEnd>(end))
            throw DomainError(line.id + ": a tap on a shorted end has no impedance route");
        if (!std::holds_alternative<OpenEnd>(end))
            throw DomainError(line.id + ": impedance route needs open or shorted line ends");
        return;
    }
    if (!std::holds_alternative<OpenEnd>(end) && !std::holds_alternative<ShortEnd>(end))
        throw DomainError(line.id + ": impedance route needs open or shorted line ends");
    net.elements.push_back(
        ShuntStub{length, line.inductance_per_m, line.capacitance_per_m, std::holds_alternative<ShortEnd>(end)});
}

}  // namespace

Eigen::MatrixXd mode_couplings(const TransmonSpectrum &spectrum, const ModeData &modes, double beta,
                               const LineSpec &line) {
    const int levels = spectrum.level_count();
    const auto count = modes.omega.size();
    Eigen::MatrixXd g(levels - 1, count);
    const Eigen::MatrixXd n = spectrum.real_charge();
    for (Eigen::Index k = 0; k < count; ++k) {
        const double gk = mode_prefactor(beta, modes.omega[k], line) * modes.amplitude[k];
        for (int j = 0; j + 1 < levels; ++j) g(j, k) = gk * n(j, j + 1);
    }
    return g;
}

double single_mode_coupling(const TransmonSpectrum &spectrum, double beta, const LineSpec &line) {
    const ModeData modes = eigenmodes(line, 1, 0.0);
    const double w1 = modes.omega[0];
    return mode_prefactor(beta, w1, line) * std::cos(std::numbers::pi * spectrum.transition(0) / w1);
}

Dispersive dispersive_coefficients(const TransmonSpectrum &spectrum, const Eigen::MatrixXd &g,
                                   const Eigen::VectorXd &omega) {
    Dispersive out;
    const auto levels = spectrum.level_count();
    out.chi = Eigen::MatrixXd::Zero(g.rows(), g.cols());
    out.B = Eigen::MatrixXd::Zero(g.rows(), g.cols());
    for (Eigen::Index j = 0; j < g.rows(); ++j) {
        for (Eigen::Index k = 0; k < g.cols(); ++k) {
            const double detuning = spectrum.transition(static_cast<int>(j)) - omega[k];
            if (detuning == 0.0) throw DomainError("dispersive breakdown: transition resonant with a line mode");
            out.chi(j, k) = g(j, k) * g(j, k) / detuning;
            out.B(j, k) = g(j, k) / detuning;
            out.max_abs_B = std::max(out.max_abs_B, std::abs(out.B(j, k)));
        }
    }
    out.lamb_shifted = spectrum.eigenfrequencies;
    for (Eigen::Index j = 0; j + 1 < levels && j < g.rows(); ++j) out.lamb_shifted[j + 1] += out.chi.row(j).sum();
    return out;
}

ExchangeResult j_modesum(const TransmonSpectrum &s1, const Eigen::MatrixXd &g1, const TransmonSpectrum &s2,
                         const Eigen::MatrixXd &g2, const Eigen::VectorXd &omega, int mode_pairs) {
    if (mode_pairs < 1) throw DomainError("mode pairs must be >= 1");
    const Eigen::Index modes = mode_pairs + 1;
    if (g1.cols() < modes || g2.cols() < modes || omega.size() < modes)
        throw DomainError("mode sum needs mode_pairs + 1 modes");
    const Eigen::VectorXd q1 = transitions(s1, nullptr);
    const Eigen::VectorXd q2 = transitions(s2, nullptr);
    const Eigen::Index n1 = q1.size(), n2 = q2.size();

    // Partial sums S_N for N = modes - 2, modes - 1, modes.
    Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(n1, n2);
    Eigen::MatrixXd s_prev2, s_prev1;
    for (Eigen::Index k = 0; k < modes; ++k) {
        for (Eigen::Index i = 0; i < n1; ++i) {
            for (Eigen::Index j = 0; j < n2; ++j) {
                const double d1 = q1[i] - omega[k];
                const double d2 = q2[j] - omega[k];
                if (d1 == 0.0 || d2 == 0.0) throw DomainError("dispersive breakdown: transition resonant with a line mode");
                sum(i, j) += 0.5 * g1(i, k) * g2(j, k) * (1.0 / d1 + 1.0 / d2);
            }
        }
        if (k == modes - 3) s_prev2 = sum;
        if (k == modes - 2) s_prev1 = sum;
    }
    ExchangeResult out;
    out.route = JRoute::ModeSum;
    out.mode_pairs = mode_pairs;
    out.J = 0.5 * (s_prev1 + sum);
    if (s_prev2.size() > 0) out.convergence = 0.5 * std::abs(sum(0, 0) - s_prev2(0, 0));
    return out;
}

ExchangeResult j_impedance(const TransmonSpectrum &s1, const TransmonSpectrum &s2, const TwoPortNetwork &network,
                           const Eigen::VectorXd *q1_override, const Eigen::VectorXd *q2_override) {
    const double e = PhysicalConstants::e;
    const double hbar = PhysicalConstants::hbar;
    const Eigen::VectorXd q1 = transitions(s1, q1_override);
    const Eigen::VectorXd q2 = transitions(s2, q2_override);
    const Eigen::MatrixXd n1 = s1.real_charge();
    const Eigen::MatrixXd n2 = s2.real_charge();

    // Quantum operators evolve as e^{-i omega t}; their impedance is the
    // complex conjugate of the engineering value.
    std::vector<double> im12(q1.size()), im21(q2.size());
    for (Eigen::Index i = 0; i < q1.size(); ++i) im12[i] = -network_impedance(network, q1[i])(0, 1).imag();
    for (Eigen::Index j = 0; j < q2.size(); ++j) im21[j] = -network_impedance(network, q2[j])(1, 0).imag();

    ExchangeResult out;
    out.route = JRoute::Impedance;
    out.J = Eigen::MatrixXd::Zero(q1.size(), q2.size());
    for (Eigen::Index i = 0; i < q1.size(); ++i)
        for (Eigen::Index j = 0; j < q2.size(); ++j)
            out.J(i, j) = 2.0 * e * e / hbar *
                          (n1(i + 1, i) * n2(j, j + 1) * q1[i] * im12[i] + n2(j + 1, j) * n1(i, i + 1) * q2[j] * im21[j]);
    return out;
}

TwoPortNetwork junction_network(const LineSpec &line, const TransmonSpec &ta, const Tap &tap_a,
                                const TransmonSpec &tb, const Tap &tap_b) {
    double za = tap_a.position_m, zb = tap_b.position_m;
    bool mirrored = false;
    if (za > zb) {
        za = line.length_m - za;
        zb = line.length_m - zb;
        mirrored = true;
    }
    const Termination near_end = end_of(line, mirrored);
    const Termination far_end = end_of(line, !mirrored);

    TwoPortNetwork net;
    net.elements.push_back(ShuntCapacitor{ta.total_capacitance_f - tap_a.coupling_capacitance_f});
    net.elements.push_back(SeriesCapacitor{tap_a.coupling_capacitance_f});
    append_stub(net, line, za, near_end);
    if (zb > za) net.elements.push_back(UniformLine{zb - za, line.inductance_per_m, line.capacitance_per_m});
    append_stub(net, line, line.length_m - zb, far_end);
    net.elements.push_back(SeriesCapacitor{tap_b.coupling_capacitance_f});
    net.elements.push_back(ShuntCapacitor{tb.total_capacitance_f - tap_b.coupling_capacitance_f});
    return net;
}

}  // namespace cosim

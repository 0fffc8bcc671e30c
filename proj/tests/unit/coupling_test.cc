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

#include "cosim/config.h"
#include "cosim/constants.h"
#include "cosim/coupling.h"
#include "cosim/device.h"
#include "cosim/error.h"
#include "cosim/impedance.h"
#include "fixtures.h"

namespace cosim {
namespace {

using nlohmann::json;

TEST(Impedance, OpenLineTransferImpedance) {
    TwoPortNetwork net;
    net.elements.push_back(UniformLine{5.66e-3, 0.7e-6, 280e-12});
    const Eigen::Matrix2cd z = network_impedance(net, kTwoPi * 5e9);
    // -i Z0 / sin(beta d) in the engineering convention.
    EXPECT_NEAR(z(0, 1).imag(), -8.238154363e1, 1e-6);
    EXPECT_NEAR(z(0, 1).real(), 0.0, 1e-9);
    EXPECT_NEAR(std::abs(z(0, 1) - z(1, 0)), 0.0, 1e-9);
}

TEST(Impedance, CapacitorElements) {
    const double w = kTwoPi * 5e9;
    EXPECT_NEAR(series_capacitor_impedance(4e-15, w).imag(), -1.0 / (w * 4e-15), 1e-6);
    const Eigen::Matrix2cd a = abcd_matrix(ShuntCapacitor{1e-15}, w);
    EXPECT_NEAR(a(1, 0).imag(), w * 1e-15, 1e-20);
    EXPECT_NEAR(std::abs(a.determinant() - 1.0), 0.0, 1e-12);
}

TEST(Impedance, OpenSeriesElementDisconnectsPorts) {
    TwoPortNetwork net;
    net.elements.push_back(ShuntCapacitor{60e-15});
    net.elements.push_back(SeriesCapacitor{0.0});
    net.elements.push_back(ShuntCapacitor{60e-15});
    const Eigen::Matrix2cd z = network_impedance(net, kTwoPi * 5e9);
    EXPECT_EQ(z(0, 1), std::complex<double>(0.0, 0.0));
    EXPECT_NEAR(z(0, 0).imag(), -1.0 / (kTwoPi * 5e9 * 60e-15), 1e-6);
}

TEST(Impedance, PoleProximityIsReported) {
    TwoPortNetwork net;
    net.elements.push_back(UniformLine{5.66e-3, 0.7e-6, 280e-12});
    const double f1 = 1.0 / (2 * 5.66e-3 * std::sqrt(0.7e-6 * 280e-12));
    EXPECT_THROW(network_impedance(net, kTwoPi * f1), SolverError);
}

TEST(Impedance, JunctionNetworkOfReferenceDevice) {
    const Config cfg = load_config(testing::two_qubit_config());
    const auto &line = cfg.circuit.lines[0];
    const TwoPortNetwork net = junction_network(line, cfg.circuit.transmons[0], line.taps[0],
                                                cfg.circuit.transmons[1], line.taps[1]);
    const Eigen::Matrix2cd z = network_impedance(net, kTwoPi * 4.91e9);
    EXPECT_NEAR(z(0, 1).imag(), -2.757502153e-1, 1e-8);
}

struct ReferenceDevice {
    DeviceModel device;
    TransmonSpectrum s1, s2;
};

ReferenceDevice reference_device(double coupling_ff = 4) {
    json doc = testing::two_qubit_config();
    doc["lines"][0]["taps"][0]["coupling_ff"] = coupling_ff;
    doc["lines"][0]["taps"][1]["coupling_ff"] = coupling_ff;
    const Config cfg = load_config(doc);
    ReferenceDevice p{build_device(cfg.circuit, cfg.sim), {}, {}};
    p.s1 = p.device.spectra[0];
    p.s2 = p.device.spectra[1];
    return p;
}

double j00_impedance(const ReferenceDevice &p) {
    const auto &c = p.device.circuit;
    const auto &line = c.lines[0];
    return j_impedance(p.s1, p.s2, junction_network(line, c.transmons[0], line.taps[0], c.transmons[1], line.taps[1]))
        .J(0, 0);
}

TEST(Exchange, ImpedanceRouteOnReferenceDevice) {
    const ReferenceDevice p = reference_device();
    const double j = j00_impedance(p);
    EXPECT_NEAR(j / kTwoPi, 1.580213158e6, 1.58e6 * 1e-4);
    EXPECT_NEAR(j / kTwoPi / 1.63e6, 1.0, 0.05);
    // build_device uses the same route by default.
    EXPECT_NEAR(exchange_between(p.device.couplings, 0, 1)(0, 0), j, 1e-9 * std::abs(j));
}

TEST(Exchange, ModeSumOnReferenceDevice) {
    const ReferenceDevice p = reference_device();
    const auto &line = p.device.circuit.lines[0];
    const ModeData m1 = eigenmodes(line, 201, 0.0);
    const ModeData m2 = eigenmodes(line, 201, line.length_m);
    const double b1 = 4.0 / 67.95, b2 = 4.0 / 67.45;
    const ExchangeResult r = j_modesum(p.s1, mode_couplings(p.s1, m1, b1, line), p.s2,
                                       mode_couplings(p.s2, m2, b2, line), m1.omega, 200);
    EXPECT_NEAR(r.J(0, 0) / kTwoPi, 1.471421243e6, 1.47e6 * 1e-4);
    EXPECT_EQ(r.mode_pairs, 200);
    EXPECT_LT(r.convergence / kTwoPi, 100.0);
}

TEST(Exchange, PairAveragedModeSumIsCauchy) {
    const ReferenceDevice p = reference_device();
    const auto &line = p.device.circuit.lines[0];
    const ModeData m1 = eigenmodes(line, 1281, 0.0);
    const ModeData m2 = eigenmodes(line, 1281, line.length_m);
    const Eigen::MatrixXd g1 = mode_couplings(p.s1, m1, 4.0 / 67.95, line);
    const Eigen::MatrixXd g2 = mode_couplings(p.s2, m2, 4.0 / 67.45, line);
    double previous = INFINITY;
    for (int n = 10; n <= 640; n *= 2) {
        const double a = j_modesum(p.s1, g1, p.s2, g2, m1.omega, n).J(0, 0);
        const double b = j_modesum(p.s1, g1, p.s2, g2, m1.omega, 2 * n).J(0, 0);
        const double d = std::abs(b - a);
        EXPECT_LT(d, previous) << "N = " << n;
        previous = d;
    }
}

TEST(Exchange, ScalesAsSquareOfCouplingCapacitance) {
    const double base = j00_impedance(reference_device(4));
    for (double lambda : {0.5, 1.5}) {
        const double scaled = j00_impedance(reference_device(4 * lambda));
        EXPECT_NEAR(scaled / base / (lambda * lambda), 1.0, 0.01) << "lambda = " << lambda;
    }
}

TEST(Coupling, SingleQubitModeCoupling) {
    const Config cfg = load_config(testing::single_qubit_config());
    const DeviceModel d = build_device(cfg.circuit, cfg.sim);
    const auto &line = d.circuit.lines[0];
    const double beta = 6.0 / 67.95;
    const Eigen::MatrixXd g = mode_couplings(d.spectra[0], eigenmodes(line, 3, line.length_m), beta, line);
    ASSERT_EQ(g.rows(), 2);
    ASSERT_EQ(g.cols(), 3);
    EXPECT_NEAR(g(0, 0) / kTwoPi, -6.962936762e7, 10.0);
    // g_{j,k} = g_k n_{j,j+1}
    EXPECT_NEAR(g(1, 0) / g(0, 0), d.spectra[0].real_charge()(1, 2) / d.spectra[0].real_charge()(0, 1), 1e-12);
    EXPECT_NEAR(single_mode_coupling(d.spectra[0], beta, line) / kTwoPi, -4.570523876e7, 10.0);
}

TEST(Coupling, DispersiveCoefficients) {
    const Config cfg = load_config(testing::single_qubit_config());
    const DeviceModel d = build_device(cfg.circuit, cfg.sim);
    const auto &line = d.circuit.lines[0];
    const ModeData modes = eigenmodes(line, 2, line.length_m);
    const Eigen::MatrixXd g = mode_couplings(d.spectra[0], modes, 6.0 / 67.95, line);
    const Dispersive disp = dispersive_coefficients(d.spectra[0], g, modes.omega);
    const double delta = d.spectra[0].transition(0) - modes.omega[0];
    EXPECT_NEAR(disp.chi(0, 0), g(0, 0) * g(0, 0) / delta, 1e-6);
    EXPECT_NEAR(disp.B(0, 0), g(0, 0) / delta, 1e-15);
    EXPECT_NEAR(disp.lamb_shifted[1], d.spectra[0].eigenfrequencies[1] + disp.chi.row(0).sum(), 1e-3);
    EXPECT_LT(disp.lamb_shifted[1], d.spectra[0].eigenfrequencies[1]);

    Eigen::VectorXd resonant = modes.omega;
    resonant[0] = d.spectra[0].transition(0);
    EXPECT_THROW(dispersive_coefficients(d.spectra[0], g, resonant), DomainError);
}

TEST(Device, LambShiftedTargetsAreHit) {
    json doc = testing::two_qubit_config();
    doc["transmons"][0]["target"]["lamb_shifted"] = true;
    doc["transmons"][1]["target"]["lamb_shifted"] = true;
    for (double q1 : {4.86, 4.835, 4.81}) {
        doc["transmons"][0]["target"]["q01_ghz"] = q1;
        doc["simulation"]["lamb_modes"] = 1;
        const Config cfg = load_config(doc);
        const DeviceModel d = build_device(cfg.circuit, cfg.sim);
        const Eigen::VectorXd qbar1 = simulation_frequencies(d, 0);
        const Eigen::VectorXd qbar2 = simulation_frequencies(d, 1);
        EXPECT_NEAR((qbar1[1] - qbar1[0]) / kTwoPi, q1 * 1e9, 1e6);
        EXPECT_NEAR((qbar2[1] - qbar2[0]) / kTwoPi, 5.11e9, 1e6);
        EXPECT_GT(d.spectra[0].transition(0), qbar1[1] - qbar1[0]);
    }
}

TEST(Device, PulseAreaSetsSigma) {
    const Config cfg = load_config(testing::single_qubit_config());
    const DeviceModel d = build_device(cfg.circuit, cfg.sim);
    const auto &g = std::get<ModulatedGaussian>(d.circuit.direct_drives[0].pulse);
    const double n01 = d.spectra[0].real_charge()(0, 1);
    const double rate = 2 * PhysicalConstants::e * (0.1 / 67.95) * 40e-6 * n01 / PhysicalConstants::hbar;
    EXPECT_NEAR(g.sigma_s, (std::numbers::pi / 2) / (rate * std::sqrt(kTwoPi)), 1e-18);
    EXPECT_NEAR(g.offset_s, 5 * g.sigma_s, 1e-21);
    EXPECT_NEAR(d.sim.t_end_s, 10 * g.sigma_s, 1e-21);
    EXPECT_NEAR(g.carrier_hz, 4.6e9, 1.0);
}

}  // namespace
}  // namespace cosim

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

#include "cosim/device.h"

#include <cmath>
#include <numbers>
#include <sstream>

#include "cosim/constants.h"
#include "cosim/error.h"
#include "cosim/line.h"

namespace cosim {

namespace {

double drive_beta(const CircuitSpec &circuit, const DirectDrive &d) {
    if (d.beta_override) return *d.beta_override;
    return beta_factor(circuit.transmons[d.transmon], d.coupling_capacitance_f);
}

struct TapRef {
    std::size_t line;
    std::size_t tap;
};

std::vector<TapRef> taps_of(const CircuitSpec &circuit, std::size_t transmon) {
    std::vector<TapRef> out;
    for (std::size_t l = 0; l < circuit.lines.size(); ++l)
        for (std::size_t t = 0; t < circuit.lines[l].taps.size(); ++t)
            if (circuit.lines[l].taps[t].transmon == transmon) out.push_back({l, t});
    return out;
}

Eigen::VectorXd lamb_shift_of(const CircuitSpec &circuit, std::size_t transmon, const TransmonSpectrum &spectrum,
                              int lamb_modes, std::vector<TapCoupling> *out_taps) {
    Eigen::VectorXd q = spectrum.eigenfrequencies;
    for (const TapRef &ref : taps_of(circuit, transmon)) {
        const LineSpec &line = circuit.lines[ref.line];
        const Tap &tap = line.taps[ref.tap];
        TapCoupling tc;
        tc.line = ref.line;
        tc.tap = ref.tap;
        tc.transmon = transmon;
        tc.beta = beta_factor(circuit.transmons[transmon], tap.coupling_capacitance_f);
        if (is_open_open(line) && lamb_modes > 0) {
            const ModeData modes = eigenmodes(line, lamb_modes, tap.position_m);
            tc.g = mode_couplings(spectrum, modes, tc.beta, line);
            tc.dispersive = dispersive_coefficients(spectrum, tc.g, modes.omega);
            q += tc.dispersive.lamb_shifted - spectrum.eigenfrequencies;
        }
        if (out_taps) out_taps->push_back(std::move(tc));
    }
    return q;
}

}  // namespace

double lamb_shifted_q01(const CircuitSpec &circuit, std::size_t transmon, const TransmonSpectrum &spectrum,
                        int lamb_modes) {
    const Eigen::VectorXd q = lamb_shift_of(circuit, transmon, spectrum, lamb_modes, nullptr);
    return q[1] - q[0];
}

CouplingTables compute_couplings(const CircuitSpec &circuit, const std::vector<TransmonSpectrum> &spectra,
                                 const SimConfig &sim, std::vector<std::string> *warnings) {
    CouplingTables tables;
    for (std::size_t l = 0; l < circuit.transmons.size(); ++l) {
        const std::size_t first = tables.taps.size();
        tables.lamb_shifted.push_back(lamb_shift_of(circuit, l, spectra[l], sim.lamb_modes, &tables.taps));
        for (std::size_t i = first; i < tables.taps.size() && warnings; ++i) {
            const TapCoupling &tc = tables.taps[i];
            if (tc.dispersive.max_abs_B >= 0.3) {
                std::ostringstream msg;
                msg << circuit.transmons[l].id << ": |B| = " << tc.dispersive.max_abs_B
                    << " outside the dispersive regime";
                warnings->push_back(msg.str());
            }
            if (!is_open_open(circuit.lines[tc.line]) && sim.lamb_modes > 0)
                warnings->push_back(circuit.transmons[l].id + ": no Lamb shift from line " +
                                    circuit.lines[tc.line].id + " (not open at both ends)");
        }
    }

    for (std::size_t li = 0; li < circuit.lines.size(); ++li) {
        const LineSpec &line = circuit.lines[li];
        for (std::size_t ta = 0; ta < line.taps.size(); ++ta) {
            for (std::size_t tb = ta + 1; tb < line.taps.size(); ++tb) {
                std::size_t a = line.taps[ta].transmon, b = line.taps[tb].transmon;
                const Tap *tap_a = &line.taps[ta], *tap_b = &line.taps[tb];
                if (a == b) continue;
                if (a > b) {
                    std::swap(a, b);
                    std::swap(tap_a, tap_b);
                }
                const TransmonSpec &sa = circuit.transmons[a], &sb = circuit.transmons[b];
                ExchangeBlock block;
                block.a = a;
                block.b = b;
                block.line = li;
                if (sim.j_route == JRoute::ModeSum) {
                    const int modes = sim.mode_pairs + 1;
                    const ModeData ma = eigenmodes(line, modes, tap_a->position_m);
                    const ModeData mb = eigenmodes(line, modes, tap_b->position_m);
                    block.result = j_modesum(spectra[a], mode_couplings(spectra[a], ma, beta_factor(sa, tap_a->coupling_capacitance_f), line),
                                             spectra[b], mode_couplings(spectra[b], mb, beta_factor(sb, tap_b->coupling_capacitance_f), line),
                                             ma.omega, sim.mode_pairs);
                } else {
                    const TwoPortNetwork net = junction_network(line, sa, *tap_a, sb, *tap_b);
                    if (sim.j_use_lamb_shifted)
                        block.result = j_impedance(spectra[a], spectra[b], net, &tables.lamb_shifted[a], &tables.lamb_shifted[b]);
                    else
                        block.result = j_impedance(spectra[a], spectra[b], net);
                }
                tables.exchange.push_back(std::move(block));
            }
        }
    }
    return tables;
}

Eigen::MatrixXd exchange_between(const CouplingTables &tables, std::size_t a, std::size_t b) {
    Eigen::MatrixXd total;
    for (const auto &block : tables.exchange) {
        if (block.a != a || block.b != b) continue;
        if (total.size() == 0) total = Eigen::MatrixXd::Zero(block.result.J.rows(), block.result.J.cols());
        total += block.result.J;
    }
    return total;
}

Eigen::VectorXd simulation_frequencies(const DeviceModel &device, std::size_t transmon) {
    return device.couplings.lamb_shifted[transmon];
}

DeviceModel build_device(const CircuitSpec &circuit_in, const SimConfig &sim) {
    validate(circuit_in);
    validate(sim);
    DeviceModel device;
    device.circuit = circuit_in;
    device.sim = sim;
    CircuitSpec &circuit = device.circuit;

    for (std::size_t l = 0; l < circuit.transmons.size(); ++l) {
        TransmonSpec &t = circuit.transmons[l];
        if (t.target) {
            const double target = kTwoPi * t.target->q01_hz;
            if (t.target->lamb_shifted && sim.lamb_modes > 0) {
                t.josephson_energy_hz = tune_josephson_energy(
                    t, [&](const TransmonSpectrum &s) { return lamb_shifted_q01(circuit, l, s, sim.lamb_modes); },
                    target);
            } else {
                t.josephson_energy_hz =
                    tune_josephson_energy(t, [](const TransmonSpectrum &s) { return s.transition(0); }, target);
            }
        }
        device.spectra.push_back(diagonalize(t));
    }
    device.couplings = compute_couplings(circuit, device.spectra, sim, &device.warnings);

    double widest_sigma = 0;
    for (DirectDrive &d : circuit.direct_drives) {
        if (d.carrier_transmon) {
            const Eigen::VectorXd q = simulation_frequencies(device, *d.carrier_transmon);
            const double f = (q[1] - q[0]) / kTwoPi;
            std::visit([f](auto &p) { p.carrier_hz = f; }, d.pulse);
        }
        if (auto *g = std::get_if<ModulatedGaussian>(&d.pulse)) {
            if (d.pulse_area_rad) {
                // Resonant area theta = (2 e beta V n01 / hbar) sigma sqrt(2 pi).
                const double n01 = device.spectra[d.transmon].real_charge()(0, 1);
                const double rate =
                    2.0 * PhysicalConstants::e * drive_beta(circuit, d) * g->amplitude_v * n01 / PhysicalConstants::hbar;
                if (!(rate > 0)) throw DomainError(d.id + ": pulse area needs a non-zero drive");
                g->sigma_s = *d.pulse_area_rad / (rate * std::sqrt(kTwoPi));
            }
            if (d.offset_sigmas) g->offset_s = *d.offset_sigmas * g->sigma_s;
            widest_sigma = std::max(widest_sigma, g->sigma_s);
        } else if (auto *f = std::get_if<FlatTopGaussian>(&d.pulse)) {
            if (d.offset_sigmas) f->offset_s = *d.offset_sigmas * f->sigma_s;
            widest_sigma = std::max(widest_sigma, f->sigma_s);
        }
    }
    if (sim.t_end_sigmas) {
        if (widest_sigma <= 0) throw DomainError("t_end in sigmas needs a drive");
        device.sim.t_end_s = *sim.t_end_sigmas * widest_sigma;
    }
    return device;
}

}  // namespace cosim

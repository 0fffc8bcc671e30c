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

#include "cosim/hamiltonian.h"

#include "cosim/constants.h"
#include "cosim/error.h"

namespace cosim {

Eigen::MatrixXd embed(const std::vector<int> &dims, std::size_t which, const Eigen::MatrixXd &op) {
    Eigen::MatrixXd out = Eigen::MatrixXd::Identity(1, 1);
    for (std::size_t l = 0; l < dims.size(); ++l) {
        const Eigen::MatrixXd factor = l == which ? op : Eigen::MatrixXd::Identity(dims[l], dims[l]);
        Eigen::MatrixXd next(out.rows() * factor.rows(), out.cols() * factor.cols());
        for (Eigen::Index i = 0; i < out.rows(); ++i)
            for (Eigen::Index j = 0; j < out.cols(); ++j)
                next.block(i * factor.rows(), j * factor.cols(), factor.rows(), factor.cols()) = out(i, j) * factor;
        out = std::move(next);
    }
    return out;
}

std::vector<std::string> basis_labels(const std::vector<int> &dims) {
    std::vector<std::string> labels{""};
    for (int d : dims) {
        std::vector<std::string> next;
        for (const auto &prefix : labels)
            for (int j = 0; j < d; ++j) next.push_back(prefix + std::to_string(j));
        labels = std::move(next);
    }
    return labels;
}

EffectiveHamiltonian build_hamiltonian(const DeviceModel &device, bool with_line_taps) {
    const CircuitSpec &circuit = device.circuit;
    EffectiveHamiltonian h;
    for (const auto &s : device.spectra) h.dims.push_back(s.level_count());
    int dim = 1;
    for (int d : h.dims) dim *= d;
    h.static_part = Eigen::MatrixXd::Zero(dim, dim);

    for (std::size_t l = 0; l < h.dims.size(); ++l) {
        const Eigen::VectorXd q = simulation_frequencies(device, l);
        h.static_part += embed(h.dims, l, q.asDiagonal().toDenseMatrix());
        h.charge_ops.push_back(embed(h.dims, l, device.spectra[l].real_charge()));
    }

    for (std::size_t a = 0; a < h.dims.size(); ++a) {
        for (std::size_t b = a + 1; b < h.dims.size(); ++b) {
            const Eigen::MatrixXd J = exchange_between(device.couplings, a, b);
            for (Eigen::Index i = 0; i < J.rows(); ++i) {
                for (Eigen::Index j = 0; j < J.cols(); ++j) {
                    // J_ij (|i><i+1| x |j+1><j| + h.c.)
                    Eigen::MatrixXd lower_a = Eigen::MatrixXd::Zero(h.dims[a], h.dims[a]);
                    Eigen::MatrixXd raise_b = Eigen::MatrixXd::Zero(h.dims[b], h.dims[b]);
                    lower_a(i, i + 1) = 1.0;
                    raise_b(j + 1, j) = 1.0;
                    const Eigen::MatrixXd term = embed(h.dims, a, lower_a) * embed(h.dims, b, raise_b);
                    h.static_part += J(i, j) * (term + term.transpose());
                }
            }
        }
    }

    const double two_e_over_hbar = 2.0 * PhysicalConstants::e / PhysicalConstants::hbar;
    std::vector<double> drive_gain;
    for (const DirectDrive &d : circuit.direct_drives) {
        const double beta =
            d.beta_override ? *d.beta_override : beta_factor(circuit.transmons[d.transmon], d.coupling_capacitance_f);
        DriveChannel ch;
        ch.source = ChannelSource::Pulse;
        ch.transmon = d.transmon;
        ch.gain = two_e_over_hbar * beta;
        ch.pulse = d.pulse;
        drive_gain.push_back(ch.gain);
        h.channels.push_back(ch);
    }
    for (const CrosstalkDrive &x : circuit.crosstalk_drives) {
        const DirectDrive &src = circuit.direct_drives[x.source_drive];
        DriveChannel ch;
        ch.source = ChannelSource::Crosstalk;
        ch.transmon = x.transmon;
        ch.gain = x.spec.amplitude_scale * drive_gain[x.source_drive];
        ch.pulse = with_phase(src.pulse, x.spec.phase_rad);
        h.channels.push_back(ch);
    }
    if (with_line_taps) {
        for (std::size_t li = 0; li < circuit.lines.size(); ++li) {
            for (std::size_t t = 0; t < circuit.lines[li].taps.size(); ++t) {
                const Tap &tap = circuit.lines[li].taps[t];
                if (!tap.drive_to_qubit_enabled) continue;
                DriveChannel ch;
                ch.source = ChannelSource::LineTap;
                ch.transmon = tap.transmon;
                ch.gain = two_e_over_hbar * beta_factor(circuit.transmons[tap.transmon], tap.coupling_capacitance_f);
                ch.line = li;
                ch.tap = t;
                h.channels.push_back(ch);
            }
        }
    }
    return h;
}

Eigen::MatrixXd pulse_drive(const EffectiveHamiltonian &h, double t) {
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(h.dimension(), h.dimension());
    for (const auto &ch : h.channels) {
        if (ch.source == ChannelSource::LineTap) continue;
        const double v = eval_pulse(ch.pulse, t);
        if (v != 0.0) out += ch.gain * v * h.charge_ops[ch.transmon];
    }
    return out;
}

}  // namespace cosim

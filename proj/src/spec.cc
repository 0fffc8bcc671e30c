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

#include "cosim/spec.h"

#include <cmath>
#include <string>

#include "cosim/error.h"

namespace cosim {

namespace {

void require(bool ok, const std::string &message) {
    if (!ok) throw DomainError(message);
}

void validate_pulse(const PulseSpec &pulse, const std::string &where) {
    if (const auto *p = std::get_if<FlatTopGaussian>(&pulse)) {
        require(p->amplitude_v >= 0, where + ": pulse amplitude must be >= 0");
        require(p->sigma_s > 0, where + ": pulse sigma must be > 0");
        require(p->duration_s == 0 || p->duration_s >= 2 * p->rise_fall_s,
                where + ": flat-top duration must be zero or at least twice the rise/fall time");
        require(p->rise_fall_s >= 0, where + ": rise/fall time must be >= 0");
    } else {
        const auto &g = std::get<ModulatedGaussian>(pulse);
        require(g.amplitude_v >= 0, where + ": pulse amplitude must be >= 0");
        require(g.sigma_s > 0, where + ": pulse sigma must be > 0");
    }
}

}  // namespace

const char *to_string(Backend backend) {
    switch (backend) {
        case Backend::MaxwellSchrodinger: return "ms";
        case Backend::MaxwellSchrodingerNoBackaction: return "ms_no_backaction";
        case Backend::ClosedSystem: return "closed";
        case Backend::BornOpenSystem: return "born";
    }
    return "?";
}

const char *to_string(Integrator integrator) {
    return integrator == Integrator::Leapfrog ? "leapfrog" : "exponential_midpoint";
}

const char *to_string(JRoute route) { return route == JRoute::ModeSum ? "mode_sum" : "impedance"; }

Backend parse_backend(const std::string &text) {
    if (text == "ms" || text == "ms_backaction") return Backend::MaxwellSchrodinger;
    if (text == "ms_no_backaction" || text == "ms_noba") return Backend::MaxwellSchrodingerNoBackaction;
    if (text == "closed") return Backend::ClosedSystem;
    if (text == "born") return Backend::BornOpenSystem;
    throw DomainError("unknown backend '" + text + "'");
}

Integrator parse_integrator(const std::string &text) {
    if (text == "exponential_midpoint" || text == "exponential") return Integrator::ExponentialMidpoint;
    if (text == "leapfrog") return Integrator::Leapfrog;
    throw DomainError("unknown integrator '" + text + "'");
}

JRoute parse_j_route(const std::string &text) {
    if (text == "impedance") return JRoute::Impedance;
    if (text == "mode_sum") return JRoute::ModeSum;
    throw DomainError("unknown J route '" + text + "'");
}

double beta_factor(const TransmonSpec &transmon, double tap_capacitance_f) {
    if (!(tap_capacitance_f >= 0)) throw DomainError("coupling capacitance must be >= 0");
    if (!(tap_capacitance_f < transmon.total_capacitance_f))
        throw DomainError("coupling capacitance must be below the total capacitance of " + transmon.id);
    return tap_capacitance_f / transmon.total_capacitance_f;
}

void validate(const CircuitSpec &circuit) {
    const std::size_t nt = circuit.transmons.size();
    std::vector<double> coupled(nt, 0.0);
    for (const auto &t : circuit.transmons) {
        require(t.total_capacitance_f > 0, t.id + ": total capacitance must be > 0");
        require(t.target || t.josephson_energy_hz > 0, t.id + ": Josephson energy must be > 0");
        require(t.level_count >= 2, t.id + ": level count must be >= 2");
        require(t.charge_cutoff >= 1, t.id + ": charge cutoff must be >= 1");
        require(t.level_count <= 2 * t.charge_cutoff + 1, t.id + ": level count exceeds 2 * charge_cutoff + 1");
        if (t.target) require(t.target->q01_hz > 0, t.id + ": target frequency must be > 0");
    }
    for (const auto &line : circuit.lines) {
        require(line.length_m > 0, line.id + ": line length must be > 0");
        require(line.inductance_per_m > 0 && line.capacitance_per_m > 0,
                line.id + ": per-unit-length L and C must be > 0");
        for (const Termination *end : {&line.left_end, &line.right_end}) {
            if (const auto *r = std::get_if<ResistorEnd>(end))
                require(r->resistance_ohm > 0, line.id + ": termination resistance must be > 0");
            if (const auto *s = std::get_if<TheveninEnd>(end)) {
                require(s->series_resistance_ohm > 0, line.id + ": source resistance must be > 0");
                validate_pulse(s->pulse, line.id);
            }
        }
        for (const auto &tap : line.taps) {
            require(tap.position_m >= 0 && tap.position_m <= line.length_m, line.id + ": tap position outside line");
            require(tap.transmon < nt, line.id + ": tap refers to an unknown transmon");
            require(tap.coupling_capacitance_f >= 0, line.id + ": coupling capacitance must be >= 0");
            coupled[tap.transmon] += tap.coupling_capacitance_f;
        }
    }
    for (const auto &d : circuit.direct_drives) {
        require(d.transmon < nt, d.id + ": drive refers to an unknown transmon");
        require(d.coupling_capacitance_f >= 0, d.id + ": coupling capacitance must be >= 0");
        if (d.carrier_transmon) require(*d.carrier_transmon < nt, d.id + ": carrier refers to an unknown transmon");
        if (d.pulse_area_rad) {
            require(*d.pulse_area_rad > 0, d.id + ": pulse area must be > 0");
            require(std::holds_alternative<ModulatedGaussian>(d.pulse),
                    d.id + ": pulse area applies to modulated Gaussian pulses only");
        }
        if (d.beta_override) require(*d.beta_override >= 0 && *d.beta_override < 1, d.id + ": beta must be in [0, 1)");
        validate_pulse(d.pulse, d.id);
        coupled[d.transmon] += d.coupling_capacitance_f;
    }
    for (const auto &x : circuit.crosstalk_drives) {
        require(x.transmon < nt, "crosstalk drive refers to an unknown transmon");
        require(x.source_drive < circuit.direct_drives.size(), "crosstalk drive refers to an unknown source drive");
        require(x.spec.amplitude_scale >= 0, "crosstalk amplitude scale must be >= 0");
    }
    for (std::size_t i = 0; i < nt; ++i)
        require(coupled[i] < circuit.transmons[i].total_capacitance_f,
                circuit.transmons[i].id + ": coupling capacitances must sum below the total capacitance");
}

void validate(const SimConfig &sim) {
    require(sim.t_end_s >= 0 && std::isfinite(sim.t_end_s), "simulation end time must be >= 0");
    if (sim.dt_s) require(*sim.dt_s > 0, "time step must be > 0");
    require(sim.cfl_safety > 0 && sim.cfl_safety <= 1, "CFL safety factor must be in (0, 1]");
    require(sim.mesh_elements >= 2, "mesh must have at least 2 elements");
    require(sim.fock_truncation >= 2, "Fock truncation must be >= 2");
    require(sim.sample_stride >= 1, "sample stride must be >= 1");
    require(sim.mode_pairs >= 1, "mode pairs must be >= 1");
    require(sim.lamb_modes >= 0, "Lamb-shift mode count must be >= 0");
}

}  // namespace cosim

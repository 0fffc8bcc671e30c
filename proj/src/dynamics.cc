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

#include "cosim/dynamics.h"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <complex>
#include <sstream>

#include "cosim/constants.h"
#include "cosim/error.h"
#include "cosim/line.h"
#include "cosim/pulse.h"

namespace cosim {

namespace {

using cd = std::complex<double>;
constexpr cd kI(0.0, 1.0);

double spectral_radius(const Eigen::MatrixXd &h) {
    if (h.size() == 0) return 0.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> s(h, Eigen::EigenvaluesOnly);
    return s.eigenvalues().cwiseAbs().maxCoeff();
}

std::size_t total_dim(const std::vector<int> &dims) {
    std::size_t d = 1;
    for (int x : dims) d *= static_cast<std::size_t>(x);
    return d;
}

Trajectory empty_trajectory(const DeviceModel &device, const EffectiveHamiltonian &h, double dt) {
    Trajectory tr;
    tr.backend = to_string(device.sim.backend);
    tr.dims = h.dims;
    tr.labels = basis_labels(h.dims);
    tr.charge.resize(h.dims.size());
    tr.probe.resize(device.sim.probes.size());
    tr.dt_s = dt;
    tr.warnings = device.warnings;
    return tr;
}

long step_count(const DeviceModel &device, double dt) {
    return std::max(0L, std::lround(device.sim.t_end_s / dt));
}

bool sample_now(long m, long steps, int stride) { return m % stride == 0 || m == steps; }

void record_state(Trajectory &tr, double t, const Eigen::VectorXcd &psi, const EffectiveHamiltonian &h) {
    tr.t.push_back(t);
    std::vector<double> pops(static_cast<std::size_t>(psi.size()));
    for (Eigen::Index i = 0; i < psi.size(); ++i) pops[static_cast<std::size_t>(i)] = std::norm(psi[i]);
    tr.populations.push_back(std::move(pops));
    for (std::size_t l = 0; l < h.charge_ops.size(); ++l) tr.charge[l].push_back(expectation_n(h, psi, l));
}

// Sum of the pulse channels acting on each transmon, in rad/s.
void pulse_coefficients(const EffectiveHamiltonian &h, double t, bool with_crosstalk, std::vector<double> &coef) {
    std::fill(coef.begin(), coef.end(), 0.0);
    for (const auto &ch : h.channels) {
        if (ch.source == ChannelSource::LineTap) continue;
        if (ch.source == ChannelSource::Crosstalk && !with_crosstalk) continue;
        coef[ch.transmon] += ch.gain * eval_pulse(ch.pulse, t);
    }
}

void assemble_h(const EffectiveHamiltonian &h, const std::vector<double> &coef, Eigen::MatrixXd &out) {
    out = h.static_part;
    for (std::size_t l = 0; l < coef.size(); ++l)
        if (coef[l] != 0.0) out.noalias() += coef[l] * h.charge_ops[l];
}

void check_leapfrog_step(const EffectiveHamiltonian &h, double dt) {
    const double radius = spectral_radius(h.static_part);
    if (radius > 0 && dt > 0.02 / radius) {
        std::ostringstream msg;
        msg << "leapfrog qubit integrator needs dt <= 0.02 / max|H| = " << 0.02 / radius << " s";
        throw DomainError(msg.str());
    }
}

class Exponential {
   public:
    void step(const Eigen::MatrixXd &h, double dt, Eigen::VectorXcd &psi) {
        solver_.compute(h);
        const Eigen::MatrixXd &v = solver_.eigenvectors();
        const Eigen::VectorXd &lambda = solver_.eigenvalues();
        tmp_.noalias() = v.transpose().cast<cd>() * psi;
        for (Eigen::Index i = 0; i < lambda.size(); ++i) tmp_[i] *= std::exp(-kI * lambda[i] * dt);
        psi.noalias() = v.cast<cd>() * tmp_;
    }

   private:
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver_;
    Eigen::VectorXcd tmp_;
};

double norm_drift(const Eigen::VectorXcd &psi) { return std::abs(psi.norm() - 1.0); }

struct LineTapRef {
    std::size_t line = 0;
    NodeWeights at;
    std::size_t transmon = 0;
    double gain = 0;
};

}  // namespace

std::vector<double> Trajectory::level_population(std::size_t transmon, int level) const {
    std::vector<double> out(populations.size(), 0.0);
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i][transmon] - '0' != level) continue;
        for (std::size_t s = 0; s < populations.size(); ++s) out[s] += populations[s][i];
    }
    return out;
}

Eigen::VectorXcd basis_state(const std::vector<int> &dims, const std::string &label) {
    const std::string digits = label.empty() ? std::string(dims.size(), '0') : label;
    if (digits.size() != dims.size())
        throw DomainError("initial state label '" + label + "' does not match the number of transmons");
    std::size_t index = 0;
    for (std::size_t l = 0; l < dims.size(); ++l) {
        const int level = digits[l] - '0';
        if (level < 0 || level >= dims[l] || level > 9)
            throw DomainError("initial state label '" + label + "' is invalid for the configured level counts");
        index = index * static_cast<std::size_t>(dims[l]) + static_cast<std::size_t>(level);
    }
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(total_dim(dims)));
    psi[static_cast<Eigen::Index>(index)] = 1.0;
    return psi;
}

double expectation_n(const EffectiveHamiltonian &h, const Eigen::VectorXcd &psi, std::size_t which) {
    return psi.dot(h.charge_ops[which].cast<cd>() * psi).real();
}

void expm_step(const Eigen::MatrixXd &h, double dt, Eigen::VectorXcd &psi) {
    Exponential e;
    e.step(h, dt, psi);
}

double resolve_dt(const DeviceModel &device) {
    const SimConfig &sim = device.sim;
    if (sim.dt_s) return *sim.dt_s;
    double dt = 0;
    for (const auto &line : device.circuit.lines) {
        const double h = line.length_m / sim.mesh_elements;
        double limit = h * std::sqrt(line.inductance_per_m * line.capacitance_per_m);
        if (sim.consistent_mass) limit /= std::sqrt(3.0);
        const double candidate = sim.cfl_safety * limit;
        dt = dt == 0 ? candidate : std::min(dt, candidate);
    }
    if (dt > 0) return dt;
    const double radius = spectral_radius(build_hamiltonian(device, false).static_part);
    if (radius > 0) return 0.02 / radius;
    return sim.t_end_s > 0 ? sim.t_end_s / 1000.0 : 1e-12;
}

Trajectory closed_evolve(const DeviceModel &device) {
    const EffectiveHamiltonian h = build_hamiltonian(device, false);
    const double dt = resolve_dt(device);
    const long steps = step_count(device, dt);
    Trajectory tr = empty_trajectory(device, h, dt);
    tr.backend = to_string(Backend::ClosedSystem);
    if (device.sim.integrator == Integrator::Leapfrog) check_leapfrog_step(h, dt);

    Eigen::VectorXcd psi = basis_state(h.dims, device.sim.initial_state);
    Eigen::VectorXcd older;
    std::vector<double> coef(h.dims.size());
    Eigen::MatrixXd hm;
    Exponential expo;
    record_state(tr, 0.0, psi, h);
    for (long m = 0; m < steps; ++m) {
        const double t = m * dt;
        if (device.sim.integrator == Integrator::Leapfrog && m > 0) {
            pulse_coefficients(h, t, true, coef);
            assemble_h(h, coef, hm);
            Eigen::VectorXcd next = older - 2.0 * kI * dt * (hm.cast<cd>() * psi);
            older = std::move(psi);
            psi = std::move(next);
        } else {
            pulse_coefficients(h, t + 0.5 * dt, true, coef);
            assemble_h(h, coef, hm);
            older = psi;
            expo.step(hm, dt, psi);
        }
        const double drift = norm_drift(psi);
        tr.max_norm_drift = std::max(tr.max_norm_drift, drift);
        if (drift > 1e-6) throw SolverError("closed-system norm drift exceeds 1e-6");
        if (sample_now(m + 1, steps, device.sim.sample_stride)) record_state(tr, (m + 1) * dt, psi, h);
    }
    tr.final_state = psi;
    return tr;
}

Trajectory ms_evolve(const DeviceModel &device) {
    const SimConfig &sim = device.sim;
    const bool backaction = sim.backend != Backend::MaxwellSchrodingerNoBackaction;
    const EffectiveHamiltonian h = build_hamiltonian(device, true);
    const double dt = resolve_dt(device);
    const long steps = step_count(device, dt);
    Trajectory tr = empty_trajectory(device, h, dt);
    tr.backend = to_string(backaction ? Backend::MaxwellSchrodinger : Backend::MaxwellSchrodingerNoBackaction);
    if (sim.integrator == Integrator::Leapfrog) check_leapfrog_step(h, dt);
    else if (spectral_radius(h.static_part) * dt > 0.02)
        tr.warnings.push_back("dt exceeds 0.02 / max|H|; the exponential integrator stays norm preserving");

    std::vector<LineSystem> systems;
    std::vector<LineState> states;
    for (const auto &line : device.circuit.lines) {
        systems.push_back(assemble(line, sim.mesh_elements, sim.consistent_mass));
        states.push_back(LineState::quiescent(systems.back(), dt));
        if (dt > systems.back().cfl_limit())
            tr.warnings.push_back("dt exceeds the CFL limit of line " + line.id);
    }

    // Qubit-side line channels and line-side back-action sources.
    std::vector<LineTapRef> drive_taps, sources;
    for (const auto &ch : h.channels) {
        if (ch.source != ChannelSource::LineTap) continue;
        const Tap &tap = device.circuit.lines[ch.line].taps[ch.tap];
        drive_taps.push_back({ch.line, systems[ch.line].locate(tap.position_m), ch.transmon, ch.gain});
    }
    const double two_e = 2.0 * PhysicalConstants::e;
    for (std::size_t li = 0; li < device.circuit.lines.size() && backaction; ++li) {
        for (const Tap &tap : device.circuit.lines[li].taps) {
            if (!tap.backaction_enabled) continue;
            const double beta = beta_factor(device.circuit.transmons[tap.transmon], tap.coupling_capacitance_f);
            sources.push_back({li, systems[li].locate(tap.position_m), tap.transmon, two_e * beta});
        }
    }
    std::vector<NodeWeights> probes;
    for (const auto &p : sim.probes) {
        if (p.line >= systems.size()) throw DomainError("probe refers to an unknown line");
        probes.push_back(systems[p.line].locate(p.position_m));
    }

    Eigen::VectorXcd psi = basis_state(h.dims, sim.initial_state);
    Eigen::VectorXcd older;
    std::vector<double> n_now(h.dims.size()), n_next(h.dims.size());
    for (std::size_t l = 0; l < n_now.size(); ++l) n_now[l] = expectation_n(h, psi, l);
    std::vector<double> phidot_now(drive_taps.size(), 0.0), phidot_prev(drive_taps.size(), 0.0);
    std::vector<double> coef(h.dims.size());
    std::vector<Eigen::VectorXd> loads;
    for (const auto &s : systems) loads.push_back(Eigen::VectorXd::Zero(s.node_count()));
    Eigen::MatrixXd hm;
    Exponential expo;

    auto record = [&](double t) {
        record_state(tr, t, psi, h);
        for (std::size_t p = 0; p < probes.size(); ++p)
            tr.probe[p].push_back(sample_phidot(states[sim.probes[p].line], probes[p]));
    };
    record(0.0);

    for (long m = 0; m < steps; ++m) {
        const double t = m * dt;
        if (sim.integrator == Integrator::Leapfrog && m > 0) {
            pulse_coefficients(h, t, false, coef);
            for (std::size_t i = 0; i < drive_taps.size(); ++i) coef[drive_taps[i].transmon] += drive_taps[i].gain * phidot_now[i];
            assemble_h(h, coef, hm);
            Eigen::VectorXcd next = older - 2.0 * kI * dt * (hm.cast<cd>() * psi);
            older = std::move(psi);
            psi = std::move(next);
        } else {
            // Midpoint Hamiltonian; the line voltage is extrapolated from the
            // two latest integer-step samples.
            pulse_coefficients(h, t + 0.5 * dt, false, coef);
            for (std::size_t i = 0; i < drive_taps.size(); ++i) {
                const double v = m == 0 ? phidot_now[i] : 1.5 * phidot_now[i] - 0.5 * phidot_prev[i];
                coef[drive_taps[i].transmon] += drive_taps[i].gain * v;
            }
            assemble_h(h, coef, hm);
            older = psi;
            expo.step(hm, dt, psi);
        }
        const double drift = norm_drift(psi);
        tr.max_norm_drift = std::max(tr.max_norm_drift, drift);
        if (drift > 1e-4) throw SolverError("Maxwell-Schrodinger norm drift exceeds 1e-4");
        for (std::size_t l = 0; l < n_next.size(); ++l) n_next[l] = expectation_n(h, psi, l);

        for (auto &load : loads) load.setZero();
        for (const auto &s : sources)
            add_point_current(systems[s.line], loads[s.line], s.at, s.gain * (n_next[s.transmon] - n_now[s.transmon]) / dt);
        for (std::size_t li = 0; li < systems.size(); ++li) step(systems[li], states[li], loads[li], t + 0.5 * dt);

        for (std::size_t i = 0; i < drive_taps.size(); ++i) {
            phidot_prev[i] = phidot_now[i];
            phidot_now[i] = sample_phidot(states[drive_taps[i].line], drive_taps[i].at);
        }
        n_now.swap(n_next);
        if (sample_now(m + 1, steps, sim.sample_stride)) record((m + 1) * dt);
    }
    tr.final_state = psi;
    return tr;
}

namespace {

// [x, rho] for x = a e^{-i w t} + a^dag e^{i w t} on a truncated Fock space.
Eigen::MatrixXcd ladder_commutator(const Eigen::MatrixXcd &rho, const Eigen::VectorXd &sq, cd phase) {
    const Eigen::Index n = rho.rows();
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n, n);
    const cd up = phase, down = std::conj(phase);  // x(k,k+1) = sq_k up, x(k+1,k) = sq_k down
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            cd v = 0;
            if (i + 1 < n) v += sq[i] * up * rho(i + 1, j);
            if (i > 0) v += sq[i - 1] * down * rho(i - 1, j);
            if (j > 0) v -= rho(i, j - 1) * sq[j - 1] * up;
            if (j + 1 < n) v -= rho(i, j + 1) * sq[j] * down;
            out(i, j) = v;
        }
    }
    return out;
}

double ladder_expectation(const Eigen::MatrixXcd &rho, const Eigen::VectorXd &sq, cd phase) {
    cd acc = 0;
    for (Eigen::Index k = 0; k + 1 < rho.rows(); ++k) acc += sq[k] * phase * rho(k + 1, k);
    return 2.0 * acc.real();
}

struct BornModel {
    Eigen::VectorXd q;
    Eigen::MatrixXd n;
    double omega = 0;
    double g_source = 0;    // qubit charge -> resonator
    double g_feedback = 0;  // resonator field -> qubit
    Eigen::VectorXd sq;
    const EffectiveHamiltonian *h = nullptr;

    Eigen::MatrixXcd n_tilde(double t) const {
        const Eigen::Index d = q.size();
        Eigen::MatrixXcd out(d, d);
        for (Eigen::Index i = 0; i < d; ++i)
            for (Eigen::Index j = 0; j < d; ++j) out(i, j) = n(i, j) * std::exp(kI * (q[i] - q[j]) * t);
        return out;
    }
    cd mode_phase(double t) const { return std::exp(-kI * omega * t); }
    double drive(double t) const {
        double v = 0;
        for (const auto &ch : h->channels)
            if (ch.source != ChannelSource::LineTap && ch.transmon == 0) v += ch.gain * eval_pulse(ch.pulse, t);
        return v;
    }
    double v_r(double t, const Eigen::MatrixXcd &rho_r) const {
        return g_feedback * ladder_expectation(rho_r, sq, mode_phase(t));
    }
    static double charge(const Eigen::MatrixXcd &nt, const Eigen::MatrixXcd &rho_q) {
        return (nt.cwiseProduct(rho_q.transpose())).sum().real();
    }
    void derivative(double t, const Eigen::MatrixXcd &rq, const Eigen::MatrixXcd &rr, Eigen::MatrixXcd &dq,
                    Eigen::MatrixXcd &dr) const {
        const Eigen::MatrixXcd nt = n_tilde(t);
        dq = -kI * (v_r(t, rr) + drive(t)) * (nt * rq - rq * nt);
        dr = -kI * g_source * charge(nt, rq) * ladder_commutator(rr, sq, mode_phase(t));
    }
    void rk4(double t, double h, Eigen::MatrixXcd &rq, Eigen::MatrixXcd &rr) const {
        Eigen::MatrixXcd k1q, k1r, k2q, k2r, k3q, k3r, k4q, k4r;
        derivative(t, rq, rr, k1q, k1r);
        derivative(t + 0.5 * h, rq + 0.5 * h * k1q, rr + 0.5 * h * k1r, k2q, k2r);
        derivative(t + 0.5 * h, rq + 0.5 * h * k2q, rr + 0.5 * h * k2r, k3q, k3r);
        derivative(t + h, rq + h * k3q, rr + h * k3r, k4q, k4r);
        rq += h / 6.0 * (k1q + 2.0 * k2q + 2.0 * k3q + k4q);
        rr += h / 6.0 * (k1r + 2.0 * k2r + 2.0 * k3r + k4r);
    }
};

}  // namespace

Trajectory born_evolve(const DeviceModel &device) {
    const SimConfig &sim = device.sim;
    if (device.spectra.size() != 1) throw DomainError("the Born backend simulates exactly one transmon");
    const EffectiveHamiltonian h = build_hamiltonian(device, false);
    const double dt = resolve_dt(device);
    const long steps = step_count(device, dt);
    Trajectory tr = empty_trajectory(device, h, dt);
    tr.backend = to_string(Backend::BornOpenSystem);

    BornModel model;
    model.h = &h;
    model.q = simulation_frequencies(device, 0);
    model.n = device.spectra[0].real_charge();
    std::size_t tap_count = 0;
    for (const auto &line : device.circuit.lines) {
        for (const auto &tap : line.taps) {
            if (tap.transmon != 0) continue;
            if (++tap_count > 1) throw DomainError("the Born backend supports a single line tap");
            if (!is_open_open(line)) throw DomainError("the Born backend needs an open-open resonator");
            if (tap.position_m != 0.0 && tap.position_m != line.length_m)
                throw DomainError("the single-mode coupling assumes a tap at a resonator end");
            const double beta = beta_factor(device.circuit.transmons[0], tap.coupling_capacitance_f);
            const double g = single_mode_coupling(device.spectra[0], beta, line);
            model.omega = eigenmodes(line, 1, tap.position_m).omega[0];
            model.g_source = tap.backaction_enabled ? g : 0.0;
            model.g_feedback = tap.drive_to_qubit_enabled ? g : 0.0;
        }
    }
    const int nf = sim.fock_truncation;
    model.sq.resize(nf);
    for (int k = 0; k < nf; ++k) model.sq[k] = std::sqrt(static_cast<double>(k + 1));

    const Eigen::VectorXcd psi0 = basis_state(h.dims, sim.initial_state);
    Eigen::MatrixXcd q_prev = psi0 * psi0.adjoint();
    Eigen::MatrixXcd r_vac = Eigen::MatrixXcd::Zero(nf, nf);
    r_vac(0, 0) = 1.0;

    // Bootstrap: rho_R at -dt/2 and +dt/2, rho_Q at dt, by fourth-order steps.
    Eigen::MatrixXcd q_tmp = q_prev, r_prev = r_vac;
    model.rk4(0.0, -0.5 * dt, q_tmp, r_prev);
    Eigen::MatrixXcd q_cur = q_prev, r_cur = r_vac;
    model.rk4(0.0, 0.5 * dt, q_cur, r_cur);
    Eigen::MatrixXcd r_half = r_cur;
    Eigen::MatrixXcd r_scratch = r_cur;
    model.rk4(0.5 * dt, 0.5 * dt, q_cur, r_scratch);
    r_cur = r_half;

    double n_prev = BornModel::charge(model.n_tilde(0.0), q_prev);
    double n_cur = BornModel::charge(model.n_tilde(dt), q_cur);
    double vr_prev = model.v_r(-0.5 * dt, r_prev);
    double vr_cur = model.v_r(0.5 * dt, r_cur);
    bool fock_warned = false;

    auto record = [&](double t, const Eigen::MatrixXcd &rq, double charge, double vr) {
        tr.t.push_back(t);
        std::vector<double> pops(static_cast<std::size_t>(rq.rows()));
        for (Eigen::Index i = 0; i < rq.rows(); ++i) pops[static_cast<std::size_t>(i)] = rq(i, i).real();
        tr.populations.push_back(std::move(pops));
        tr.charge[0].push_back(charge);
        tr.resonator_drive.push_back(vr);
        for (auto &p : tr.probe) p.push_back(0.0);
    };
    auto check_trace = [&](const Eigen::MatrixXcd &rq, const Eigen::MatrixXcd &rr) {
        const double drift = std::max(std::abs(rq.trace() - 1.0), std::abs(rr.trace() - 1.0));
        tr.max_trace_drift = std::max(tr.max_trace_drift, drift);
        if (drift > 1e-8) throw SolverError("Born solver trace drift exceeds 1e-8");
        if (!fock_warned && rr(nf - 1, nf - 1).real() > 1e-4) {
            fock_warned = true;
            tr.warnings.push_back("top Fock level population exceeds 1e-4; increase fock_truncation");
        }
    };
    record(0.0, q_prev, n_prev, 0.5 * (vr_prev + vr_cur));
    check_trace(q_cur, r_cur);
    if (steps >= 1 && sample_now(1, steps, sim.sample_stride)) record(dt, q_cur, n_cur, vr_cur);

    // State: q_prev = rho_Q^m, q_cur = rho_Q^{m+1}, r_prev = rho_R^{m-1/2},
    // r_cur = rho_R^{m+1/2}.
    for (long m = 0; m + 1 < steps; ++m) {
        const double t_half = (m + 0.5) * dt;
        Eigen::MatrixXcd r_next =
            r_prev - kI * dt * model.g_source * (n_cur + n_prev) * ladder_commutator(r_cur, model.sq, model.mode_phase(t_half));
        const double vr_next = model.v_r(t_half + dt, r_next);

        const double t1 = (m + 1) * dt;
        const Eigen::MatrixXcd nt = model.n_tilde(t1);
        Eigen::MatrixXcd q_next =
            q_prev - kI * dt * (vr_next + vr_cur + 2.0 * model.drive(t1)) * (nt * q_cur - q_cur * nt);
        const double n_next = BornModel::charge(model.n_tilde(t1 + dt), q_next);

        check_trace(q_next, r_next);
        q_prev = std::move(q_cur);
        q_cur = std::move(q_next);
        r_prev = std::move(r_cur);
        r_cur = std::move(r_next);
        n_prev = n_cur;
        n_cur = n_next;
        const double vr_mid = 0.5 * (vr_cur + vr_next);
        vr_cur = vr_next;
        if (sample_now(m + 2, steps, sim.sample_stride)) record((m + 2) * dt, q_cur, n_cur, vr_mid);
    }

    const double t_final = steps * dt;
    const Eigen::MatrixXcd &final_q = steps == 0 ? q_prev : q_cur;
    const Eigen::Index d = final_q.rows();
    tr.final_density.resize(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j)
            tr.final_density(i, j) = final_q(i, j) * std::exp(-kI * (model.q[i] - model.q[j]) * t_final);
    return tr;
}

Trajectory evolve(const DeviceModel &device) {
    switch (device.sim.backend) {
        case Backend::MaxwellSchrodinger:
        case Backend::MaxwellSchrodingerNoBackaction: return ms_evolve(device);
        case Backend::ClosedSystem: return closed_evolve(device);
        case Backend::BornOpenSystem: return born_evolve(device);
    }
    throw DomainError("unknown backend");
}

double fidelity(const std::vector<Eigen::VectorXcd> &ideal, const std::vector<Eigen::VectorXcd> &actual,
                const std::vector<int> &subspace) {
    if (ideal.empty() || ideal.size() != actual.size() || ideal.size() > subspace.size())
        throw DomainError("fidelity needs matching ideal and actual run sets");
    double sum = 0;
    for (std::size_t j = 0; j < ideal.size(); ++j) {
        if (ideal[j].size() != actual[j].size()) throw DomainError("fidelity runs have mismatched dimensions");
        cd overlap = 0;
        for (int k : subspace) {
            if (k >= ideal[j].size()) throw DomainError("fidelity subspace outside the state space");
            overlap += std::conj(ideal[j][k]) * actual[j][k];
        }
        sum += std::norm(overlap);
    }
    return sum / static_cast<double>(ideal.size());
}

}  // namespace cosim

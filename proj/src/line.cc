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

#include "cosim/line.h"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "cosim/error.h"
#include "cosim/pulse.h"

namespace cosim {

namespace {

struct EndTerms {
    double damping = 0;
    bool fixed = false;
};

EndTerms end_terms(const Termination &end) {
    EndTerms out;
    if (std::holds_alternative<ShortEnd>(end)) out.fixed = true;
    if (const auto *r = std::get_if<ResistorEnd>(&end)) out.damping = 1.0 / r->resistance_ohm;
    if (const auto *s = std::get_if<TheveninEnd>(&end)) out.damping = 1.0 / s->series_resistance_ohm;
    return out;
}

double source_current(const Termination &end, double t) {
    if (const auto *s = std::get_if<TheveninEnd>(&end)) return eval_pulse(s->pulse, t) / s->series_resistance_ohm;
    return 0.0;
}

}  // namespace

double phase_velocity(const LineSpec &line) { return 1.0 / std::sqrt(line.inductance_per_m * line.capacitance_per_m); }

double characteristic_impedance(const LineSpec &line) {
    return std::sqrt(line.inductance_per_m / line.capacitance_per_m);
}

double LineSystem::cfl_limit() const {
    const double limit = h * std::sqrt(spec.inductance_per_m * spec.capacitance_per_m);
    return consistent_mass ? limit / std::sqrt(3.0) : limit;
}

NodeWeights LineSystem::locate(double z) const {
    if (z < 0 || z > spec.length_m) throw DomainError(spec.id + ": position outside line");
    NodeWeights w;
    const double x = z / h;
    const Eigen::Index e = std::min<Eigen::Index>(static_cast<Eigen::Index>(std::floor(x)), elements - 1);
    const double xi = x - static_cast<double>(e);
    w.node = {e, e + 1};
    w.weight = {1.0 - xi, xi};
    return w;
}

LineSystem assemble(const LineSpec &line, int elements, bool consistent_mass) {
    if (elements < 2) throw DomainError(line.id + ": mesh must have at least 2 elements");
    if (!(line.length_m > 0)) throw DomainError(line.id + ": line length must be > 0");
    if (!(line.inductance_per_m > 0 && line.capacitance_per_m > 0))
        throw DomainError(line.id + ": per-unit-length L and C must be > 0");

    LineSystem sys;
    sys.spec = line;
    sys.elements = elements;
    sys.h = line.length_m / elements;
    sys.consistent_mass = consistent_mass;
    const Eigen::Index n = elements + 1;
    sys.nodes = Eigen::VectorXd::LinSpaced(n, 0.0, line.length_m);

    const double c = line.capacitance_per_m;
    const double k = 1.0 / (line.inductance_per_m * sys.h);
    sys.mass_diag = Eigen::VectorXd::Zero(n);
    sys.mass_off = Eigen::VectorXd::Zero(n - 1);
    sys.stiffness_diag = Eigen::VectorXd::Zero(n);
    sys.stiffness_off = Eigen::VectorXd::Zero(n - 1);
    for (Eigen::Index e = 0; e < elements; ++e) {
        sys.mass_diag[e] += c * sys.h / 3.0;
        sys.mass_diag[e + 1] += c * sys.h / 3.0;
        sys.mass_off[e] += c * sys.h / 6.0;
        sys.stiffness_diag[e] += k;
        sys.stiffness_diag[e + 1] += k;
        sys.stiffness_off[e] -= k;
    }
    sys.lumped_mass = sys.mass_diag;
    for (Eigen::Index e = 0; e < elements; ++e) {
        sys.lumped_mass[e] += sys.mass_off[e];
        sys.lumped_mass[e + 1] += sys.mass_off[e];
    }

    sys.damping = Eigen::VectorXd::Zero(n);
    sys.fixed.assign(static_cast<std::size_t>(n), false);
    const EndTerms left = end_terms(line.left_end);
    const EndTerms right = end_terms(line.right_end);
    sys.damping[0] = left.damping;
    sys.damping[n - 1] = right.damping;
    sys.fixed.front() = left.fixed;
    sys.fixed.back() = right.fixed;
    return sys;
}

LineState LineState::quiescent(const LineSystem &system, double dt) {
    LineState s;
    s.previous = Eigen::VectorXd::Zero(system.node_count());
    s.current = Eigen::VectorXd::Zero(system.node_count());
    s.dt = dt;
    return s;
}

void add_point_current(const LineSystem &, Eigen::VectorXd &load, const NodeWeights &at, double current) {
    load[at.node[0]] += at.weight[0] * current;
    load[at.node[1]] += at.weight[1] * current;
}

void step(const LineSystem &sys, LineState &state, const Eigen::VectorXd &load, double time_s) {
    const Eigen::Index n = sys.node_count();
    const double dt = state.dt;
    const double idt2 = 1.0 / (dt * dt);
    const double i2dt = 0.5 / dt;
    const Eigen::VectorXd &phi = state.current;
    const Eigen::VectorXd &prev = state.previous;

    // rhs = f - K phi + (2M/dt^2) phi - (M/dt^2 - D/(2dt)) phi_prev
    Eigen::VectorXd rhs(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        double kphi = sys.stiffness_diag[i] * phi[i];
        if (i > 0) kphi += sys.stiffness_off[i - 1] * phi[i - 1];
        if (i + 1 < n) kphi += sys.stiffness_off[i] * phi[i + 1];
        rhs[i] = load[i] - kphi + sys.damping[i] * i2dt * prev[i];
    }
    rhs[0] += source_current(sys.spec.left_end, time_s);
    rhs[n - 1] += source_current(sys.spec.right_end, time_s);

    Eigen::VectorXd next(n);
    if (!sys.consistent_mass) {
        for (Eigen::Index i = 0; i < n; ++i) {
            const double m = sys.lumped_mass[i] * idt2;
            next[i] = (rhs[i] + m * (2.0 * phi[i] - prev[i])) / (m + sys.damping[i] * i2dt);
        }
    } else {
        // (M/dt^2 + D/(2dt)) next = rhs + M (2 phi - prev) / dt^2, tridiagonal.
        Eigen::VectorXd u = 2.0 * phi - prev;
        Eigen::VectorXd diag(n), off = sys.mass_off * idt2;
        for (Eigen::Index i = 0; i < n; ++i) {
            double mu = sys.mass_diag[i] * u[i];
            if (i > 0) mu += sys.mass_off[i - 1] * u[i - 1];
            if (i + 1 < n) mu += sys.mass_off[i] * u[i + 1];
            rhs[i] += mu * idt2;
            diag[i] = sys.mass_diag[i] * idt2 + sys.damping[i] * i2dt;
        }
        // Essential conditions: replace the fixed rows by identity.
        Eigen::VectorXd lower = off, upper = off;
        for (Eigen::Index i = 0; i < n; ++i) {
            if (!sys.fixed[static_cast<std::size_t>(i)]) continue;
            diag[i] = 1.0;
            rhs[i] = 0.0;
            if (i > 0) lower[i - 1] = 0.0;
            if (i + 1 < n) upper[i] = 0.0;
        }
        // Thomas algorithm; lower[i-1] couples row i to i-1, upper[i] row i to i+1.
        Eigen::VectorXd c(n), d(n);
        c[0] = n > 1 ? upper[0] / diag[0] : 0.0;
        d[0] = rhs[0] / diag[0];
        for (Eigen::Index i = 1; i < n; ++i) {
            const double denom = diag[i] - lower[i - 1] * c[i - 1];
            c[i] = i + 1 < n ? upper[i] / denom : 0.0;
            d[i] = (rhs[i] - lower[i - 1] * d[i - 1]) / denom;
        }
        next[n - 1] = d[n - 1];
        for (Eigen::Index i = n - 2; i >= 0; --i) next[i] = d[i] - c[i] * next[i + 1];
    }
    for (Eigen::Index i = 0; i < n; ++i)
        if (sys.fixed[static_cast<std::size_t>(i)]) next[i] = 0.0;

    const double peak = next.cwiseAbs().maxCoeff();
    // A driven line may climb out of rounding noise in one window; an unstable
    // step keeps multiplying window after window.
    if (!std::isfinite(peak) ||
        (state.historical_max > 0 && peak > 1e6 * state.historical_max && state.checkpoint_growth > 1e3))
        throw SolverError("CFL violation suspected on line " + sys.spec.id);
    state.running_max = std::max(state.running_max, peak);

    state.previous.swap(state.current);
    state.current.swap(next);
    ++state.step_index;
    if (state.step_index % kStabilityWindow == 0) {
        state.checkpoint_growth = state.historical_max > 0 ? state.running_max / state.historical_max : 0.0;
        state.historical_max = state.running_max;
    }
}

double sample_phidot(const LineState &state, Eigen::Index node) {
    return (state.current[node] - state.previous[node]) / state.dt;
}

double sample_phidot(const LineState &state, const NodeWeights &at) {
    return at.weight[0] * sample_phidot(state, at.node[0]) + at.weight[1] * sample_phidot(state, at.node[1]);
}

double discrete_energy(const LineSystem &sys, const LineState &state) {
    const Eigen::Index n = sys.node_count();
    const Eigen::VectorXd v = (state.current - state.previous) / state.dt;
    double kinetic = 0, potential = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double m = sys.consistent_mass ? sys.mass_diag[i] : sys.lumped_mass[i];
        kinetic += m * v[i] * v[i];
        potential += sys.stiffness_diag[i] * state.current[i] * state.previous[i];
        if (i + 1 < n) {
            if (sys.consistent_mass) kinetic += 2.0 * sys.mass_off[i] * v[i] * v[i + 1];
            potential += sys.stiffness_off[i] *
                         (state.current[i] * state.previous[i + 1] + state.current[i + 1] * state.previous[i]);
        }
    }
    return 0.5 * (kinetic + potential);
}

Eigen::VectorXd fem_mode_frequencies(const LineSystem &sys, int count) {
    std::vector<Eigen::Index> free;
    for (Eigen::Index i = 0; i < sys.node_count(); ++i)
        if (!sys.fixed[static_cast<std::size_t>(i)]) free.push_back(i);
    const auto m = static_cast<Eigen::Index>(free.size());
    Eigen::MatrixXd k = Eigen::MatrixXd::Zero(m, m), mass = Eigen::MatrixXd::Zero(m, m);
    for (Eigen::Index a = 0; a < m; ++a) {
        const Eigen::Index i = free[static_cast<std::size_t>(a)];
        k(a, a) = sys.stiffness_diag[i];
        mass(a, a) = sys.consistent_mass ? sys.mass_diag[i] : sys.lumped_mass[i];
        if (a + 1 < m && free[static_cast<std::size_t>(a + 1)] == i + 1) {
            k(a, a + 1) = k(a + 1, a) = sys.stiffness_off[i];
            if (sys.consistent_mass) mass(a, a + 1) = mass(a + 1, a) = sys.mass_off[i];
        }
    }
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(k, mass, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw SolverError(sys.spec.id + ": line eigensolver failed");
    const Eigen::VectorXd &lambda = solver.eigenvalues();
    const double floor = 1e-9 * lambda.cwiseAbs().maxCoeff();
    std::vector<double> out;
    for (Eigen::Index i = 0; i < lambda.size() && static_cast<int>(out.size()) < count; ++i)
        if (lambda[i] > floor) out.push_back(std::sqrt(lambda[i]));
    return Eigen::Map<Eigen::VectorXd>(out.data(), static_cast<Eigen::Index>(out.size()));
}

bool is_open_open(const LineSpec &line) {
    return std::holds_alternative<OpenEnd>(line.left_end) && std::holds_alternative<OpenEnd>(line.right_end);
}

ModeData eigenmodes(const LineSpec &line, int count, double z0) {
    if (!is_open_open(line)) throw DomainError(line.id + ": analytic modes need an open-open line");
    if (z0 < 0 || z0 > line.length_m) throw DomainError(line.id + ": tap position outside line");
    ModeData out;
    out.omega.resize(count);
    out.amplitude.resize(count);
    const double w1 = std::numbers::pi * phase_velocity(line) / line.length_m;
    for (int k = 1; k <= count; ++k) {
        out.omega[k - 1] = k * w1;
        out.amplitude[k - 1] = std::cos(k * std::numbers::pi * z0 / line.length_m);
    }
    return out;
}

}  // namespace cosim

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

#include <complex>

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

#include "cosim/analysis.h"
#include "cosim/config.h"
#include "cosim/constants.h"
#include "cosim/device.h"
#include "cosim/dynamics.h"
#include "cosim/error.h"
#include "cosim/line.h"
#include "cosim/scenario.h"
#include "cosim/transmon.h"

namespace py = pybind11;
using nlohmann::json;

namespace {

cosim::DeviceModel device_of(const std::string &text) {
    const cosim::Config cfg = cosim::load_config_text(text);
    return cosim::build_device(cfg.circuit, cfg.sim);
}

std::string spectrum_json(const std::string &text) {
    const cosim::DeviceModel device = device_of(text);
    json out = json::array();
    for (std::size_t l = 0; l < device.spectra.size(); ++l) {
        const auto &s = device.spectra[l];
        const Eigen::MatrixXd n = s.real_charge();
        json q = json::array(), up = json::array();
        for (int j = 0; j < s.level_count(); ++j) q.push_back(s.eigenfrequencies[j] / cosim::kTwoPi);
        for (int j = 0; j + 1 < s.level_count(); ++j) up.push_back(n(j, j + 1));
        out.push_back({{"id", device.circuit.transmons[l].id},
                       {"ej_hz", device.circuit.transmons[l].josephson_energy_hz},
                       {"ec_hz", s.charging_energy_j / cosim::PhysicalConstants::h},
                       {"levels_hz", q},
                       {"n_up", up}});
    }
    return out.dump();
}

std::string couplings_json(const std::string &text) {
    const cosim::DeviceModel device = device_of(text);
    json out;
    out["exchange"] = json::array();
    for (const auto &b : device.couplings.exchange) {
        json rows = json::array();
        for (Eigen::Index i = 0; i < b.result.J.rows(); ++i) {
            json row = json::array();
            for (Eigen::Index j = 0; j < b.result.J.cols(); ++j) row.push_back(b.result.J(i, j) / cosim::kTwoPi);
            rows.push_back(row);
        }
        out["exchange"].push_back({{"a", b.a}, {"b", b.b}, {"route", cosim::to_string(b.result.route)}, {"j_hz", rows}});
    }
    out["qbar_hz"] = json::array();
    for (const auto &q : device.couplings.lamb_shifted) {
        json v = json::array();
        for (Eigen::Index j = 0; j < q.size(); ++j) v.push_back(q[j] / cosim::kTwoPi);
        out["qbar_hz"].push_back(v);
    }
    return out.dump();
}

// [row][sample] -> 2-D array of shape (rows, samples).
py::array_t<double> stack(const std::vector<std::vector<double>> &rows, std::size_t samples) {
    py::array_t<double> out({rows.size(), samples});
    auto view = out.mutable_unchecked<2>();
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t i = 0; i < samples; ++i) view(r, i) = rows[r][i];
    return out;
}

py::dict simulate(const std::string &text) {
    const cosim::DeviceModel device = device_of(text);
    cosim::Trajectory tr;
    {
        py::gil_scoped_release release;
        tr = cosim::evolve(device);
    }
    const std::size_t n = tr.samples(), d = tr.labels.size();
    py::array_t<double> pops({n, d});
    auto view = pops.mutable_unchecked<2>();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < d; ++k) view(i, k) = tr.populations[i][k];
    py::dict out;
    out["backend"] = tr.backend;
    out["labels"] = tr.labels;
    out["t"] = py::array_t<double>(tr.t.size(), tr.t.data());
    out["populations"] = pops;
    out["charge"] = stack(tr.charge, n);
    out["probe"] = stack(tr.probe, n);
    if (!tr.resonator_drive.empty()) out["resonator_drive"] = py::array_t<double>(n, tr.resonator_drive.data());
    if (tr.final_state.size()) {
        py::array_t<std::complex<double>> psi(tr.final_state.size());
        auto v = psi.mutable_unchecked<1>();
        for (Eigen::Index i = 0; i < tr.final_state.size(); ++i) v(i) = tr.final_state[i];
        out["final_state"] = psi;
    }
    out["dt"] = tr.dt_s;
    out["max_norm_drift"] = tr.max_norm_drift;
    out["max_trace_drift"] = tr.max_trace_drift;
    out["warnings"] = tr.warnings;
    return out;
}

std::vector<double> fem_frequencies(double length_m, double inductance_per_m, double capacitance_per_m,
                                    int elements, int count) {
    cosim::LineSpec line;
    line.id = "line";
    line.length_m = length_m;
    line.inductance_per_m = inductance_per_m;
    line.capacitance_per_m = capacitance_per_m;
    const cosim::LineSystem sys = cosim::assemble(line, elements, false);
    const Eigen::VectorXd omega = cosim::fem_mode_frequencies(sys, count);
    std::vector<double> out(omega.size());
    for (Eigen::Index i = 0; i < omega.size(); ++i) out[i] = omega[i] / cosim::kTwoPi;
    return out;
}

py::dict run_scenario(const std::string &name, const std::string &out_dir, const std::string &backend) {
    const cosim::Scenario s = cosim::load_scenario_file(cosim::find_scenario(name));
    cosim::RunOptions opts;
    if (!out_dir.empty()) opts.out_dir = out_dir;
    if (!backend.empty()) opts.backend = cosim::parse_backend(backend);
    cosim::ScenarioResult r;
    {
        py::gil_scoped_release release;
        r = cosim::run_scenario(s, opts);
    }
    py::list runs, checks;
    for (const auto &run : r.runs) {
        py::dict d;
        d["label"] = run.spec.label;
        d["ok"] = run.ok;
        d["error"] = run.error;
        d["wall_s"] = run.wall_s;
        runs.append(d);
    }
    for (const auto &c : r.checks) {
        py::dict d;
        d["type"] = c.check.type;
        d["passed"] = c.passed;
        d["value"] = c.value;
        d["detail"] = c.detail;
        checks.append(d);
    }
    py::dict out;
    out["name"] = r.name;
    out["passed"] = r.passed();
    out["runs"] = runs;
    out["checks"] = checks;
    return out;
}

}  // namespace

PYBIND11_MODULE(_cosim, m) {
    m.doc() = "Transmon and transmission-line co-simulation core";

    py::register_exception<cosim::ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<cosim::DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<cosim::SolverError>(m, "SolverError", PyExc_RuntimeError);

    m.def("normalize_config", [](const std::string &text) { return cosim::serialize(cosim::load_config_text(text)).dump(); },
          py::arg("text"), "Parse a configuration and return its SI serialization as JSON text.");
    m.def("config_hash", [](const std::string &text) { return cosim::config_hash(cosim::load_config_text(text)); },
          py::arg("text"));
    m.def("scale_decimal", &cosim::scale_decimal, py::arg("number"), py::arg("exponent"));
    m.def("spectrum", &spectrum_json, py::arg("text"), "Transmon levels (Hz) and n_{j,j+1} as JSON text.");
    m.def("couplings", &couplings_json, py::arg("text"), "Exchange couplings and Lamb-shifted levels as JSON text.");
    m.def("simulate", &simulate, py::arg("text"), "Run the configured backend and return the trajectory.");
    m.def("fem_frequencies", &fem_frequencies, py::arg("length_m"), py::arg("inductance_per_m"),
          py::arg("capacitance_per_m"), py::arg("elements"), py::arg("count") = 3,
          "Lowest non-trivial eigenfrequencies (Hz) of an open-open line mesh.");
    m.def("run_scenario", &run_scenario, py::arg("name"), py::arg("out_dir") = "", py::arg("backend") = "");
}

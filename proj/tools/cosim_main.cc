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

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <json.hpp>
#include <optional>

#include "cosim/config.h"
#include "cosim/constants.h"
#include "cosim/coupling.h"
#include "cosim/device.h"
#include "cosim/error.h"
#include "cosim/impedance.h"
#include "cosim/scenario.h"
#include "cosim/transmon.h"

using nlohmann::json;

namespace {

struct Overrides {
    std::string backend;
    std::optional<double> dt_ps;
    std::optional<int> mesh;
    std::optional<int> levels;
    std::string integrator;
};

void add_override_flags(CLI::App *cmd, Overrides &o) {
    cmd->add_option("--backend", o.backend, "Only run this backend (ms, ms_no_backaction, closed, born)");
    cmd->add_option("--dt-ps", o.dt_ps, "Time step in picoseconds");
    cmd->add_option("--mesh", o.mesh, "Line mesh elements");
    cmd->add_option("--levels", o.levels, "Levels kept per transmon");
    cmd->add_option("--integrator", o.integrator, "exponential_midpoint or leapfrog");
}

json override_patches(const Overrides &o, const json &config) {
    json patches = json::array();
    if (o.dt_ps) patches.push_back({{"path", "/simulation/dt_ps"}, {"value", *o.dt_ps}});
    if (o.mesh) patches.push_back({{"path", "/simulation/mesh_elements"}, {"value", *o.mesh}});
    if (!o.integrator.empty()) patches.push_back({{"path", "/simulation/integrator"}, {"value", o.integrator}});
    if (o.levels && config.contains("transmons"))
        for (std::size_t i = 0; i < config["transmons"].size(); ++i)
            patches.push_back({{"path", "/transmons/" + std::to_string(i) + "/levels"}, {"value", *o.levels}});
    return patches;
}

cosim::RunOptions run_options(const Overrides &o, const cosim::Scenario &s, const std::string &out, unsigned threads,
                              bool no_svg) {
    cosim::RunOptions opts;
    if (!out.empty()) opts.out_dir = out;
    opts.threads = threads;
    opts.write_svg = !no_svg;
    if (!o.backend.empty()) opts.backend = cosim::parse_backend(o.backend);
    json config = s.config;
    if (!config.contains("simulation")) config["simulation"] = json::object();
    opts.overrides = override_patches(o, config);
    return opts;
}

void print_scenario(const cosim::ScenarioResult &r) {
    std::printf("scenario %s\n", r.name.c_str());
    for (const auto &run : r.runs) {
        if (run.ok)
            std::printf("  run %-24s ok    %8.1f s  dt = %.4g ps  samples = %zu\n", run.spec.label.c_str(), run.wall_s,
                        run.trajectory.dt_s * 1e12, run.trajectory.samples());
        else
            std::printf("  run %-24s FAIL  %s\n", run.spec.label.c_str(), run.error.c_str());
    }
    for (const auto &c : r.checks)
        std::printf("  check %-16s %s  %s (threshold %g)\n", c.check.type.c_str(), c.passed ? "pass" : "FAIL",
                    c.detail.c_str(), c.check.threshold);
}

cosim::DeviceModel device_from(const std::string &path) {
    const cosim::Config cfg = cosim::load_config_file(path);
    return cosim::build_device(cfg.circuit, cfg.sim);
}

double mhz(double omega) { return omega / cosim::kTwoPi / 1e6; }
double ghz(double omega) { return omega / cosim::kTwoPi / 1e9; }

json matrix_json(const Eigen::MatrixXd &m, double scale) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j) * scale);
        rows.push_back(row);
    }
    return rows;
}

int cmd_spectrum(const std::string &config, bool as_json) {
    const cosim::DeviceModel device = device_from(config);
    json out = json::array();
    for (std::size_t l = 0; l < device.spectra.size(); ++l) {
        const auto &s = device.spectra[l];
        const auto &t = device.circuit.transmons[l];
        const Eigen::MatrixXd n = s.real_charge();
        json tj = {{"id", t.id},
                   {"ej_ghz", t.josephson_energy_hz / 1e9},
                   {"ec_mhz", s.charging_energy_j / cosim::PhysicalConstants::h / 1e6}};
        json levels = json::array();
        for (int j = 0; j < s.level_count(); ++j) {
            json lj = {{"level", j}, {"q_ghz", ghz(s.eigenfrequencies[j])}};
            if (j + 1 < s.level_count()) lj["n_up"] = std::abs(n(j, j + 1));
            levels.push_back(lj);
        }
        tj["levels"] = levels;
        if (s.level_count() >= 3) tj["anharmonicity_mhz"] = mhz(cosim::anharmonicity(s));
        out.push_back(tj);
        if (!as_json) {
            std::printf("transmon %s  E_J/h = %.6f GHz  E_C/h = %.3f MHz", t.id.c_str(), t.josephson_energy_hz / 1e9,
                        s.charging_energy_j / cosim::PhysicalConstants::h / 1e6);
            if (s.level_count() >= 3) std::printf("  anharmonicity = %.3f MHz", mhz(cosim::anharmonicity(s)));
            std::printf("\n  %-6s %-14s %s\n", "level", "q_j (GHz)", "|n_j,j+1|");
            for (int j = 0; j < s.level_count(); ++j) {
                std::printf("  %-6d %-14.6f", j, ghz(s.eigenfrequencies[j]));
                if (j + 1 < s.level_count()) std::printf(" %.6f", std::abs(n(j, j + 1)));
                std::printf("\n");
            }
        }
    }
    if (as_json) std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_jcalc(const std::string &config, bool as_json) {
    const cosim::DeviceModel device = device_from(config);
    cosim::SimConfig sim = device.sim;
    sim.j_route = cosim::JRoute::Impedance;
    const cosim::CouplingTables imp = cosim::compute_couplings(device.circuit, device.spectra, sim);
    sim.j_route = cosim::JRoute::ModeSum;
    const cosim::CouplingTables ms = cosim::compute_couplings(device.circuit, device.spectra, sim);

    json out;
    out["exchange"] = json::array();
    for (std::size_t i = 0; i < imp.exchange.size(); ++i) {
        const auto &a = imp.exchange[i];
        const auto &b = ms.exchange[i];
        const std::string ida = device.circuit.transmons[a.a].id, idb = device.circuit.transmons[a.b].id;
        out["exchange"].push_back({{"a", ida},
                                   {"b", idb},
                                   {"impedance_mhz", matrix_json(a.result.J, 1.0 / cosim::kTwoPi / 1e6)},
                                   {"modesum_mhz", matrix_json(b.result.J, 1.0 / cosim::kTwoPi / 1e6)},
                                   {"mode_pairs", b.result.mode_pairs},
                                   {"modesum_convergence_mhz", mhz(b.result.convergence)}});
        if (!as_json) {
            std::printf("J between %s and %s (MHz)\n", ida.c_str(), idb.c_str());
            for (Eigen::Index r = 0; r < a.result.J.rows(); ++r)
                for (Eigen::Index c = 0; c < a.result.J.cols(); ++c)
                    std::printf("  J_%ld%ld  impedance %10.5f   mode sum (%d pairs) %10.5f\n", static_cast<long>(r),
                                static_cast<long>(c), mhz(a.result.J(r, c)), b.result.mode_pairs,
                                mhz(b.result.J(r, c)));
            std::printf("  mode-sum convergence %.3g MHz\n", mhz(b.result.convergence));
        }
    }
    out["taps"] = json::array();
    for (const auto &tc : imp.taps) {
        const std::string id = device.circuit.transmons[tc.transmon].id;
        out["taps"].push_back({{"transmon", id},
                               {"line", device.circuit.lines[tc.line].id},
                               {"beta", tc.beta},
                               {"g_mhz", matrix_json(tc.g, 1.0 / cosim::kTwoPi / 1e6)},
                               {"chi_mhz", matrix_json(tc.dispersive.chi, 1.0 / cosim::kTwoPi / 1e6)},
                               {"max_abs_B", tc.dispersive.max_abs_B}});
        if (!as_json) {
            std::printf("tap %s on %s  beta = %.6f  max|B| = %.4f\n", id.c_str(), device.circuit.lines[tc.line].id.c_str(),
                        tc.beta, tc.dispersive.max_abs_B);
            for (Eigen::Index j = 0; j < tc.dispersive.chi.rows(); ++j) {
                std::printf("  chi_%ld,k (MHz):", static_cast<long>(j));
                for (Eigen::Index k = 0; k < tc.dispersive.chi.cols(); ++k)
                    std::printf(" %.5f", mhz(tc.dispersive.chi(j, k)));
                std::printf("\n");
            }
        }
    }
    out["qbar"] = json::array();
    for (std::size_t l = 0; l < device.spectra.size(); ++l) {
        const Eigen::VectorXd &q = imp.lamb_shifted[l];
        json list = json::array();
        for (Eigen::Index j = 0; j + 1 < q.size(); ++j) list.push_back(ghz(q[j + 1] - q[j]));
        out["qbar"].push_back({{"transmon", device.circuit.transmons[l].id}, {"qbar_ghz", list}});
        if (!as_json) {
            std::printf("qbar %s (GHz):", device.circuit.transmons[l].id.c_str());
            for (Eigen::Index j = 0; j + 1 < q.size(); ++j) std::printf(" %.6f", ghz(q[j + 1] - q[j]));
            std::printf("\n");
        }
    }
    if (as_json) std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_impedance(const std::string &config, double fmin, double fmax, int points, const std::string &line_id) {
    const cosim::Config cfg = cosim::load_config_file(config);
    const cosim::DeviceModel device = cosim::build_device(cfg.circuit, cfg.sim);
    const cosim::LineSpec *line = nullptr;
    for (const auto &l : device.circuit.lines)
        if (line_id.empty() || l.id == line_id) {
            line = &l;
            break;
        }
    if (!line) throw cosim::ConfigError("lines", "no line '" + line_id + "'");
    if (line->taps.size() < 2) throw cosim::DomainError("impedance needs a line with two taps");
    const auto &ta = line->taps[0], &tb = line->taps[1];
    const cosim::TwoPortNetwork net = cosim::junction_network(*line, device.circuit.transmons[ta.transmon], ta,
                                                              device.circuit.transmons[tb.transmon], tb);
    if (points < 1 || !(fmax >= fmin) || !(fmin > 0)) throw cosim::DomainError("need 0 < fmin <= fmax and points >= 1");
    std::printf("freq_ghz,reZ11,imZ11,reZ12,imZ12,reZ22,imZ22\n");
    for (int i = 0; i < points; ++i) {
        const double f = points == 1 ? fmin : fmin + (fmax - fmin) * i / (points - 1);
        try {
            const Eigen::Matrix2cd z = cosim::network_impedance(net, cosim::kTwoPi * f * 1e9);
            std::printf("%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g\n", f, z(0, 0).real(), z(0, 0).imag(), z(0, 1).real(),
                        z(0, 1).imag(), z(1, 1).real(), z(1, 1).imag());
        } catch (const cosim::SolverError &) {
            std::printf("%.9g,nan,nan,nan,nan,nan,nan\n", f);
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Time-domain co-simulation of transmons on classical transmission lines"};
    app.require_subcommand(1);

    Overrides ov;
    std::string scenario, out, config, line_id;
    unsigned threads = 0;
    bool no_svg = false, as_json = false;
    double fmin = 1.0, fmax = 10.0;
    int points = 901;

    auto *run = app.add_subcommand("run", "Run a scenario");
    run->add_option("--scenario", scenario, "Scenario name or file")->required();
    run->add_option("--out", out, "Output directory");
    run->add_option("--threads", threads, "Worker threads (0 = all cores)");
    run->add_flag("--no-svg", no_svg, "Skip SVG plots");
    add_override_flags(run, ov);

    auto *sweep = app.add_subcommand("sweep", "Run a parameter sweep");
    sweep->add_option("--scenario", scenario, "Scenario name or file")->required();
    sweep->add_option("--out", out, "Output directory");
    sweep->add_option("--threads", threads, "Worker threads (0 = all cores)");
    sweep->add_flag("--no-svg", no_svg, "Skip SVG plots");
    add_override_flags(sweep, ov);

    auto *jcalc = app.add_subcommand("jcalc", "Exchange couplings, dispersive shifts and Lamb-shifted frequencies");
    jcalc->add_option("--config", config, "Configuration file")->required();
    jcalc->add_flag("--json", as_json, "Machine-readable output");

    auto *spectrum = app.add_subcommand("spectrum", "Transmon levels and charge matrix elements");
    spectrum->add_option("--config", config, "Configuration file")->required();
    spectrum->add_flag("--json", as_json, "Machine-readable output");

    auto *impedance = app.add_subcommand("impedance", "Two-port impedance between the first two taps of a line");
    impedance->add_option("--config", config, "Configuration file")->required();
    impedance->add_option("--fmin-ghz", fmin, "Lowest frequency (GHz)");
    impedance->add_option("--fmax-ghz", fmax, "Highest frequency (GHz)");
    impedance->add_option("--points", points, "Number of frequencies");
    impedance->add_option("--line", line_id, "Line id (default: first line)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) {
            const cosim::Scenario s = cosim::load_scenario_file(cosim::find_scenario(scenario));
            const cosim::ScenarioResult r = cosim::run_scenario(s, run_options(ov, s, out, threads, no_svg));
            print_scenario(r);
            return r.passed() ? 0 : 1;
        }
        if (*sweep) {
            const cosim::Scenario s = cosim::load_scenario_file(cosim::find_scenario(scenario));
            const cosim::SweepResult r = cosim::run_sweep(s, run_options(ov, s, out, threads, no_svg));
            for (const auto &p : r.points) print_scenario(p);
            std::printf("%-10s %12s %18s %s\n", "point", "J00 (MHz)", "max BA deviation", "status");
            for (const auto &row : r.rows)
                std::printf("%-10s %12.5f %18.6f %s\n", row.label.c_str(), row.j00_mhz, row.max_ba_deviation,
                            row.ok ? "pass" : "FAIL");
            if (r.trend_ok) std::printf("trend %s: %s\n", s.sweep->trend.c_str(), *r.trend_ok ? "pass" : "FAIL");
            return r.passed() ? 0 : 1;
        }
        if (*jcalc) return cmd_jcalc(config, as_json);
        if (*spectrum) return cmd_spectrum(config, as_json);
        if (*impedance) return cmd_impedance(config, fmin, fmax, points, line_id);
    } catch (const cosim::ConfigError &e) {
        std::cerr << "configuration error";
        if (!e.path().empty()) std::cerr << " at " << e.path();
        std::cerr << ": " << e.what() << "\n";
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

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

// Acceptance suite: one PASS/FAIL line per criterion, followed by the
// end-to-end run of every shipped scenario.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cosim/analysis.h"
#include "cosim/config.h"
#include "cosim/constants.h"
#include "cosim/coupling.h"
#include "cosim/device.h"
#include "cosim/dynamics.h"
#include "cosim/error.h"
#include "cosim/line.h"
#include "cosim/scenario.h"
#include "cosim/transmon.h"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace cosim;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char *format, double a) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), format, a);
    return buf;
}

struct Outcome {
    bool pass = true;
    std::vector<std::string> notes;

    void expect(bool ok, const std::string &note) {
        pass = pass && ok;
        notes.push_back(std::string(ok ? "" : "[x] ") + note);
    }
};

struct Report {
    int failures = 0;
    std::string text;

    void say(const std::string &s) {
        std::fputs(s.c_str(), stdout);
        std::fflush(stdout);
        text += s;
    }

    void line(const std::string &id, const std::string &title, const Outcome &o) {
        say(std::string(o.pass ? "PASS" : "FAIL") + "  " + id + ". " + title + "\n");
        for (const auto &n : o.notes) say("        " + n + "\n");
        if (!o.pass) ++failures;
    }

    // Kept next to the scenario outputs; ctest hides the log of a passing test.
    void save(const fs::path &dir) const {
        fs::create_directories(dir);
        std::ofstream(dir / "report.txt") << text;
    }
};

// Finished results of the scenario library, keyed by scenario name.
struct Library {
    std::map<std::string, ScenarioResult> scenarios;
    std::map<std::string, SweepResult> sweeps;

    const ScenarioResult &scenario(const std::string &name) const {
        const auto it = scenarios.find(name);
        if (it == scenarios.end()) throw DomainError("scenario '" + name + "' was not run");
        return it->second;
    }
    const SweepResult &sweep(const std::string &name) const {
        const auto it = sweeps.find(name);
        if (it == sweeps.end()) throw DomainError("sweep '" + name + "' was not run");
        return it->second;
    }
};

const Trajectory &trajectory(const ScenarioResult &r, const std::string &label) {
    const RunResult *run = r.find(label);
    if (!run) throw DomainError(r.name + ": no run '" + label + "'");
    if (!run->ok) throw DomainError(r.name + "/" + label + " failed: " + run->error);
    return run->trajectory;
}

// max |P_a(level) - P_b(level)| of one transmon on the common time grid.
double max_level_diff(const Trajectory &a, const Trajectory &b, std::size_t transmon, int level) {
    const std::vector<double> pa = a.level_population(transmon, level);
    const std::vector<double> pb = resample(b.t, b.level_population(transmon, level), a.t);
    const double t_end = std::min(a.t.back(), b.t.back());
    double worst = 0;
    for (std::size_t i = 0; i < a.t.size() && a.t[i] <= t_end; ++i) worst = std::max(worst, std::abs(pa[i] - pb[i]));
    return worst;
}

json base_config(const std::string &scenario) {
    return load_scenario_file(find_scenario(scenario)).config;
}

// Criterion 1
Outcome resonator_frequency() {
    Outcome o;
    const Config cfg = load_config(base_config("fig3a"));
    const auto start = Clock::now();
    const LineSystem sys = assemble(cfg.circuit.lines[0], 400);
    const double f1 = fem_mode_frequencies(sys, 1)[0] / kTwoPi;
    const double wall = seconds_since(start);
    o.expect(std::abs(f1 / 6.31e9 - 1) < 1e-3, "FEM fundamental " + fmt("%.6f GHz", f1 / 1e9) + " vs 6.31 GHz (0.1%)");
    o.expect(wall < 1.0, "runtime " + fmt("%.3f s", wall) + " < 1 s");
    return o;
}

// Criterion 2
Outcome exchange_coupling() {
    Outcome o;
    const auto start = Clock::now();
    json doc = base_config("fig3a");
    const Config cfg = load_config(doc);
    const DeviceModel imp = build_device(cfg.circuit, cfg.sim);
    const double j_imp = exchange_between(imp.couplings, 0, 1)(0, 0) / kTwoPi;
    doc["simulation"]["j_route"] = "mode_sum";
    doc["simulation"]["mode_pairs"] = 200;
    const Config cfg_ms = load_config(doc);
    const DeviceModel ms = build_device(cfg_ms.circuit, cfg_ms.sim);
    const double j_ms = exchange_between(ms.couplings, 0, 1)(0, 0) / kTwoPi;
    const double wall = seconds_since(start);
    o.expect(std::abs(j_imp / 1.63e6 - 1) < 0.05, "impedance J00/2pi = " + fmt("%.4f MHz", j_imp / 1e6) + " vs 1.63 MHz (5%)");
    o.expect(std::abs(j_ms / j_imp - 1) < 0.01,
             "mode sum (200 pairs) J00/2pi = " + fmt("%.4f MHz", j_ms / 1e6) + ", relative to impedance " +
                 fmt("%+.2f%%", 100 * (j_ms / j_imp - 1)) + " (1%)");
    o.expect(wall < 5.0, "runtime " + fmt("%.2f s", wall) + " < 5 s");
    return o;
}

// Criterion 3
Outcome backend_equivalence_a(const Library &lib) {
    Outcome o;
    const ScenarioResult &r = lib.scenario("fig3a");
    for (const char *s : {"00", "10"}) {
        const Trajectory &ms = trajectory(r, std::string("ms_noba_") + s);
        const Trajectory &cl = trajectory(r, std::string("closed_") + s);
        const double d = compare(ms, cl).max_pop_diff;
        o.expect(d < 0.02, std::string("|") + s + "> MS no back-action vs closed: max |dP| = " + fmt("%.2e", d) + " (< 0.02)");
    }
    const Comparison c = compare(trajectory(r, "ms_noba_00"), trajectory(r, "ms_noba_10"), 1);
    const double bins = std::abs(c.rabi_freq_a - c.rabi_freq_b) / c.bin_hz;
    o.expect(bins > 3, "target Rabi " + fmt("%.4f MHz", c.rabi_freq_a / 1e6) + " (|00>) vs " +
                           fmt("%.4f MHz", c.rabi_freq_b / 1e6) + " (|10>), separation " + fmt("%.2f bins", bins) +
                           " of " + fmt("%.3f MHz", c.bin_hz / 1e6) + " (> 3)");
    double wall = 0;
    for (const auto &run : r.runs) wall = std::max(wall, run.wall_s);
    o.notes.push_back("slowest trajectory " + fmt("%.1f s", wall));
    return o;
}

// Criterion 4
Outcome backend_equivalence_b(const Library &lib) {
    Outcome o;
    for (const char *name : {"appC_fig6", "appC_fig7", "appC_fig9"}) {
        const ScenarioResult &r = lib.scenario(name);
        std::string row = std::string(name) + ": max |dP0| born vs MS =";
        bool ok = true;
        for (const char *a : {"a1", "a3", "a5", "a7"}) {
            const double d = max_level_diff(trajectory(r, std::string(a) + "_born_0"), trajectory(r, std::string(a) + "_ms_0"), 0, 0);
            ok = ok && d < 0.02;
            row += fmt(" %.4f", d);
        }
        o.expect(ok, row + " (< 0.02, areas pi/2 3pi/2 5pi/2 7pi/2)");
    }
    return o;
}

// Criterion 5
Outcome crosstalk_trend(const Library &lib) {
    Outcome o;
    const SweepResult &s = lib.sweep("fig6");
    std::string row = "max BA-vs-noBA deviation over C_R:";
    bool increasing = s.rows.size() == 3;
    for (std::size_t i = 0; i < s.rows.size(); ++i) {
        row += " " + s.rows[i].values[0].dump() + " fF -> " + fmt("%.4f", s.rows[i].max_ba_deviation);
        if (!s.rows[i].ok) increasing = false;
        if (i > 0 && !(s.rows[i].max_ba_deviation > s.rows[i - 1].max_ba_deviation)) increasing = false;
    }
    o.expect(increasing, row + " (strictly increasing)");
    return o;
}

// Criterion 6
Outcome fidelity_trend(const Library &lib) {
    Outcome o;
    const SweepResult &s = lib.sweep("appC_fig8");
    std::vector<std::vector<double>> table;
    for (std::size_t p = 0; p < s.points.size(); ++p) {
        std::vector<double> inf;
        std::string row = "point " + s.rows[p].label + " " + s.rows[p].values[0].dump() + " fF / " +
                          s.rows[p].values[1].dump() + " GHz: 1-F =";
        bool monotone = true;
        for (const char *a : {"a1", "a3", "a5", "a7"}) {
            const std::string x(a);
            inf.push_back(run_infidelity({x + "_noba_0", x + "_noba_1", x + "_ms_0", x + "_ms_1"}, s.points[p].runs));
            row += fmt(" %.3e", inf.back());
            if (inf.size() > 1 && inf.back() < inf[inf.size() - 2]) monotone = false;
        }
        o.expect(monotone, row + " (non-decreasing)");
        table.push_back(inf);
    }
    // Points are ordered (6 fF, 4.6 GHz), (8 fF, 4.6 GHz), (6 fF, 4.7 GHz).
    o.expect(table.size() >= 2 && table[1][3] > table[0][3],
             "8 fF vs 6 fF at 7pi/2: " + fmt("%.3e", table.at(1)[3]) + " > " + fmt("%.3e", table.at(0)[3]));
    return o;
}

// Criterion 7
Outcome conservation(const Library &lib) {
    Outcome o;
    double norm = 0, trace = 0;
    std::size_t state_runs = 0, density_runs = 0;
    auto visit = [&](const ScenarioResult &r) {
        for (const auto &run : r.runs) {
            if (!run.ok) continue;
            if (run.spec.backend == Backend::BornOpenSystem) {
                trace = std::max(trace, run.trajectory.max_trace_drift);
                ++density_runs;
            } else {
                norm = std::max(norm, run.trajectory.max_norm_drift);
                ++state_runs;
            }
        }
    };
    for (const auto &[name, r] : lib.scenarios) visit(r);
    for (const auto &[name, s] : lib.sweeps)
        for (const auto &p : s.points) visit(p);
    o.expect(norm < 1e-6, "max state norm drift " + fmt("%.2e", norm) + " over " + std::to_string(state_runs) + " runs (< 1e-6)");
    o.expect(trace < 1e-8,
             "max density trace drift " + fmt("%.2e", trace) + " over " + std::to_string(density_runs) + " runs (< 1e-8)");

    const Config cfg = load_config(base_config("fig3a"));
    const LineSystem sys = assemble(cfg.circuit.lines[0], 400);
    const double dt = 0.5 * sys.cfl_limit();
    LineState s = LineState::quiescent(sys, dt);
    for (Eigen::Index i = 0; i < sys.node_count(); ++i) {
        const double x = sys.nodes[i] / sys.spec.length_m;
        s.previous[i] = 1e-15 * (std::cos(std::numbers::pi * x) + 0.3 * std::cos(3 * std::numbers::pi * x));
    }
    s.current = s.previous;
    const Eigen::VectorXd load = Eigen::VectorXd::Zero(sys.node_count());
    step(sys, s, load, 0.5 * dt);
    const double e0 = discrete_energy(sys, s);
    double worst = 0;
    for (int m = 1; m <= 100000; ++m) {
        step(sys, s, load, (m + 0.5) * dt);
        if (m % 500 == 0) worst = std::max(worst, std::abs(discrete_energy(sys, s) - e0) / e0);
    }
    o.expect(worst < 1e-6, "FEM energy drift over 1e5 undriven steps " + fmt("%.2e", worst) + " (< 1e-6)");
    return o;
}

// J00 of the fig3a device with both coupling capacitors set to `coupling_ff`,
// keeping the transmon spectra of the shipped device.
double j00_with_coupling(const DeviceModel &d, double coupling_ff) {
    LineSpec line = d.circuit.lines[0];
    for (auto &tap : line.taps) tap.coupling_capacitance_f = coupling_ff * 1e-15;
    return j_impedance(d.spectra[0], d.spectra[1],
                       junction_network(line, d.circuit.transmons[0], line.taps[0], d.circuit.transmons[1], line.taps[1]))
        .J(0, 0);
}

// Criterion 8
Outcome oracles() {
    Outcome o;
    TransmonSpec t;
    t.id = "q";
    t.total_capacitance_f = 67.95e-15;
    t.josephson_energy_hz = 12e9;
    t.level_count = 6;
    const TransmonSpectrum s = diagonalize(t);
    double parity = 0;
    for (int j = 0; j + 2 < s.level_count(); ++j) parity = std::max(parity, std::abs(s.charge_elements(j, j + 2)));
    o.expect(parity < 1e-12, "parity: max |n_{j,j+2}| = " + fmt("%.1e", parity) + " (< 1e-12)");

    const double ec = charging_energy_j(t.total_capacitance_f) / PhysicalConstants::h;
    t.josephson_energy_hz = 50 * ec;
    const double q01 = diagonalize(t).transition(0) / kTwoPi;
    const double approx = std::sqrt(8 * t.josephson_energy_hz * ec) - ec;
    o.expect(std::abs(q01 / approx - 1) < 0.02,
             "E_J/E_C = 50: q01 = " + fmt("%.4f GHz", q01 / 1e9) + " vs sqrt(8 E_J E_C) - E_C = " +
                 fmt("%.4f GHz", approx / 1e9) + " (2%)");

    const json rabi = json::parse(R"({
      "transmons": [{"id": "q", "c_sigma_ff": 67.95, "levels": 2, "target": {"q01_ghz": 4.6}}],
      "drives": [{"id": "d", "transmon": "q", "coupling_ff": 0.1, "carrier_transmon": "q",
                  "pulse_area_pi": 1, "offset_sigmas": 5,
                  "pulse": {"type": "modulated_gaussian", "vmag_uv": 40}}],
      "simulation": {"t_end_sigmas": 10, "backend": "closed", "sample_stride": 100}
    })");
    const Config rc = load_config(rabi);
    const Trajectory tr = evolve(build_device(rc.circuit, rc.sim));
    const double p1 = tr.level_population(0, 1).back();
    o.expect(p1 >= 0.999, "uncoupled resonant pi pulse: P1 = " + fmt("%.6f", p1) + " (>= 0.999)");

    const Config dc = load_config(base_config("fig3a"));
    const DeviceModel device = build_device(dc.circuit, dc.sim);
    const double j4 = j00_with_coupling(device, 4);
    for (double lambda : {0.5, 1.5}) {
        const double ratio = j00_with_coupling(device, 4 * lambda) / j4 / (lambda * lambda);
        o.expect(std::abs(ratio - 1) < 0.01,
                 "J(lambda C_R) / (lambda^2 J) at lambda = " + fmt("%.2f", lambda) + ": " + fmt("%.5f", ratio) + " (1%)");
    }
    return o;
}

template <typename F>
Outcome guarded(F &&f) {
    try {
        return f();
    } catch (const std::exception &e) {
        Outcome o;
        o.expect(false, std::string("error: ") + e.what());
        return o;
    }
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"cosim acceptance suite"};
    bool strict = false;
    std::string out = "acceptance_out";
    unsigned threads = 0;
    bool skip_library = false;
    app.add_flag("--strict", strict, "Exit non-zero when any criterion fails");
    app.add_option("--out", out, "Directory for scenario outputs");
    app.add_option("--threads", threads, "Worker threads (0 = all cores)");
    app.add_flag("--skip-library", skip_library, "Only the criteria that need no scenario runs");
    CLI11_PARSE(app, argc, argv);

    Report report;
    report.line("1", "resonator frequency", guarded(resonator_frequency));
    report.line("2", "exchange coupling", guarded(exchange_coupling));
    if (skip_library) {
        report.line("8", "oracle suite", guarded(oracles));
        report.say("summary: " + std::to_string(report.failures) + " criterion(s) failed (scenario library skipped)\n");
        report.save(out);
        return strict && report.failures ? 1 : 0;
    }

    Library lib;
    Outcome library;
    std::vector<fs::path> files;
    const fs::path dir = find_scenario("fig3a").parent_path();
    for (const auto &e : fs::directory_iterator(dir))
        if (e.path().extension() == ".json") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    RunOptions opt;
    opt.out_dir = out;
    opt.threads = threads;
    for (const auto &file : files) {
        const auto start = Clock::now();
        try {
            const Scenario sc = load_scenario_file(file);
            if (sc.sweep) {
                SweepResult r = run_sweep(sc, opt);
                std::size_t bad = 0, runs = 0;
                for (const auto &p : r.points)
                    for (const auto &run : p.runs) {
                        ++runs;
                        if (!run.ok) ++bad;
                    }
                library.expect(bad == 0, sc.name + ": sweep of " + std::to_string(r.points.size()) + " points, " +
                                             std::to_string(runs - bad) + "/" + std::to_string(runs) + " runs ok, checks " +
                                             (r.passed() ? "pass" : "fail") + fmt(", %.0f s", seconds_since(start)));
                lib.sweeps.emplace(sc.name, std::move(r));
            } else {
                ScenarioResult r = run_scenario(sc, opt);
                std::size_t bad = 0, failed_checks = 0;
                for (const auto &run : r.runs)
                    if (!run.ok) ++bad;
                for (const auto &c : r.checks)
                    if (!c.passed) ++failed_checks;
                library.expect(bad == 0, sc.name + ": " + std::to_string(r.runs.size() - bad) + "/" +
                                             std::to_string(r.runs.size()) + " runs ok, " +
                                             std::to_string(r.checks.size() - failed_checks) + "/" +
                                             std::to_string(r.checks.size()) + " checks pass" +
                                             fmt(", %.0f s", seconds_since(start)));
                lib.scenarios.emplace(sc.name, std::move(r));
            }
        } catch (const std::exception &e) {
            library.expect(false, file.stem().string() + ": " + e.what());
        }
        std::fflush(stdout);
    }

    report.line("3", "backend equivalence A (MS without back-action vs closed system)", guarded([&] { return backend_equivalence_a(lib); }));
    report.line("4", "backend equivalence B (Born vs MS)", guarded([&] { return backend_equivalence_b(lib); }));
    report.line("5", "crosstalk trend over C_R", guarded([&] { return crosstalk_trend(lib); }));
    report.line("6", "fidelity trend over pulse area", guarded([&] { return fidelity_trend(lib); }));
    report.line("7", "conservation suite", guarded([&] { return conservation(lib); }));
    report.line("8", "oracle suite", guarded(oracles));
    report.line("L", "scenario library runs end to end", library);
    report.say("summary: " + std::to_string(report.failures) + " of 9 lines failed\n");
    report.save(out);
    return strict && report.failures ? 1 : 0;
}

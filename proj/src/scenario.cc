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

#include "cosim/scenario.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "cosim/constants.h"
#include "cosim/device.h"
#include "cosim/error.h"
#include "cosim/pulse.h"

#ifndef COSIM_SCENARIO_DIR
#define COSIM_SCENARIO_DIR ""
#endif

namespace cosim {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const char *const kUnitSuffixes[] = {"_h_per_m", "_uh_per_m", "_nh_per_m", "_f_per_m", "_pf_per_m", "_ghz", "_mhz",
                                     "_khz",     "_hz",       "_mm",       "_um",      "_m",        "_pf",  "_ff",
                                     "_f",       "_ms",       "_us",       "_ns",      "_ps",       "_s",   "_mv",
                                     "_uv",      "_v",        "_ohm",      "_rad",     "_pi"};

// "dt_ps" -> "dt"; empty when the key carries no unit suffix.
std::string unit_stem(const std::string &key) {
    for (const char *suffix : kUnitSuffixes) {
        const std::string s(suffix);
        if (key.size() > s.size() && key.compare(key.size() - s.size(), s.size(), s) == 0)
            return key.substr(0, key.size() - s.size());
    }
    return "";
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
    return buf;
}

template <typename F>
void parallel_for(std::size_t count, unsigned threads, F &&body) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) body(i);
        });
    for (auto &t : pool) t.join();
}

json device_summary(const DeviceModel &device) {
    json out;
    out["transmons"] = json::array();
    for (std::size_t l = 0; l < device.circuit.transmons.size(); ++l) {
        const TransmonSpec &t = device.circuit.transmons[l];
        const TransmonSpectrum &s = device.spectra[l];
        const Eigen::VectorXd qbar = simulation_frequencies(device, l);
        json q = json::array(), qb = json::array();
        for (int j = 0; j + 1 < s.level_count(); ++j) {
            q.push_back(s.transition(j) / kTwoPi / 1e9);
            qb.push_back((qbar[j + 1] - qbar[j]) / kTwoPi / 1e9);
        }
        out["transmons"].push_back({{"id", t.id},
                                    {"ej_ghz", t.josephson_energy_hz / 1e9},
                                    {"ec_mhz", s.charging_energy_j / PhysicalConstants::h / 1e6},
                                    {"levels", t.level_count},
                                    {"q_ghz", q},
                                    {"qbar_ghz", qb}});
    }
    out["exchange"] = json::array();
    for (const ExchangeBlock &b : device.couplings.exchange) {
        json rows = json::array();
        for (Eigen::Index i = 0; i < b.result.J.rows(); ++i) {
            json row = json::array();
            for (Eigen::Index j = 0; j < b.result.J.cols(); ++j) row.push_back(b.result.J(i, j) / kTwoPi / 1e6);
            rows.push_back(row);
        }
        out["exchange"].push_back({{"a", device.circuit.transmons[b.a].id},
                                   {"b", device.circuit.transmons[b.b].id},
                                   {"line", device.circuit.lines[b.line].id},
                                   {"route", to_string(b.result.route)},
                                   {"j_mhz", rows},
                                   {"j00_mhz", b.result.J.size() ? b.result.J(0, 0) / kTwoPi / 1e6 : 0.0}});
    }
    out["drives"] = json::array();
    for (const DirectDrive &d : device.circuit.direct_drives) {
        json j = {{"id", d.id}, {"carrier_ghz", pulse_carrier_hz(d.pulse) / 1e9}};
        if (const auto *g = std::get_if<ModulatedGaussian>(&d.pulse)) {
            j["sigma_ns"] = g->sigma_s * 1e9;
            j["offset_ns"] = g->offset_s * 1e9;
        }
        out["drives"].push_back(j);
    }
    out["t_end_ns"] = device.sim.t_end_s * 1e9;
    out["mesh_elements"] = device.sim.mesh_elements;
    out["fock_truncation"] = device.sim.fock_truncation;
    out["lamb_modes"] = device.sim.lamb_modes;
    out["mode_pairs"] = device.sim.mode_pairs;
    out["integrator"] = to_string(device.sim.integrator);
    return out;
}

double first_carrier_hz(const json &device) {
    if (device.contains("drives") && !device["drives"].empty()) return device["drives"][0]["carrier_ghz"].get<double>() * 1e9;
    throw DomainError("envelope check needs a drive carrier");
}

double j00_mhz(const json &device) {
    if (device.contains("exchange") && !device["exchange"].empty()) return device["exchange"][0]["j00_mhz"].get<double>();
    return 0.0;
}

const RunResult &require_run(const std::vector<RunResult> &runs, const std::string &label) {
    for (const auto &r : runs)
        if (r.spec.label == label) {
            if (!r.ok) throw DomainError("run '" + label + "' failed: " + r.error);
            return r;
        }
    throw DomainError("check references unknown run '" + label + "'");
}

// 1 - F of the actual runs (second half of `labels`) against the ideal ones.
double infidelity(const std::vector<std::string> &labels, const std::vector<RunResult> &runs) {
    if (labels.size() % 2 != 0 || labels.empty())
        throw DomainError("fidelity check needs ideal runs followed by as many actual runs");
    const std::size_t half = labels.size() / 2;
    std::vector<Eigen::VectorXcd> ideal, actual;
    std::vector<int> subspace;
    for (std::size_t i = 0; i < half; ++i) {
        const RunResult &ri = require_run(runs, labels[i]);
        const RunResult &ra = require_run(runs, labels[half + i]);
        if (ri.trajectory.final_state.size() == 0 || ra.trajectory.final_state.size() == 0)
            throw DomainError("fidelity needs state-vector runs");
        if (ri.trajectory.labels != ra.trajectory.labels) throw DomainError("fidelity runs use different configs");
        ideal.push_back(ri.trajectory.final_state);
        actual.push_back(ra.trajectory.final_state);
        const auto &basis = ri.trajectory.labels;
        const std::string start = ri.spec.initial_state.empty() ? basis.front() : ri.spec.initial_state;
        subspace.push_back(static_cast<int>(std::find(basis.begin(), basis.end(), start) - basis.begin()));
    }
    std::sort(subspace.begin(), subspace.end());
    return 1.0 - fidelity(ideal, actual, subspace);
}

CheckResult evaluate(const Check &check, const std::vector<RunResult> &runs) {
    CheckResult out;
    out.check = check;
    try {
        if (check.type == "infidelity_trend") {
            if (check.runs.size() % 4 != 0 || check.runs.size() < 8)
                throw DomainError("infidelity_trend needs at least two groups of four runs");
            std::vector<double> values;
            for (std::size_t g = 0; g < check.runs.size(); g += 4)
                values.push_back(infidelity({check.runs.begin() + g, check.runs.begin() + g + 4}, runs));
            out.value = 0;
            for (std::size_t i = 1; i < values.size(); ++i) out.value = std::max(out.value, values[i - 1] - values[i]);
            out.passed = out.value <= check.threshold;
            out.detail = "1-F =";
            for (double v : values) out.detail += " " + format_double(v);
            return out;
        }
        if (check.type == "fidelity") {
            out.value = infidelity(check.runs, runs);
            out.passed = out.value < check.threshold;
            out.detail = "1-F = " + format_double(out.value);
            return out;
        }
        const RunResult &a = require_run(runs, check.a);
        const RunResult &b = require_run(runs, check.b);
        if (check.type == "max_pop_diff") {
            out.value = compare(a.trajectory, b.trajectory, check.transmon).max_pop_diff;
            out.passed = out.value < check.threshold;
            out.detail = "max |dP| = " + format_double(out.value);
        } else if (check.type == "rabi_separation" || check.type == "rabi_match") {
            const Comparison c = compare(a.trajectory, b.trajectory, check.transmon);
            if (!(c.bin_hz > 0)) throw DomainError("record too short for a Rabi frequency");
            out.value = std::abs(c.rabi_freq_a - c.rabi_freq_b) / c.bin_hz;
            out.passed = check.type == "rabi_separation" ? out.value > check.threshold : out.value <= check.threshold;
            out.detail = "f_a = " + fixed(c.rabi_freq_a / 1e6, 4) + " MHz, f_b = " + fixed(c.rabi_freq_b / 1e6, 4) +
                         " MHz, bin = " + fixed(c.bin_hz / 1e6, 4) + " MHz";
        } else if (check.type == "envelope_diff") {
            Trajectory ta = a.trajectory, tb = b.trajectory;
            if (check.probe >= ta.probe.size() || check.probe >= tb.probe.size())
                throw DomainError("envelope check references a missing probe");
            std::swap(ta.probe[0], ta.probe[check.probe]);
            std::swap(tb.probe[0], tb.probe[check.probe]);
            const Comparison c = compare(ta, tb, check.transmon, first_carrier_hz(a.device));
            out.value = c.rel_l2_envelope_diff.value_or(0.0);
            out.passed = out.value > check.threshold;
            out.detail = "relative L2 envelope difference = " + format_double(out.value);
        } else {
            throw DomainError("unknown check type '" + check.type + "'");
        }
    } catch (const Error &e) {
        out.passed = false;
        out.detail = e.what();
    }
    return out;
}

json check_json(const CheckResult &c) {
    return {{"type", c.check.type}, {"a", c.check.a},         {"b", c.check.b},
            {"runs", c.check.runs}, {"threshold", c.check.threshold}, {"value", c.value},
            {"passed", c.passed},   {"detail", c.detail}};
}

void write_text(const fs::path &path, const std::string &text) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path.string());
    out << text;
}

void write_run_outputs(const RunResult &run, const fs::path &dir) {
    fs::create_directories(dir);
    json side = {{"label", run.spec.label},
                 {"backend", to_string(run.spec.backend)},
                 {"initial_state", run.spec.initial_state},
                 {"ok", run.ok},
                 {"wall_s", run.wall_s}};
    if (!run.ok) side["error"] = run.error;
    if (run.ok) {
        write_trajectory_csv(run.trajectory, dir / (run.spec.label + ".csv"));
        side["config_hash"] = run.trajectory.config_hash;
        side["dt_ps"] = run.trajectory.dt_s * 1e12;
        side["samples"] = run.trajectory.samples();
        side["max_norm_drift"] = run.trajectory.max_norm_drift;
        side["max_trace_drift"] = run.trajectory.max_trace_drift;
        side["warnings"] = run.trajectory.warnings;
        side["device"] = run.device;
    }
    write_text(dir / (run.spec.label + ".json"), side.dump(2) + "\n");
}

std::vector<RunSpec> selected_runs(const Scenario &scenario, const RunOptions &options) {
    std::vector<RunSpec> runs;
    for (const auto &r : scenario.runs)
        if (!options.backend || r.backend == *options.backend) runs.push_back(r);
    return runs;
}

std::vector<CheckResult> evaluate_checks(const Scenario &scenario, const std::vector<RunResult> &runs,
                                         const RunOptions &options) {
    std::vector<CheckResult> out;
    for (const Check &c : scenario.checks) {
        if (options.backend) {
            // Checks that need a filtered-out run are skipped.
            std::vector<std::string> needed = c.runs;
            if (!c.a.empty()) needed.push_back(c.a);
            if (!c.b.empty()) needed.push_back(c.b);
            const bool all = std::all_of(needed.begin(), needed.end(), [&](const std::string &label) {
                return std::any_of(runs.begin(), runs.end(), [&](const RunResult &r) { return r.spec.label == label; });
            });
            if (!all) continue;
        }
        out.push_back(evaluate(c, runs));
    }
    return out;
}

void write_scenario_outputs(const Scenario &scenario, const ScenarioResult &result, const RunOptions &options) {
    if (!options.out_dir) return;
    const fs::path dir = *options.out_dir / scenario.name;
    fs::create_directories(dir);
    for (const auto &r : result.runs) write_run_outputs(r, dir);
    json metrics = {{"scenario", scenario.name}, {"passed", result.passed()}};
    metrics["checks"] = json::array();
    for (const auto &c : result.checks) metrics["checks"].push_back(check_json(c));
    metrics["runs"] = json::array();
    json failed = json::array();
    for (const auto &r : result.runs) {
        metrics["runs"].push_back({{"label", r.spec.label}, {"ok", r.ok}, {"wall_s", r.wall_s}});
        if (!r.ok) failed.push_back({{"label", r.spec.label}, {"error", r.error}});
    }
    metrics["failed"] = failed;
    write_text(dir / "metrics.json", metrics.dump(2) + "\n");
    if (options.write_svg) {
        std::vector<const Trajectory *> traj;
        std::vector<std::string> names;
        for (const auto &r : result.runs)
            if (r.ok) {
                traj.push_back(&r.trajectory);
                names.push_back(r.spec.label);
            }
        if (!traj.empty()) {
            try {
                write_population_svg(traj, names, dir / "populations.svg",
                                     scenario.name + ": excited population of the last transmon");
            } catch (const Error &) {
            }
        }
    }
}

}  // namespace

double run_infidelity(const std::vector<std::string> &labels, const std::vector<RunResult> &runs) {
    return infidelity(labels, runs);
}

bool ScenarioResult::passed() const {
    for (const auto &r : runs)
        if (!r.ok) return false;
    for (const auto &c : checks)
        if (!c.passed) return false;
    return true;
}

const RunResult *ScenarioResult::find(const std::string &label) const {
    for (const auto &r : runs)
        if (r.spec.label == label) return &r;
    return nullptr;
}

bool SweepResult::passed() const {
    if (trend_ok && !*trend_ok) return false;
    for (const auto &r : rows)
        if (!r.ok) return false;
    return !rows.empty();
}

Scenario parse_scenario(const json &doc, const std::string &fallback_name) {
    if (!doc.is_object()) throw ConfigError("", "scenario document must be an object");
    Scenario s;
    s.name = doc.value("name", fallback_name);
    s.description = doc.value("description", "");
    s.config = doc;
    s.config.erase("scenario");
    s.config.erase("sweep");
    s.config.erase("name");
    s.config.erase("description");

    // Validates the base configuration and resolves transmon ids.
    const Config base = load_config(s.config);

    const json block = doc.value("scenario", json::object());
    if (!block.is_object()) throw ConfigError("scenario", "expected an object");
    for (auto it = block.begin(); it != block.end(); ++it)
        if (it.key() != "runs" && it.key() != "checks" && it.key() != "rabi_transmon" && it.key()[0] != '$')
            throw ConfigError("scenario." + it.key(), "unknown field");
    if (block.contains("rabi_transmon")) {
        const std::string id = block["rabi_transmon"].get<std::string>();
        bool found = false;
        for (std::size_t i = 0; i < base.circuit.transmons.size(); ++i)
            if (base.circuit.transmons[i].id == id) {
                s.rabi_transmon = i;
                found = true;
            }
        if (!found) throw ConfigError("scenario.rabi_transmon", "unresolved reference to transmon '" + id + "'");
    }
    std::vector<int> dims;
    for (const auto &t : base.circuit.transmons) dims.push_back(t.level_count);

    const json runs = block.value("runs", json::array());
    for (std::size_t i = 0; i < runs.size(); ++i) {
        const std::string path = "scenario.runs[" + std::to_string(i) + "]";
        const json &r = runs[i];
        RunSpec spec;
        try {
            spec.label = r.at("label").get<std::string>();
            spec.backend = parse_backend(r.value("backend", std::string("ms")));
            spec.initial_state = r.value("initial_state", std::string());
            spec.patches = r.value("patches", json::array());
        } catch (const json::exception &e) {
            throw ConfigError(path, e.what());
        } catch (const Error &e) {
            throw ConfigError(path + ".backend", e.what());
        }
        if (!spec.initial_state.empty() && spec.patches.empty()) {
            try {
                basis_state(dims, spec.initial_state);
            } catch (const Error &e) {
                throw ConfigError(path + ".initial_state", e.what());
            }
        }
        for (const auto &other : s.runs)
            if (other.label == spec.label) throw ConfigError(path + ".label", "duplicate run label '" + spec.label + "'");
        s.runs.push_back(spec);
    }
    const json checks = block.value("checks", json::array());
    for (std::size_t i = 0; i < checks.size(); ++i) {
        const json &c = checks[i];
        Check check;
        try {
            check.type = c.at("type").get<std::string>();
            check.a = c.value("a", std::string());
            check.b = c.value("b", std::string());
            check.runs = c.value("runs", std::vector<std::string>{});
            check.transmon = c.contains("transmon") ? c["transmon"].get<std::size_t>() : s.rabi_transmon;
            check.probe = c.value("probe", std::size_t{0});
            check.threshold = c.at("threshold").get<double>();
        } catch (const json::exception &e) {
            throw ConfigError("scenario.checks[" + std::to_string(i) + "]", e.what());
        }
        const std::string path = "scenario.checks[" + std::to_string(i) + "]";
        const bool pairwise = check.type == "max_pop_diff" || check.type == "rabi_separation" ||
                              check.type == "rabi_match" || check.type == "envelope_diff";
        std::vector<std::string> refs = check.runs;
        if (pairwise) {
            refs = {check.a, check.b};
        } else if (check.type == "fidelity") {
            if (refs.size() != 4) throw ConfigError(path + ".runs", "fidelity needs four runs");
        } else if (check.type == "infidelity_trend") {
            if (refs.size() < 8 || refs.size() % 4 != 0)
                throw ConfigError(path + ".runs", "infidelity_trend needs at least two groups of four runs");
        } else {
            throw ConfigError(path + ".type", "unknown check type '" + check.type + "'");
        }
        for (const auto &label : refs)
            if (std::none_of(s.runs.begin(), s.runs.end(), [&](const RunSpec &r) { return r.label == label; }))
                throw ConfigError(path, "unresolved reference to run '" + label + "'");
        if (check.transmon >= base.circuit.transmons.size())
            throw ConfigError(path + ".transmon", "transmon index out of range");
        s.checks.push_back(check);
    }
    if (doc.contains("sweep")) {
        const json &w = doc["sweep"];
        SweepSpec sweep;
        try {
            sweep.parameters = w.at("parameters").get<std::vector<std::string>>();
            for (const auto &p : w.at("points")) {
                if (!p.is_array() || p.size() != sweep.parameters.size())
                    throw ConfigError("sweep.points", "each point needs one value per parameter");
                sweep.points.push_back(p);
            }
            sweep.labels = w.value("labels", std::vector<std::string>{});
            sweep.trend = w.value("trend", std::string());
        } catch (const json::exception &e) {
            throw ConfigError("sweep", e.what());
        }
        if (sweep.points.empty()) throw ConfigError("sweep.points", "sweep needs at least one point");
        if (!sweep.trend.empty() && sweep.trend != "max_ba_deviation_increasing")
            throw ConfigError("sweep.trend", "unknown trend '" + sweep.trend + "'");
        if (!sweep.labels.empty() && sweep.labels.size() != sweep.points.size())
            throw ConfigError("sweep.labels", "one label per point");
        for (std::size_t i = sweep.labels.size(); i < sweep.points.size(); ++i)
            sweep.labels.push_back("p" + std::to_string(i));
        s.sweep = sweep;
        for (std::size_t i = 0; i < sweep.points.size(); ++i) load_config(sweep_point(s, i).config);
    }
    return s;
}

Scenario load_scenario_file(const fs::path &path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("", "cannot open scenario " + path.string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error &e) {
        throw ConfigError("", path.string() + ": malformed JSON: " + e.what());
    }
    return parse_scenario(doc, path.stem().string());
}

fs::path find_scenario(const std::string &name) {
    if (fs::is_regular_file(name)) return name;
    std::vector<fs::path> dirs;
    if (const char *env = std::getenv("COSIM_SCENARIO_DIR")) dirs.emplace_back(env);
    dirs.emplace_back("scenarios");
    if (std::string(COSIM_SCENARIO_DIR).size()) dirs.emplace_back(COSIM_SCENARIO_DIR);
    for (const auto &d : dirs) {
        const fs::path p = d / (name + ".json");
        if (fs::is_regular_file(p)) return p;
    }
    throw ConfigError("", "no scenario named '" + name + "'");
}

json apply_patches(json doc, const json &patches) {
    if (patches.is_null()) return doc;
    if (!patches.is_array()) throw ConfigError("patches", "expected an array");
    for (const auto &patch : patches) {
        const std::string path = patch.at("path").get<std::string>();
        json::json_pointer ptr;
        try {
            ptr = json::json_pointer(path);
        } catch (const json::exception &e) {
            throw ConfigError(path, e.what());
        }
        const json::json_pointer parent = ptr.parent_pointer();
        if (path.empty() || !doc.contains(parent) || (!doc[parent].is_object() && !doc[parent].is_array()))
            throw ConfigError(path, "patch path does not resolve");
        json &container = doc[parent];
        if (container.is_array()) {
            if (!doc.contains(ptr)) throw ConfigError(path, "patch path does not resolve");
            doc[ptr] = patch.at("value");
            continue;
        }
        const std::string key = ptr.back();
        const std::string stem = unit_stem(key);
        if (!stem.empty()) {
            // A quantity replaces its value in whatever unit it was written.
            for (auto it = container.begin(); it != container.end();) {
                if (it.key() != key && unit_stem(it.key()) == stem)
                    it = container.erase(it);
                else
                    ++it;
            }
        }
        container[key] = patch.at("value");
    }
    return doc;
}

RunResult run_one(const json &config, const RunSpec &run, const json &overrides) {
    RunResult out;
    out.spec = run;
    const auto start = std::chrono::steady_clock::now();
    try {
        json doc = apply_patches(config, run.patches);
        doc = apply_patches(doc, overrides);
        if (!doc.contains("simulation")) doc["simulation"] = json::object();
        doc["simulation"]["backend"] = to_string(run.backend);
        if (!run.initial_state.empty()) doc["simulation"]["initial_state"] = run.initial_state;
        const Config cfg = load_config(doc);
        const DeviceModel device = build_device(cfg.circuit, cfg.sim);
        out.device = device_summary(device);
        out.trajectory = evolve(device);
        out.trajectory.config_hash = config_hash(cfg);
        out.ok = true;
    } catch (const std::exception &e) {
        out.ok = false;
        out.error = e.what();
    }
    out.wall_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
}

ScenarioResult run_scenario(const Scenario &scenario, const RunOptions &options) {
    ScenarioResult result;
    result.name = scenario.name;
    const std::vector<RunSpec> runs = selected_runs(scenario, options);
    result.runs.resize(runs.size());
    parallel_for(runs.size(), options.threads,
                 [&](std::size_t i) { result.runs[i] = run_one(scenario.config, runs[i], options.overrides); });
    result.checks = evaluate_checks(scenario, result.runs, options);
    write_scenario_outputs(scenario, result, options);
    return result;
}

Scenario sweep_point(const Scenario &scenario, std::size_t index) {
    if (!scenario.sweep) throw DomainError("scenario has no sweep");
    const SweepSpec &sweep = *scenario.sweep;
    if (index >= sweep.points.size()) throw DomainError("sweep point out of range");
    Scenario out = scenario;
    out.sweep.reset();
    out.name = scenario.name + "_" + sweep.labels[index];
    json patches = json::array();
    for (std::size_t p = 0; p < sweep.parameters.size(); ++p)
        patches.push_back({{"path", sweep.parameters[p]}, {"value", sweep.points[index][p]}});
    out.config = apply_patches(scenario.config, patches);
    return out;
}

SweepResult run_sweep(const Scenario &scenario, const RunOptions &options) {
    SweepResult result;
    result.name = scenario.name;
    std::vector<Scenario> points;
    if (scenario.sweep) {
        for (std::size_t i = 0; i < scenario.sweep->points.size(); ++i) points.push_back(sweep_point(scenario, i));
    } else {
        points.push_back(scenario);
    }

    // Every (point, run) pair is an independent task.
    std::vector<std::pair<std::size_t, RunSpec>> tasks;
    std::vector<std::vector<RunSpec>> per_point;
    for (std::size_t p = 0; p < points.size(); ++p) {
        per_point.push_back(selected_runs(points[p], options));
        for (const auto &r : per_point.back()) tasks.emplace_back(p, r);
    }
    std::vector<RunResult> done(tasks.size());
    parallel_for(tasks.size(), options.threads, [&](std::size_t i) {
        done[i] = run_one(points[tasks[i].first].config, tasks[i].second, options.overrides);
    });

    RunOptions point_options = options;
    if (options.out_dir && scenario.sweep) point_options.out_dir = *options.out_dir / scenario.name;
    std::size_t cursor = 0;
    for (std::size_t p = 0; p < points.size(); ++p) {
        ScenarioResult sr;
        sr.name = points[p].name;
        for (std::size_t r = 0; r < per_point[p].size(); ++r) sr.runs.push_back(std::move(done[cursor++]));
        sr.checks = evaluate_checks(points[p], sr.runs, options);
        write_scenario_outputs(points[p], sr, point_options);

        SweepRow row;
        row.label = scenario.sweep ? scenario.sweep->labels[p] : scenario.name;
        if (scenario.sweep) row.values = scenario.sweep->points[p];
        for (const auto &r : sr.runs) {
            if (!r.ok) continue;
            if (row.j00_mhz == 0.0) row.j00_mhz = j00_mhz(r.device);
            try {
                const auto pop = r.trajectory.level_population(points[p].rabi_transmon, 1);
                row.rabi_mhz.emplace_back(r.spec.label, dominant_frequency(r.trajectory.t, pop).peak_hz / 1e6);
            } catch (const Error &) {
                row.rabi_mhz.emplace_back(r.spec.label, std::nan(""));
            }
        }
        for (const auto &ba : sr.runs) {
            if (!ba.ok || ba.spec.backend != Backend::MaxwellSchrodinger) continue;
            for (const auto &nb : sr.runs) {
                if (!nb.ok || nb.spec.backend != Backend::MaxwellSchrodingerNoBackaction) continue;
                if (nb.spec.initial_state != ba.spec.initial_state || nb.spec.patches != ba.spec.patches) continue;
                row.max_ba_deviation = std::max(row.max_ba_deviation, compare(ba.trajectory, nb.trajectory).max_pop_diff);
            }
        }
        row.ok = sr.passed();
        result.rows.push_back(row);
        result.points.push_back(std::move(sr));
    }

    if (scenario.sweep && !scenario.sweep->trend.empty()) {
        bool ok = true;
        for (std::size_t i = 1; i < result.rows.size(); ++i)
            ok = ok && result.rows[i].max_ba_deviation > result.rows[i - 1].max_ba_deviation;
        result.trend_ok = ok;
    }

    if (options.out_dir) {
        fs::create_directories(*options.out_dir / scenario.name);
        std::ostringstream csv;
        csv << "label";
        if (scenario.sweep)
            for (const auto &p : scenario.sweep->parameters) csv << "," << p;
        csv << ",j00_mhz";
        if (!result.rows.empty())
            for (const auto &[label, f] : result.rows.front().rabi_mhz) csv << ",rabi_" << label << "_mhz";
        csv << ",max_ba_deviation,ok\n";
        for (const auto &row : result.rows) {
            csv << row.label;
            for (const auto &v : row.values) csv << "," << v.dump();
            csv << "," << format_double(row.j00_mhz);
            for (const auto &[label, f] : row.rabi_mhz) csv << "," << format_double(f);
            csv << "," << format_double(row.max_ba_deviation) << "," << (row.ok ? 1 : 0) << "\n";
        }
        write_text(*options.out_dir / scenario.name / "sweep.csv", csv.str());
    }
    return result;
}

void write_trajectory_csv(const Trajectory &tr, const fs::path &path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path.string());
    out << "t_ns";
    for (const auto &l : tr.labels) out << ",pop_" << l;
    for (std::size_t k = 0; k < tr.charge.size(); ++k) out << ",n" << (k + 1);
    std::vector<double> peak(tr.probe.size(), 0.0);
    for (std::size_t p = 0; p < tr.probe.size(); ++p) {
        const std::string suffix = p == 0 ? "" : std::to_string(p + 1);
        out << ",v_probe" << suffix << "_uv,v_probe" << suffix << "_norm";
        for (double v : tr.probe[p]) peak[p] = std::max(peak[p], std::abs(v));
    }
    if (!tr.resonator_drive.empty()) out << ",v_r_rad_per_s";
    out << "\n";
    for (std::size_t i = 0; i < tr.samples(); ++i) {
        out << format_double(tr.t[i] * 1e9);
        for (double p : tr.populations[i]) out << "," << format_double(p);
        for (const auto &n : tr.charge) out << "," << format_double(n[i]);
        for (std::size_t p = 0; p < tr.probe.size(); ++p)
            out << "," << format_double(tr.probe[p][i] * 1e6) << ","
                << format_double(peak[p] > 0 ? tr.probe[p][i] / peak[p] : 0.0);
        if (!tr.resonator_drive.empty()) out << "," << format_double(tr.resonator_drive[i]);
        out << "\n";
    }
}

void write_population_svg(const std::vector<const Trajectory *> &runs, const std::vector<std::string> &names,
                          const fs::path &path, const std::string &title) {
    const double W = 800, H = 480, left = 70, right = 170, top = 40, bottom = 50;
    const double pw = W - left - right, ph = H - top - bottom;
    double tmax = 0;
    for (const auto *r : runs)
        if (!r->t.empty()) tmax = std::max(tmax, r->t.back());
    if (!(tmax > 0)) throw DomainError("nothing to plot");
    const char *colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" << title << "</text>\n";
    svg << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph
        << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int k = 0; k <= 4; ++k) {
        const double y = top + ph * (1.0 - k / 4.0);
        const double x = left + pw * k / 4.0;
        svg << "<text x=\"" << left - 8 << "\" y=\"" << y + 4 << "\" text-anchor=\"end\" font-size=\"11\">"
            << fixed(k / 4.0, 2) << "</text>\n";
        svg << "<text x=\"" << x << "\" y=\"" << top + ph + 16 << "\" text-anchor=\"middle\" font-size=\"11\">"
            << fixed(tmax * 1e9 * k / 4.0, 1) << "</text>\n";
    }
    svg << "<text x=\"" << left + pw / 2 << "\" y=\"" << H - 10 << "\" text-anchor=\"middle\" font-size=\"13\">t (ns)</text>\n";
    svg << "<text x=\"18\" y=\"" << top + ph / 2 << "\" transform=\"rotate(-90 18 " << top + ph / 2
        << ")\" text-anchor=\"middle\" font-size=\"13\">population</text>\n";

    for (std::size_t r = 0; r < runs.size(); ++r) {
        const Trajectory &tr = *runs[r];
        const std::size_t which = tr.dims.empty() ? 0 : tr.dims.size() - 1;
        const std::vector<double> pop = tr.level_population(which, 1);
        const std::size_t stride = std::max<std::size_t>(1, tr.samples() / 2000);
        svg << "<polyline fill=\"none\" stroke-width=\"1.2\" stroke=\"" << colors[r % 8] << "\" points=\"";
        for (std::size_t i = 0; i < tr.samples(); i += stride)
            svg << fixed(left + pw * tr.t[i] / tmax, 2) << "," << fixed(top + ph * (1.0 - pop[i]), 2) << " ";
        svg << "\"/>\n";
        const double ly = top + 14 + 18 * static_cast<double>(r);
        svg << "<line x1=\"" << left + pw + 10 << "\" y1=\"" << ly << "\" x2=\"" << left + pw + 30 << "\" y2=\"" << ly
            << "\" stroke=\"" << colors[r % 8] << "\" stroke-width=\"2\"/>\n";
        svg << "<text x=\"" << left + pw + 36 << "\" y=\"" << ly + 4 << "\" font-size=\"11\">" << names[r] << "</text>\n";
    }
    svg << "</svg>\n";
    write_text(path, svg.str());
}

}  // namespace cosim

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

#ifndef COSIM_SCENARIO_H
#define COSIM_SCENARIO_H

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cosim/analysis.h"
#include "cosim/config.h"
#include "cosim/dynamics.h"

namespace cosim {

/// One simulation of a scenario: a backend, an initial state and JSON-pointer
/// patches applied to the base configuration.
struct RunSpec {
    std::string label;
    Backend backend = Backend::MaxwellSchrodinger;
    std::string initial_state;
    nlohmann::json patches = nlohmann::json::array();  // [{"path": ..., "value": ...}]
};

/// An assertion over finished runs.
///   max_pop_diff     max pointwise population difference of a vs b < threshold
///   rabi_separation  |f_a - f_b| of the transmon's excited population > threshold bins
///   rabi_match       |f_a - f_b| <= threshold bins
///   envelope_diff    relative L2 distance of probe envelopes of a vs b > threshold
///   fidelity         1 - F of actual (runs[2..3]) against ideal (runs[0..1]) < threshold
///   infidelity_trend runs in groups of four (ideal 0, ideal 1, actual 0, actual 1);
///                    1 - F may not drop by more than threshold from one group to the next
struct Check {
    std::string type;
    std::string a;
    std::string b;
    std::vector<std::string> runs;
    std::size_t transmon = 0;
    std::size_t probe = 0;
    double threshold = 0;
};

struct SweepSpec {
    std::vector<std::string> parameters;        // JSON pointers into the config
    std::vector<nlohmann::json> points;         // one value per parameter, per point
    std::vector<std::string> labels;
    std::string trend;  // "" or "max_ba_deviation_increasing"
};

struct Scenario {
    std::string name;
    std::string description;
    nlohmann::json config;
    std::vector<RunSpec> runs;
    std::vector<Check> checks;
    std::optional<SweepSpec> sweep;
    std::size_t rabi_transmon = 0;
};

struct RunResult {
    RunSpec spec;
    bool ok = false;
    std::string error;
    Trajectory trajectory;
    nlohmann::json device;  // J, qbar, E_J and other resolved quantities
    double wall_s = 0;
};

struct CheckResult {
    Check check;
    bool passed = false;
    double value = 0;
    std::string detail;
};

struct ScenarioResult {
    std::string name;
    std::vector<RunResult> runs;
    std::vector<CheckResult> checks;

    bool passed() const;
    const RunResult *find(const std::string &label) const;
};

struct RunOptions {
    std::optional<std::filesystem::path> out_dir;
    unsigned threads = 0;  // 0 = hardware concurrency
    bool write_svg = true;
    std::optional<Backend> backend;  // keep only runs of this backend
    nlohmann::json overrides = nlohmann::json::array();
};

Scenario parse_scenario(const nlohmann::json &doc, const std::string &fallback_name = "");
Scenario load_scenario_file(const std::filesystem::path &path);

/// Resolves a scenario name against $COSIM_SCENARIO_DIR, ./scenarios and the
/// source tree; a path to an existing file is returned unchanged.
std::filesystem::path find_scenario(const std::string &name_or_path);

/// Applies [{"path", "value"}] patches in order. Throws ConfigError for an
/// unresolvable path.
nlohmann::json apply_patches(nlohmann::json doc, const nlohmann::json &patches);

/// 1 - F of finished runs: `labels` lists the ideal runs followed by the
/// actual runs started in the same basis states.
double run_infidelity(const std::vector<std::string> &labels, const std::vector<RunResult> &runs);

/// Builds the device and runs one simulation.
RunResult run_one(const nlohmann::json &config, const RunSpec &run, const nlohmann::json &overrides = {});

/// Runs every RunSpec concurrently and evaluates the checks. Writes one
/// trajectory CSV, a JSON sidecar and an optional SVG per run, plus
/// metrics.json, under out_dir/<name>/.
ScenarioResult run_scenario(const Scenario &scenario, const RunOptions &options);

struct SweepRow {
    std::string label;
    std::vector<nlohmann::json> values;
    double j00_mhz = 0;
    std::vector<std::pair<std::string, double>> rabi_mhz;
    double max_ba_deviation = 0;
    bool ok = false;
};

struct SweepResult {
    std::string name;
    std::vector<ScenarioResult> points;
    std::vector<SweepRow> rows;
    std::optional<bool> trend_ok;

    bool passed() const;
};

/// One scenario per sweep point; failures are recorded and the sweep goes on.
/// The aggregate CSV has one row per point in the given order.
SweepResult run_sweep(const Scenario &scenario, const RunOptions &options);

/// Scenario for a single sweep point.
Scenario sweep_point(const Scenario &scenario, std::size_t index);

void write_trajectory_csv(const Trajectory &trajectory, const std::filesystem::path &path);
void write_population_svg(const std::vector<const Trajectory *> &runs, const std::vector<std::string> &names,
                          const std::filesystem::path &path, const std::string &title);

}  // namespace cosim

#endif

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

#include "cosim/config.h"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "cosim/error.h"

namespace cosim {

using nlohmann::json;

namespace {

enum class Kind { Length, Capacitance, Frequency, Time, Voltage, InductancePerM, CapacitancePerM, Resistance, Angle };

struct Unit {
    const char *suffix;
    int exponent;
};

const std::vector<Unit> &units(Kind kind) {
    static const std::map<Kind, std::vector<Unit>> table = {
        {Kind::Length, {{"m", 0}, {"mm", -3}, {"um", -6}}},
        {Kind::Capacitance, {{"f", 0}, {"pf", -12}, {"ff", -15}}},
        {Kind::Frequency, {{"hz", 0}, {"khz", 3}, {"mhz", 6}, {"ghz", 9}}},
        {Kind::Time, {{"s", 0}, {"ms", -3}, {"us", -6}, {"ns", -9}, {"ps", -12}}},
        {Kind::Voltage, {{"v", 0}, {"mv", -3}, {"uv", -6}}},
        {Kind::InductancePerM, {{"h_per_m", 0}, {"uh_per_m", -6}, {"nh_per_m", -9}}},
        {Kind::CapacitancePerM, {{"f_per_m", 0}, {"pf_per_m", -12}}},
        {Kind::Resistance, {{"ohm", 0}}},
        {Kind::Angle, {{"rad", 0}}},
    };
    return table.at(kind);
}

std::string join(const std::string &path, const std::string &key) { return path.empty() ? key : path + "." + key; }
std::string index(const std::string &path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

class Reader {
   public:
    Reader(const json &j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j.is_object()) throw ConfigError(path_, "expected an object");
    }

    const std::string &path() const { return path_; }

    bool has(const std::string &key) const { return j_.contains(key); }

    const json *raw(const std::string &key) {
        if (!j_.contains(key)) return nullptr;
        used_.insert(key);
        return &j_.at(key);
    }

    std::optional<double> quantity(const std::string &base, Kind kind) {
        std::optional<double> out;
        std::string found;
        auto take = [&](const std::string &key, auto convert) {
            if (!j_.contains(key)) return;
            if (out) throw ConfigError(join(path_, key), "conflicts with " + found);
            used_.insert(key);
            out = convert(number_at(key));
            found = key;
        };
        for (const Unit &u : units(kind)) {
            const int e = u.exponent;
            take(base + "_" + u.suffix, [e](double v) { return scale_decimal(v, e); });
        }
        if (kind == Kind::Angle) take(base + "_pi", [](double v) { return v * std::numbers::pi; });
        return out;
    }

    double required(const std::string &base, Kind kind) {
        auto v = quantity(base, kind);
        if (!v) throw ConfigError(join(path_, base + "_" + units(kind).front().suffix), "missing required field (any unit suffix)");
        return *v;
    }

    std::optional<double> number(const std::string &key) {
        if (!j_.contains(key)) return std::nullopt;
        used_.insert(key);
        return number_at(key);
    }

    int integer(const std::string &key, int fallback) {
        if (!j_.contains(key)) return fallback;
        used_.insert(key);
        const json &v = j_.at(key);
        if (!v.is_number_integer()) throw ConfigError(join(path_, key), "expected an integer");
        return v.get<int>();
    }

    bool boolean(const std::string &key, bool fallback) {
        if (!j_.contains(key)) return fallback;
        used_.insert(key);
        const json &v = j_.at(key);
        if (!v.is_boolean()) throw ConfigError(join(path_, key), "expected true or false");
        return v.get<bool>();
    }

    std::optional<std::string> string(const std::string &key) {
        if (!j_.contains(key)) return std::nullopt;
        used_.insert(key);
        const json &v = j_.at(key);
        if (!v.is_string()) throw ConfigError(join(path_, key), "expected a string");
        return v.get<std::string>();
    }

    std::string required_string(const std::string &key) {
        auto v = string(key);
        if (!v) throw ConfigError(join(path_, key), "missing required field");
        return *v;
    }

    const json &array(const std::string &key) {
        static const json empty = json::array();
        if (!j_.contains(key)) return empty;
        used_.insert(key);
        const json &v = j_.at(key);
        if (!v.is_array()) throw ConfigError(join(path_, key), "expected an array");
        return v;
    }

    void ignore(const std::string &key) { used_.insert(key); }

    void finish() const {
        for (auto it = j_.begin(); it != j_.end(); ++it) {
            if (used_.count(it.key()) || (!it.key().empty() && it.key()[0] == '$')) continue;
            throw ConfigError(join(path_, it.key()), "unknown field");
        }
    }

   private:
    double number_at(const std::string &key) const {
        const json &v = j_.at(key);
        if (!v.is_number()) throw ConfigError(join(path_, key), "expected a number");
        const double d = v.get<double>();
        if (!std::isfinite(d)) throw ConfigError(join(path_, key), "expected a finite number");
        return d;
    }

    const json &j_;
    std::string path_;
    std::set<std::string> used_;
};

template <typename T>
std::size_t resolve(const std::vector<T> &items, const std::string &id, const std::string &path, const char *what) {
    for (std::size_t i = 0; i < items.size(); ++i)
        if (items[i].id == id) return i;
    throw ConfigError(path, std::string("unresolved reference to ") + what + " '" + id + "'");
}

PulseSpec parse_pulse(const json &j, const std::string &path, bool carrier_optional, bool sigma_optional) {
    Reader r(j, path);
    const std::string type = r.required_string("type");
    PulseSpec out;
    if (type == "flat_top_gaussian") {
        FlatTopGaussian p;
        p.amplitude_v = r.required("vmag", Kind::Voltage);
        p.carrier_hz = carrier_optional ? r.quantity("carrier", Kind::Frequency).value_or(0.0) : r.required("carrier", Kind::Frequency);
        p.phase_rad = r.quantity("phase", Kind::Angle).value_or(0.0);
        p.duration_s = r.required("duration", Kind::Time);
        p.rise_fall_s = r.required("rise_fall", Kind::Time);
        p.sigma_s = r.required("sigma", Kind::Time);
        p.offset_s = r.quantity("offset", Kind::Time).value_or(0.0);
        out = p;
    } else if (type == "modulated_gaussian") {
        ModulatedGaussian p;
        p.amplitude_v = r.required("vmag", Kind::Voltage);
        p.carrier_hz = carrier_optional ? r.quantity("carrier", Kind::Frequency).value_or(0.0) : r.required("carrier", Kind::Frequency);
        p.offset_s = r.quantity("offset", Kind::Time).value_or(0.0);
        p.sigma_s = sigma_optional ? r.quantity("sigma", Kind::Time).value_or(1.0) : r.required("sigma", Kind::Time);
        out = p;
    } else {
        throw ConfigError(join(path, "type"), "unknown pulse type '" + type + "'");
    }
    r.finish();
    return out;
}

Termination parse_end(const json &j, const std::string &path) {
    Reader r(j, path);
    const std::string type = r.required_string("type");
    Termination out;
    if (type == "open") {
        out = OpenEnd{};
    } else if (type == "short") {
        out = ShortEnd{};
    } else if (type == "resistor") {
        out = ResistorEnd{r.required("resistance", Kind::Resistance)};
    } else if (type == "thevenin") {
        const json *pulse = r.raw("pulse");
        if (!pulse) throw ConfigError(join(path, "pulse"), "missing required field");
        TheveninEnd t;
        t.pulse = parse_pulse(*pulse, join(path, "pulse"), false, false);
        t.series_resistance_ohm = r.quantity("series_resistance", Kind::Resistance).value_or(50.0);
        out = t;
    } else {
        throw ConfigError(join(path, "type"), "unknown termination '" + type + "'");
    }
    r.finish();
    return out;
}

template <typename F>
auto guarded(const std::string &path, F &&f) -> decltype(f()) {
    try {
        return f();
    } catch (const ConfigError &) {
        throw;
    } catch (const Error &e) {
        throw ConfigError(path, e.what());
    }
}

json pulse_json(const PulseSpec &pulse) {
    if (const auto *p = std::get_if<FlatTopGaussian>(&pulse))
        return {{"type", "flat_top_gaussian"}, {"vmag_v", p->amplitude_v}, {"carrier_hz", p->carrier_hz},
                {"phase_rad", p->phase_rad},    {"duration_s", p->duration_s}, {"rise_fall_s", p->rise_fall_s},
                {"sigma_s", p->sigma_s},        {"offset_s", p->offset_s}};
    const auto &g = std::get<ModulatedGaussian>(pulse);
    return {{"type", "modulated_gaussian"}, {"vmag_v", g.amplitude_v}, {"carrier_hz", g.carrier_hz},
            {"offset_s", g.offset_s},       {"sigma_s", g.sigma_s}};
}

json end_json(const Termination &end) {
    if (std::holds_alternative<OpenEnd>(end)) return {{"type", "open"}};
    if (std::holds_alternative<ShortEnd>(end)) return {{"type", "short"}};
    if (const auto *r = std::get_if<ResistorEnd>(&end)) return {{"type", "resistor"}, {"resistance_ohm", r->resistance_ohm}};
    const auto &t = std::get<TheveninEnd>(end);
    return {{"type", "thevenin"}, {"series_resistance_ohm", t.series_resistance_ohm}, {"pulse", pulse_json(t.pulse)}};
}

}  // namespace

double scale_decimal(double number, int exponent) {
    if (exponent == 0 || number == 0.0) return number;
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), number);
    std::string text(buf, res.ptr);
    int shift = exponent;
    const auto epos = text.find_first_of("eE");
    if (epos != std::string::npos) {
        shift += std::stoi(text.substr(epos + 1));
        text.resize(epos);
    }
    text += "e" + std::to_string(shift);
    return std::strtod(text.c_str(), nullptr);
}

Config load_config(const json &doc) {
    Reader root(doc, "");
    for (const char *reserved : {"scenario", "sweep", "name", "description"}) root.ignore(reserved);
    Config cfg;
    CircuitSpec &c = cfg.circuit;

    const json &transmons = root.array("transmons");
    for (std::size_t i = 0; i < transmons.size(); ++i) {
        const std::string path = index("transmons", i);
        Reader r(transmons[i], path);
        TransmonSpec t;
        t.id = r.required_string("id");
        for (const auto &other : c.transmons)
            if (other.id == t.id) throw ConfigError(join(path, "id"), "duplicate transmon id '" + t.id + "'");
        t.total_capacitance_f = r.required("c_sigma", Kind::Capacitance);
        t.level_count = r.integer("levels", 3);
        t.charge_cutoff = r.integer("charge_cutoff", 15);
        const auto ej = r.quantity("ej", Kind::Frequency);
        if (const json *target = r.raw("target")) {
            Reader tr(*target, join(path, "target"));
            FrequencyTarget ft;
            ft.q01_hz = tr.required("q01", Kind::Frequency);
            ft.lamb_shifted = tr.boolean("lamb_shifted", false);
            tr.finish();
            t.target = ft;
            if (ej) t.josephson_energy_hz = *ej;
        } else {
            if (!ej) throw ConfigError(join(path, "ej_ghz"), "missing required field (or give a target)");
            t.josephson_energy_hz = *ej;
        }
        r.finish();
        c.transmons.push_back(t);
    }

    const json &lines = root.array("lines");
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::string path = index("lines", i);
        Reader r(lines[i], path);
        LineSpec line;
        line.id = r.required_string("id");
        line.length_m = r.required("length", Kind::Length);
        line.inductance_per_m = r.required("inductance", Kind::InductancePerM);
        line.capacitance_per_m = r.required("capacitance", Kind::CapacitancePerM);
        if (const json *left = r.raw("left")) line.left_end = parse_end(*left, join(path, "left"));
        if (const json *right = r.raw("right")) line.right_end = parse_end(*right, join(path, "right"));
        const json &taps = r.array("taps");
        for (std::size_t k = 0; k < taps.size(); ++k) {
            const std::string tpath = index(join(path, "taps"), k);
            Reader tr(taps[k], tpath);
            Tap tap;
            tap.position_m = tr.required("position", Kind::Length);
            tap.transmon = resolve(c.transmons, tr.required_string("transmon"), join(tpath, "transmon"), "transmon");
            tap.coupling_capacitance_f = tr.required("coupling", Kind::Capacitance);
            tap.backaction_enabled = tr.boolean("backaction", true);
            tap.drive_to_qubit_enabled = tr.boolean("drive_to_qubit", true);
            tr.finish();
            if (tap.position_m < 0 || tap.position_m > line.length_m)
                throw ConfigError(join(tpath, "position"), "tap position outside line");
            line.taps.push_back(tap);
        }
        r.finish();
        for (const auto &other : c.lines)
            if (other.id == line.id) throw ConfigError(join(path, "id"), "duplicate line id '" + line.id + "'");
        c.lines.push_back(line);
    }

    const json &drives = root.array("drives");
    for (std::size_t i = 0; i < drives.size(); ++i) {
        const std::string path = index("drives", i);
        Reader r(drives[i], path);
        DirectDrive d;
        d.id = r.required_string("id");
        d.transmon = resolve(c.transmons, r.required_string("transmon"), join(path, "transmon"), "transmon");
        d.coupling_capacitance_f = r.quantity("coupling", Kind::Capacitance).value_or(0.0);
        d.beta_override = r.number("beta");
        if (auto carrier = r.string("carrier_transmon"))
            d.carrier_transmon = resolve(c.transmons, *carrier, join(path, "carrier_transmon"), "transmon");
        d.pulse_area_rad = r.quantity("pulse_area", Kind::Angle);
        d.offset_sigmas = r.number("offset_sigmas");
        const json *pulse = r.raw("pulse");
        if (!pulse) throw ConfigError(join(path, "pulse"), "missing required field");
        d.pulse = parse_pulse(*pulse, join(path, "pulse"), d.carrier_transmon.has_value(), d.pulse_area_rad.has_value());
        r.finish();
        for (const auto &other : c.direct_drives)
            if (other.id == d.id) throw ConfigError(join(path, "id"), "duplicate drive id '" + d.id + "'");
        c.direct_drives.push_back(d);
    }

    const json &xtalk = root.array("crosstalk_drives");
    for (std::size_t i = 0; i < xtalk.size(); ++i) {
        const std::string path = index("crosstalk_drives", i);
        Reader r(xtalk[i], path);
        CrosstalkDrive x;
        x.transmon = resolve(c.transmons, r.required_string("transmon"), join(path, "transmon"), "transmon");
        x.source_drive = resolve(c.direct_drives, r.required_string("source"), join(path, "source"), "drive");
        x.spec.amplitude_scale = r.number("amplitude_scale").value_or(0.0);
        x.spec.phase_rad = r.quantity("phase", Kind::Angle).value_or(0.0);
        r.finish();
        c.crosstalk_drives.push_back(x);
    }

    SimConfig &s = cfg.sim;
    if (const json *sim = root.raw("simulation")) {
        Reader r(*sim, "simulation");
        s.t_end_s = r.quantity("t_end", Kind::Time).value_or(0.0);
        s.t_end_sigmas = r.number("t_end_sigmas");
        s.dt_s = r.quantity("dt", Kind::Time);
        s.cfl_safety = r.number("cfl_safety").value_or(s.cfl_safety);
        s.mesh_elements = r.integer("mesh_elements", s.mesh_elements);
        s.consistent_mass = r.boolean("consistent_mass", s.consistent_mass);
        s.fock_truncation = r.integer("fock_truncation", s.fock_truncation);
        s.sample_stride = r.integer("sample_stride", s.sample_stride);
        s.mode_pairs = r.integer("mode_pairs", s.mode_pairs);
        s.lamb_modes = r.integer("lamb_modes", s.lamb_modes);
        s.j_use_lamb_shifted = r.boolean("j_use_lamb_shifted", s.j_use_lamb_shifted);
        s.initial_state = r.string("initial_state").value_or("");
        if (auto b = r.string("backend")) s.backend = guarded("simulation.backend", [&] { return parse_backend(*b); });
        if (auto v = r.string("integrator"))
            s.integrator = guarded("simulation.integrator", [&] { return parse_integrator(*v); });
        if (auto v = r.string("j_route")) s.j_route = guarded("simulation.j_route", [&] { return parse_j_route(*v); });
        const json &probes = r.array("probes");
        for (std::size_t i = 0; i < probes.size(); ++i) {
            const std::string path = index("simulation.probes", i);
            Reader pr(probes[i], path);
            Probe p;
            p.line = resolve(c.lines, pr.required_string("line"), join(path, "line"), "line");
            p.position_m = pr.required("position", Kind::Length);
            pr.finish();
            if (p.position_m < 0 || p.position_m > c.lines[p.line].length_m)
                throw ConfigError(join(path, "position"), "probe position outside line");
            s.probes.push_back(p);
        }
        r.finish();
    }
    root.finish();

    guarded("", [&] {
        validate(cfg.circuit);
        validate(cfg.sim);
        return 0;
    });
    return cfg;
}

Config load_config_text(const std::string &text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error &e) {
        throw ConfigError("", std::string("malformed JSON: ") + e.what());
    }
    return load_config(doc);
}

Config load_config_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("", "cannot open configuration file " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return load_config_text(buf.str());
}

json serialize(const Config &cfg) {
    const CircuitSpec &c = cfg.circuit;
    json doc;
    doc["transmons"] = json::array();
    for (const auto &t : c.transmons) {
        json j = {{"id", t.id},
                  {"ej_hz", t.josephson_energy_hz},
                  {"c_sigma_f", t.total_capacitance_f},
                  {"levels", t.level_count},
                  {"charge_cutoff", t.charge_cutoff}};
        if (t.target) j["target"] = {{"q01_hz", t.target->q01_hz}, {"lamb_shifted", t.target->lamb_shifted}};
        doc["transmons"].push_back(j);
    }
    doc["lines"] = json::array();
    for (const auto &l : c.lines) {
        json j = {{"id", l.id},
                  {"length_m", l.length_m},
                  {"inductance_h_per_m", l.inductance_per_m},
                  {"capacitance_f_per_m", l.capacitance_per_m},
                  {"left", end_json(l.left_end)},
                  {"right", end_json(l.right_end)},
                  {"taps", json::array()}};
        for (const auto &tap : l.taps)
            j["taps"].push_back({{"position_m", tap.position_m},
                                 {"transmon", c.transmons[tap.transmon].id},
                                 {"coupling_f", tap.coupling_capacitance_f},
                                 {"backaction", tap.backaction_enabled},
                                 {"drive_to_qubit", tap.drive_to_qubit_enabled}});
        doc["lines"].push_back(j);
    }
    doc["drives"] = json::array();
    for (const auto &d : c.direct_drives) {
        json j = {{"id", d.id},
                  {"transmon", c.transmons[d.transmon].id},
                  {"coupling_f", d.coupling_capacitance_f},
                  {"pulse", pulse_json(d.pulse)}};
        if (d.beta_override) j["beta"] = *d.beta_override;
        if (d.carrier_transmon) j["carrier_transmon"] = c.transmons[*d.carrier_transmon].id;
        if (d.pulse_area_rad) j["pulse_area_rad"] = *d.pulse_area_rad;
        if (d.offset_sigmas) j["offset_sigmas"] = *d.offset_sigmas;
        doc["drives"].push_back(j);
    }
    doc["crosstalk_drives"] = json::array();
    for (const auto &x : c.crosstalk_drives)
        doc["crosstalk_drives"].push_back({{"transmon", c.transmons[x.transmon].id},
                                           {"source", c.direct_drives[x.source_drive].id},
                                           {"amplitude_scale", x.spec.amplitude_scale},
                                           {"phase_rad", x.spec.phase_rad}});
    const SimConfig &s = cfg.sim;
    json sim = {{"t_end_s", s.t_end_s},
                {"cfl_safety", s.cfl_safety},
                {"mesh_elements", s.mesh_elements},
                {"consistent_mass", s.consistent_mass},
                {"backend", to_string(s.backend)},
                {"integrator", to_string(s.integrator)},
                {"fock_truncation", s.fock_truncation},
                {"sample_stride", s.sample_stride},
                {"mode_pairs", s.mode_pairs},
                {"lamb_modes", s.lamb_modes},
                {"j_route", to_string(s.j_route)},
                {"j_use_lamb_shifted", s.j_use_lamb_shifted},
                {"initial_state", s.initial_state},
                {"probes", json::array()}};
    if (s.dt_s) sim["dt_s"] = *s.dt_s;
    if (s.t_end_sigmas) sim["t_end_sigmas"] = *s.t_end_sigmas;
    for (const auto &p : s.probes) sim["probes"].push_back({{"line", c.lines[p.line].id}, {"position_m", p.position_m}});
    doc["simulation"] = sim;
    return doc;
}

std::string config_hash(const Config &config) {
    const std::string text = serialize(config).dump();
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    std::ostringstream out;
    out << std::hex << std::setw(16) << std::setfill('0') << h;
    return out.str();
}

}  // namespace cosim

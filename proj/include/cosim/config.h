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

#ifndef COSIM_CONFIG_H
#define COSIM_CONFIG_H

#include <string>

#include <json.hpp>

#include "cosim/spec.h"

namespace cosim {

struct Config {
    CircuitSpec circuit;
    SimConfig sim;
};

/// Parses a configuration document. Every numeric field carries its unit as
/// a key suffix; values are scaled to SI by decimal exponent shifting so the
/// same quantity written in any unit yields the same double.
/// Throws ConfigError with a JSON-pointer location.
Config load_config(const nlohmann::json &doc);
Config load_config_text(const std::string &text);
Config load_config_file(const std::string &path);

/// SI-suffixed document that load_config() maps back to the same specs.
nlohmann::json serialize(const Config &config);

/// Value of `number` given in a unit with decimal exponent `exponent`,
/// converted exactly as the decimal literal "<number>e<exponent>" would be.
double scale_decimal(double number, int exponent);

/// 64-bit FNV-1a of the canonical serialization, as 16 hex digits.
std::string config_hash(const Config &config);

}  // namespace cosim

#endif

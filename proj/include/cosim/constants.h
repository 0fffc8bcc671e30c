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

#ifndef COSIM_CONSTANTS_H
#define COSIM_CONSTANTS_H

#include <numbers>

namespace cosim {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// CODATA 2018 exact SI values. Not configurable.
struct PhysicalConstants {
    static constexpr double e = 1.602176634e-19;     // C
    static constexpr double h = 6.62607015e-34;      // J s
    static constexpr double hbar = h / kTwoPi;       // J s
};

}  // namespace cosim

#endif

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

#ifndef COSIM_ERROR_H
#define COSIM_ERROR_H

#include <stdexcept>
#include <string>
#include <utility>

namespace cosim {

class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Malformed configuration document. `path()` names the offending field, e.g.
/// "lines[0].taps[1].position_mm".
class ConfigError : public Error {
   public:
    ConfigError(std::string path, const std::string &what)
        : Error(path.empty() ? what : path + ": " + what), path_(std::move(path)) {}
    const std::string &path() const noexcept { return path_; }

   private:
    std::string path_;
};

/// A domain invariant or operation precondition does not hold.
class DomainError : public Error {
   public:
    using Error::Error;
};

/// Numerical failure: instability, conservation drift, resonance, pole proximity.
class SolverError : public Error {
   public:
    using Error::Error;
};

}  // namespace cosim

#endif

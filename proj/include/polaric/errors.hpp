// SPDX-License-Identifier: Apache-2.0
//
// polaric - polarimetric LOS interference channel simulator
// Copyright (C) 2026 polaric contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef POLARIC_ERRORS_HPP
#define POLARIC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace polaric {

/// A scenario field violates one of its invariants.
class ScenarioError : public std::runtime_error {
  public:
    explicit ScenarioError(const std::string &what) : std::runtime_error(what) {}
};

/// Transmitter and receiver coincide, or two nulled directions collapse onto one ray.
class DegenerateGeometryError : public std::runtime_error {
  public:
    explicit DegenerateGeometryError(const std::string &what) : std::runtime_error(what) {}
};

/// Random placement could not reach the requested angle separation within the budget.
class NonGenericGeometryError : public std::runtime_error {
  public:
    explicit NonGenericGeometryError(const std::string &what) : std::runtime_error(what) {}
};

/// A node does not have enough spare dimensions to null its assigned links.
class InfeasibleNullingError : public std::runtime_error {
  public:
    explicit InfeasibleNullingError(const std::string &what) : std::runtime_error(what) {}
};

/// Structured-text input could not be parsed; carries a 1-based line number.
class ParseError : public std::runtime_error {
  public:
    ParseError(int line, const std::string &what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const { return line_; }

  private:
    int line_;
};

} // namespace polaric

#endif

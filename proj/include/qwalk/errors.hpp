// Copyright 2026 The qwalk Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace qwalk {

/// Raised when the walker would be shifted past the edge of its lattice.
/// Always indicates that the lattice was sized too small for the number of
/// steps requested.
class LatticeOverflow : public std::runtime_error {
 public:
  explicit LatticeOverflow(const std::string& what) : std::runtime_error(what) {}
};

/// Raised by fitting routines when too few usable points remain.
class InsufficientData : public std::runtime_error {
 public:
  explicit InsufficientData(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qwalk

// Copyright 2026 The qmix developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace qmix {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Register or problem size exceeds what exact simulation supports.
struct CapacityError : Error {
  using Error::Error;
};

/// Numeric argument outside its mathematical domain.
struct DomainError : Error {
  using Error::Error;
};

/// Qubit index out of range or colliding target/control sets.
struct IndexError : Error {
  using Error::Error;
};

/// Register shapes or lengths do not line up.
struct ShapeError : Error {
  using Error::Error;
};

/// Input violates a structural assumption of a model (non-monotone LUT,
/// non-affine step values, encoding budget exceeded).
struct ModelError : Error {
  using Error::Error;
};

/// Malformed config or data file.
struct ParseError : Error {
  using Error::Error;
};

}  // namespace qmix

// Copyright 2026 The stabilab authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace stabilab {

/// An argument violates an operation's preconditions.
struct invalid_parameter : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// An enumeration would exceed the configured resource cap.
struct enumeration_too_large : std::length_error {
  using std::length_error::length_error;
};

/// Two distributions that must have equal total mass do not.
struct mass_mismatch : std::logic_error {
  using std::logic_error::logic_error;
};

/// The requested mode is outside the exactly-computable fragment.
struct unsupported_configuration : std::logic_error {
  using std::logic_error::logic_error;
};

/// A constructive witness was requested for inputs that admit none.
struct no_witness : std::logic_error {
  using std::logic_error::logic_error;
};

/// Invariant factors of the input do not pair up as a doubled matrix's must.
struct not_a_double : std::logic_error {
  using std::logic_error::logic_error;
};

/// The randomized search exhausted its trial budget without a conclusion.
/// This is not a refutation.
struct recovery_inconclusive : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An orbit comparison hit its safety cap before both cycles closed.
struct undecided : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct parse_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct emit_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace stabilab

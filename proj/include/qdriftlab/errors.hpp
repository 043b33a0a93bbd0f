// Copyright 2026 The qdrift-lab Authors
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

namespace qdriftlab {

/// Operand dimensions do not match the operation's requirements.
class ShapeError : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Input value lies outside the mathematical domain of the operation.
class DomainError : public std::domain_error {
  using std::domain_error::domain_error;
};

/// Request exceeds the configured dense-size limits.
class SizeError : public std::length_error {
  using std::length_error::length_error;
};

}  // namespace qdriftlab

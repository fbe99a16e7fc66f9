// Copyright 2026 The kpell Authors
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

namespace kpell {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on the arguments does not hold (parity, k range, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A request exceeds a configured resource limit; the caller must raise
/// the limit explicitly.
class ResourceLimitError : public Error {
 public:
  using Error::Error;
};

/// An enclosure is too wide to decide a comparison, a sign or a division.
/// Callers normally retry at a higher working precision.
class IndeterminateError : public Error {
 public:
  using Error::Error;
};

/// Precision escalation reached its ceiling without certifying the result.
class PrecisionExhaustedError : public Error {
 public:
  using Error::Error;
};

/// An exact identity that must hold for every index failed.
class IdentityViolation : public Error {
 public:
  using Error::Error;
};

/// An enumerated zero set differs from its predicted structure.
class StructureMismatch : public Error {
 public:
  using Error::Error;
};

/// The continued-fraction reduction found no convergent with a positive
/// epsilon within its attempt budget.
class ReductionExhausted : public Error {
 public:
  using Error::Error;
};

}  // namespace kpell

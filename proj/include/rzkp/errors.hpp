// Copyright 2026 The rzkp Authors
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

#ifndef RZKP_ERRORS_HPP_
#define RZKP_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace rzkp {

// Base class for all errors raised by this library. Protocol-level outcomes
// (a failed decode, a rejected round) are values, not exceptions; exceptions
// are reserved for contract violations and environment failures.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Two field elements from different fields were combined.
class ParamsMismatchError : public Error {
 public:
  using Error::Error;
};

// An embedding was asked to hold more values than the field has.
class CapacityError : public Error {
 public:
  using Error::Error;
};

class DivisionByZeroError : public Error {
 public:
  using Error::Error;
};

// A prover was handed a witness that does not satisfy the instance.
class WitnessError : public Error {
 public:
  using Error::Error;
};

// An exhaustive search would exceed its configured candidate cap.
class SearchLimitError : public Error {
 public:
  using Error::Error;
};

// Bad CLI flags, config files, or on-disk formats.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Socket / transport environment failures (not protocol misbehavior).
class NetError : public Error {
 public:
  using Error::Error;
};

}  // namespace rzkp

#endif  // RZKP_ERRORS_HPP_

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

#ifndef RZKP_INSTANCE_IO_HPP_
#define RZKP_INSTANCE_IO_HPP_

#include <json.hpp>
#include <string>

#include "rzkp/bitvec.hpp"
#include "rzkp/coding.hpp"

// JSON shapes for problem instances and witnesses, hex-encoded rows so the
// files stay diffable and the CLI, tests, and report envelope all agree.
namespace rzkp::instance_io {

nlohmann::json instance_to_json(const coding::SdInstance& inst);
// Throws ConfigError on missing fields, size mismatches, or bad hex.
coding::SdInstance instance_from_json(const nlohmann::json& j);

nlohmann::json witness_to_json(const BitVector& e);
// `n` must match the instance the witness claims to solve.
BitVector witness_from_json(const nlohmann::json& j, size_t n);

// File helpers (the JSON is pretty-printed; load parses and converts).
void save_json(const nlohmann::json& j, const std::string& path);
nlohmann::json load_json(const std::string& path);

}  // namespace rzkp::instance_io

#endif  // RZKP_INSTANCE_IO_HPP_

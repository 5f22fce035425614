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

#include "rzkp/instance_io.hpp"

#include <fstream>

#include "rzkp/errors.hpp"

namespace rzkp::instance_io {

using nlohmann::json;

nlohmann::json instance_to_json(const coding::SdInstance& inst) {
  json j;
  j["format"] = "rzkp-instance";
  j["version"] = 1;
  j["n"] = inst.n;
  j["k"] = inst.k;
  j["w"] = inst.w;
  json rows = json::array();
  for (size_t i = 0; i < inst.h.row_count(); ++i) {
    rows.push_back(inst.h.row(i).to_hex());
  }
  j["h_rows"] = rows;
  j["s"] = inst.s.to_hex();
  return j;
}

coding::SdInstance instance_from_json(const nlohmann::json& j) {
  try {
    if (j.at("format").get<std::string>() != "rzkp-instance" ||
        j.at("version").get<int>() != 1) {
      throw ConfigError("instance: unrecognized format header");
    }
    coding::SdInstance inst;
    inst.n = j.at("n").get<size_t>();
    inst.k = j.at("k").get<size_t>();
    inst.w = j.at("w").get<size_t>();
    if (inst.k == 0 || inst.k >= inst.n || inst.w == 0 || inst.w > inst.n) {
      throw ConfigError("instance: need 0 < k < n and 0 < w <= n");
    }
    const auto& rows = j.at("h_rows");
    if (!rows.is_array() || rows.size() != inst.n - inst.k) {
      throw ConfigError("instance: expected n-k parity rows");
    }
    inst.h = coding::ParityCheckMatrix(inst.n, inst.k);
    for (size_t i = 0; i < rows.size(); ++i) {
      inst.h.row(i) = BitVector::from_hex(rows[i].get<std::string>(), inst.n);
    }
    inst.s = BitVector::from_hex(j.at("s").get<std::string>(),
                                 inst.n - inst.k);
    return inst;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("instance: malformed JSON: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("instance: ") + e.what());
  }
}

nlohmann::json witness_to_json(const BitVector& e) {
  json j;
  j["format"] = "rzkp-witness";
  j["version"] = 1;
  j["n"] = e.size();
  j["e"] = e.to_hex();
  return j;
}

BitVector witness_from_json(const nlohmann::json& j, size_t n) {
  try {
    if (j.at("format").get<std::string>() != "rzkp-witness" ||
        j.at("version").get<int>() != 1) {
      throw ConfigError("witness: unrecognized format header");
    }
    if (j.at("n").get<size_t>() != n) {
      throw ConfigError("witness: length does not match the instance");
    }
    return BitVector::from_hex(j.at("e").get<std::string>(), n);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("witness: malformed JSON: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("witness: ") + e.what());
  }
}

void save_json(const nlohmann::json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("io: cannot open '" + path + "' for writing");
  out << j.dump(2) << '\n';
  if (!out) throw Error("io: short write to '" + path + "'");
}

nlohmann::json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("io: cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("io: '" + path + "' is not valid JSON: " + e.what());
  }
}

}  // namespace rzkp::instance_io

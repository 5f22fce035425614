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

#ifndef RZKP_COMMIT_HPP_
#define RZKP_COMMIT_HPP_

#include "rzkp/errors.hpp"
#include "rzkp/fq.hpp"

// String commitment over F_Q in the timed two-agent setting: the committer
// holds value z and blind a, the receiver contributes a fresh challenge b,
// and the commitment is the single element y = a + z*b. The blind makes y
// uniform whatever z is (perfectly hiding); opening means handing over
// (z, a). Binding is not unconditional — it comes from the timing game:
// producing valid openings (z1, a1) != (z2, a2) for the same y pins down
// b = (a2 - a1) / (z1 - z2), so a double-opener has predicted b.
namespace rzkp::commit {

inline fq::FieldElement commit(const fq::FieldElement& z,
                               const fq::FieldElement& a,
                               const fq::FieldElement& b) {
  return a + z * b;
}

inline bool verify_reveal(const fq::FieldElement& y, const fq::FieldElement& b,
                          const fq::FieldElement& z,
                          const fq::FieldElement& a) {
  return y == a + z * b;
}

// The b implied by two openings of one commitment; z1 == z2 -> throw.
inline fq::FieldElement extract_b(const fq::FieldElement& z1,
                                  const fq::FieldElement& a1,
                                  const fq::FieldElement& z2,
                                  const fq::FieldElement& a2) {
  if (z1 == z2)
    throw DivisionByZeroError("extract_b: openings share the same z");
  return (a2 - a1) * (z1 - z2).inverse();
}

}  // namespace rzkp::commit

#endif  // RZKP_COMMIT_HPP_

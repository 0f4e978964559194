// Copyright 2026 The pirsi Authors
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

#include <gmpxx.h>

#include <cstdint>

namespace pirsi {

// Deterministic, seedable, splittable generator (splitmix64). Every
// randomized operation in the library takes one of these explicitly; there
// is no ambient randomness. Not cryptographic.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64();

  // Uniform in [0, bound); bound > 0. Unbiased (rejection sampling).
  std::uint64_t below(std::uint64_t bound);
  mpz_class below(const mpz_class& bound);

  // Independent child stream; advances this generator by one step.
  Rng split();

 private:
  std::uint64_t state_;
};

}  // namespace pirsi

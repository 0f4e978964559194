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

#include "pirsi/rng.hpp"

#include <stdexcept>

namespace pirsi {

std::uint64_t Rng::next_u64() {
  state_ += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) {
    throw std::invalid_argument("Rng::below: zero bound");
  }
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t r = next_u64();
    if (r >= threshold) {
      return r % bound;
    }
  }
}

mpz_class Rng::below(const mpz_class& bound) {
  if (bound <= 0) {
    throw std::invalid_argument("Rng::below: non-positive bound");
  }
  if (bound.fits_ulong_p()) {
    return mpz_class(static_cast<unsigned long>(below(bound.get_ui())));
  }
  const std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
  const std::size_t words = (bits + 63) / 64;
  for (;;) {
    mpz_class candidate = 0;
    for (std::size_t w = 0; w < words; ++w) {
      const std::uint64_t v = next_u64();
      candidate <<= 64;
      candidate += mpz_class(static_cast<unsigned long>(v >> 32)) << 32;
      candidate += mpz_class(static_cast<unsigned long>(v & 0xffffffffULL));
    }
    // Trim to the bit width of the bound to keep the rejection rate < 1/2.
    candidate >>= (words * 64 - bits);
    if (candidate < bound) {
      return candidate;
    }
  }
}

Rng Rng::split() { return Rng(next_u64() ^ 0xd1342543de82ef95ULL); }

}  // namespace pirsi

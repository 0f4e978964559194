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

#include <compare>
#include <cstdint>
#include <string>

namespace pirsi {

// Exact rational number. Always stored in lowest terms with a positive
// denominator; arithmetic never rounds. Probabilities and rates are Rat
// throughout the library; floating point appears only in display code.
class Rat {
 public:
  Rat() : v_(0) {}
  Rat(long value) : v_(value) {}  // NOLINT: implicit integer promotion wanted
  Rat(long num, long den);
  explicit Rat(const mpz_class& num, const mpz_class& den = 1);

  // Parses "num/den" or "num"; the inverse of to_string().
  static Rat from_string(const std::string& text);

  const mpz_class& num() const { return v_.get_num(); }
  const mpz_class& den() const { return v_.get_den(); }

  bool is_zero() const { return v_ == 0; }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }

  // "num/den", with "/den" omitted for integers ("4/5", "1", "-3/7").
  std::string to_string() const;
  // Display-only; no arithmetic is done on the result.
  double to_double() const { return v_.get_d(); }

  Rat operator-() const;
  Rat operator+(const Rat& o) const;
  Rat operator-(const Rat& o) const;
  Rat operator*(const Rat& o) const;
  Rat operator/(const Rat& o) const;  // throws on division by zero
  Rat& operator+=(const Rat& o);
  Rat& operator-=(const Rat& o);
  Rat& operator*=(const Rat& o);
  Rat& operator/=(const Rat& o);

  Rat reciprocal() const;
  static Rat pow(const Rat& base, unsigned exp);

  bool operator==(const Rat& o) const { return v_ == o.v_; }
  bool operator!=(const Rat& o) const { return v_ != o.v_; }
  bool operator<(const Rat& o) const { return v_ < o.v_; }
  bool operator<=(const Rat& o) const { return v_ <= o.v_; }
  bool operator>(const Rat& o) const { return v_ > o.v_; }
  bool operator>=(const Rat& o) const { return v_ >= o.v_; }

 private:
  explicit Rat(mpq_class v) : v_(std::move(v)) {}

  mpq_class v_;  // kept canonical
};

// Binomial coefficient over arbitrary-precision integers. Returns 0 when
// r < 0 or r > n, so boundary cases evaluate uniformly.
mpz_class binomial(long n, long r);

// base^exp for non-negative integer exponents.
mpz_class ipow(const mpz_class& base, unsigned exp);

}  // namespace pirsi

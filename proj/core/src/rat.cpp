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

#include "pirsi/rat.hpp"

#include <stdexcept>

namespace pirsi {

namespace {

mpq_class make_canonical(const mpz_class& num, const mpz_class& den) {
  if (den == 0) {
    throw std::invalid_argument("Rat: zero denominator");
  }
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

}  // namespace

Rat::Rat(long num, long den) : v_(make_canonical(num, den)) {}

Rat::Rat(const mpz_class& num, const mpz_class& den)
    : v_(make_canonical(num, den)) {}

Rat Rat::from_string(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) {
    return Rat(mpz_class(text), 1);
  }
  return Rat(mpz_class(text.substr(0, slash)),
             mpz_class(text.substr(slash + 1)));
}

std::string Rat::to_string() const {
  if (is_integer()) {
    return v_.get_num().get_str();
  }
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Rat Rat::operator-() const { return Rat(mpq_class(-v_)); }
Rat Rat::operator+(const Rat& o) const { return Rat(mpq_class(v_ + o.v_)); }
Rat Rat::operator-(const Rat& o) const { return Rat(mpq_class(v_ - o.v_)); }
Rat Rat::operator*(const Rat& o) const { return Rat(mpq_class(v_ * o.v_)); }

Rat Rat::operator/(const Rat& o) const {
  if (o.is_zero()) {
    throw std::invalid_argument("Rat: division by zero");
  }
  return Rat(mpq_class(v_ / o.v_));
}

Rat& Rat::operator+=(const Rat& o) { return *this = *this + o; }
Rat& Rat::operator-=(const Rat& o) { return *this = *this - o; }
Rat& Rat::operator*=(const Rat& o) { return *this = *this * o; }
Rat& Rat::operator/=(const Rat& o) { return *this = *this / o; }

Rat Rat::reciprocal() const {
  if (is_zero()) {
    throw std::invalid_argument("Rat: reciprocal of zero");
  }
  return Rat(den(), num());
}

Rat Rat::pow(const Rat& base, unsigned exp) {
  return Rat(ipow(base.num(), exp), ipow(base.den(), exp));
}

mpz_class binomial(long n, long r) {
  if (n < 0 || r < 0 || r > n) {
    return 0;
  }
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n),
               static_cast<unsigned long>(r));
  return out;
}

mpz_class ipow(const mpz_class& base, unsigned exp) {
  mpz_class out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
  return out;
}

}  // namespace pirsi

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

#include <stdexcept>
#include <string>

namespace pirsi {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A parameter or index is outside its admissible range.
class RangeError : public Error {
 public:
  using Error::Error;
};

// The requested field order is not a prime.
class NonPrimeFieldError : public Error {
 public:
  using Error::Error;
};

// An operation requiring the full sub-packetization L = N-1 was invoked
// with a different L.
class SubpacketizationMismatch : public Error {
 public:
  using Error::Error;
};

// Two field elements with different moduli were combined.
class FieldMismatch : public Error {
 public:
  using Error::Error;
};

// A sub-packet index points outside the database.
class IndexError : public Error {
 public:
  using Error::Error;
};

// The number of answers does not match the number of servers.
class TranscriptMismatch : public Error {
 public:
  using Error::Error;
};

// An exhaustive enumeration would exceed the configured item cap.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

// A query vector has a support size the scheme can never emit.
class ClassificationError : public Error {
 public:
  using Error::Error;
};

// A malformed frame was seen on the wire.
class TransportError : public Error {
 public:
  using Error::Error;
};

// The harness detected a wrong recovery; always a bug, never expected.
class RecoveryMismatch : public Error {
 public:
  using Error::Error;
};

}  // namespace pirsi

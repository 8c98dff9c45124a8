// Copyright 2026 The Authors.
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

#ifndef SFMLB_ERRORS_H_
#define SFMLB_ERRORS_H_

#include <stdexcept>
#include <string>

namespace sfmlb {

// Caller broke a precondition: mismatched ground sizes, containment
// violations, unsupported parameters, oversize enumeration requests.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ArithmeticError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A user-supplied function broke the hypotheses of the construction
// (e.g. an inner function value outside [0, M]).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// An oracle answer could not have come from any member of the family.
class CorruptedOracleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Replay of a transcript disagreed with the instance it was finalized into.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace sfmlb

#endif  // SFMLB_ERRORS_H_

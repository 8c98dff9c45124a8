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

#include "sfmlb/exact_value.h"

#include <cctype>
#include <utility>

#include "sfmlb/errors.h"

namespace sfmlb {
namespace {

bool AllDigits(std::string_view text) {
  if (text.empty()) return false;
  for (char c : text) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

static_assert(sizeof(long) == sizeof(std::int64_t),
              "GMP si constructors are used for int64 values");

ExactValue::ExactValue(std::int64_t integer)
    : value_(static_cast<long>(integer)) {}

ExactValue::ExactValue(std::int64_t numerator, std::int64_t denominator) {
  if (denominator == 0) throw ArithmeticError("zero denominator");
  value_ = mpq_class(mpz_class(static_cast<long>(numerator)),
                     mpz_class(static_cast<long>(denominator)));
  value_.canonicalize();
}

ExactValue::ExactValue(mpq_class value) : value_(std::move(value)) {
  value_.canonicalize();
}

ExactValue ExactValue::Parse(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && body.front() == '-') {
    negative = true;
    body.remove_prefix(1);
  }
  std::string_view num = body;
  std::string_view den = "1";
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    num = body.substr(0, slash);
    den = body.substr(slash + 1);
  }
  if (!AllDigits(num) || !AllDigits(den)) {
    throw ParseError("malformed rational \"" + std::string(text) + "\"");
  }
  mpz_class p(std::string(num), 10);
  mpz_class q(std::string(den), 10);
  if (q == 0) {
    throw ParseError("zero denominator in \"" + std::string(text) + "\"");
  }
  if (negative) p = -p;
  ExactValue out;
  out.value_ = mpq_class(p, q);
  out.value_.canonicalize();
  return out;
}

std::string ExactValue::ToString() const { return value_.get_str(10); }

bool ExactValue::is_reduced() const {
  if (value_.get_den() <= 0) return false;
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
  return g == 1;
}

ExactValue& ExactValue::operator+=(const ExactValue& other) {
  value_ += other.value_;
  return *this;
}

ExactValue& ExactValue::operator-=(const ExactValue& other) {
  value_ -= other.value_;
  return *this;
}

ExactValue& ExactValue::operator*=(const ExactValue& other) {
  value_ *= other.value_;
  return *this;
}

ExactValue& ExactValue::operator/=(const ExactValue& other) {
  if (other.is_zero()) throw ArithmeticError("division by zero");
  value_ /= other.value_;
  return *this;
}

}  // namespace sfmlb

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

#ifndef SFMLB_EXACT_VALUE_H_
#define SFMLB_EXACT_VALUE_H_

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace sfmlb {

// Arbitrary-precision rational, always reduced with a positive denominator.
// Function values in the layered family shrink geometrically with depth,
// so nothing in this library ever converts them to floating point except
// for reporting.
class ExactValue {
 public:
  ExactValue() = default;
  ExactValue(std::int64_t integer);  // NOLINT(runtime/explicit)
  ExactValue(std::int64_t numerator, std::int64_t denominator);
  explicit ExactValue(mpq_class value);

  // Accepts "[-]p/q" or "[-]p" with decimal digits and q > 0; the result is
  // reduced. Throws ParseError on anything else.
  static ExactValue Parse(std::string_view text);

  // "p/q" in lowest terms, or just "p" when the denominator is 1.
  std::string ToString() const;
  double ToDouble() const { return value_.get_d(); }

  mpz_class numerator() const { return value_.get_num(); }
  mpz_class denominator() const { return value_.get_den(); }
  bool is_zero() const { return sgn(value_) == 0; }
  bool is_integer() const { return value_.get_den() == 1; }
  // True iff gcd(|num|, den) = 1 and den > 0.
  bool is_reduced() const;

  const mpq_class& raw() const { return value_; }

  ExactValue operator-() const { return ExactValue(mpq_class(-value_)); }
  ExactValue& operator+=(const ExactValue& other);
  ExactValue& operator-=(const ExactValue& other);
  ExactValue& operator*=(const ExactValue& other);
  // Throws ArithmeticError on division by zero.
  ExactValue& operator/=(const ExactValue& other);

  friend ExactValue operator+(ExactValue a, const ExactValue& b) {
    return a += b;
  }
  friend ExactValue operator-(ExactValue a, const ExactValue& b) {
    return a -= b;
  }
  friend ExactValue operator*(ExactValue a, const ExactValue& b) {
    return a *= b;
  }
  friend ExactValue operator/(ExactValue a, const ExactValue& b) {
    return a /= b;
  }

  friend bool operator==(const ExactValue& a, const ExactValue& b) {
    return a.value_ == b.value_;
  }
  friend std::strong_ordering operator<=>(const ExactValue& a,
                                          const ExactValue& b) {
    int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater
                          : std::strong_ordering::equal);
  }

 private:
  mpq_class value_;
};

}  // namespace sfmlb

#endif  // SFMLB_EXACT_VALUE_H_

// Copyright 2026 The g24 Authors
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

#ifndef G24_ARITH_HPP_
#define G24_ARITH_HPP_

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <string>
#include <string_view>

namespace g24 {

// Expression templates are disabled so that `auto` always yields a value.
using Int = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                          boost::multiprecision::et_off>;
using Rational =
    boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                  boost::multiprecision::et_off>;
using BigFloat =
    boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                  boost::multiprecision::et_off>;

// Exact reading of "p/q", "-12", "1.25", "3.5e-4". Decimal literals become
// the rational they denote; nothing is rounded.
Rational ParseRational(std::string_view text);
Int ParseInt(std::string_view text);

std::string ToString(const Int& value);
// Always "p/q" (q = 1 included) so rationals round-trip unambiguously.
std::string ToString(const Rational& value);

// 17 significant digits, the round-trip width of an IEEE double.
std::string FormatReal(double value);
std::string FormatReal(const BigFloat& value, int digits = 17);

// Largest dyadic rational m / 2^bits not exceeding `value` (value > 0).
Rational DyadicFloor(double value, int bits = 60);

Int Gcd(const Int& a, const Int& b);
// Nearest integer to a / b, ties rounded toward +infinity; b != 0.
Int RoundDiv(const Int& a, const Int& b);

// Sets the MPFR working precision (decimal digits) for its lifetime.
class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned digits);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_;
};

}  // namespace g24

#endif  // G24_ARITH_HPP_

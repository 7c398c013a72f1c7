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

#include "g24/arith.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>

#include "g24/error.hpp"

namespace g24 {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDependentBasis: return "DependentBasis";
    case ErrorCode::kNotDecomposable: return "NotDecomposable";
    case ErrorCode::kNearDependent: return "NearDependent";
    case ErrorCode::kZeroVector: return "ZeroVector";
    case ErrorCode::kBoundTooLarge: return "BoundTooLarge";
    case ErrorCode::kEmptyRange: return "EmptyRange";
    case ErrorCode::kNotIncident: return "NotIncident";
    case ErrorCode::kPrecisionExhausted: return "PrecisionExhausted";
    case ErrorCode::kObstacleEqualsQ: return "ObstacleEqualsQ";
    case ErrorCode::kRetryExhausted: return "RetryExhausted";
    case ErrorCode::kEnumerationCapExceeded: return "EnumerationCapExceeded";
    case ErrorCode::kParse: return "ParseError";
    case ErrorCode::kIo: return "IoError";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

namespace {

bool IsDigits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

Int Pow10(unsigned n) {
  Int r = 1;
  for (unsigned i = 0; i < n; ++i) r *= 10;
  return r;
}

[[noreturn]] void Fail(std::string_view text, std::size_t offset,
                       const std::string& what) {
  throw ParseError(what + " in '" + std::string(text) + "'", 1,
                   static_cast<int>(offset) + 1);
}

// Reads an optionally signed integer; returns the index past it.
std::size_t ReadSign(std::string_view s, std::size_t i, bool* negative) {
  *negative = false;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
    *negative = s[i] == '-';
    ++i;
  }
  return i;
}

}  // namespace

Int ParseInt(std::string_view text) {
  bool negative = false;
  std::size_t i = ReadSign(text, 0, &negative);
  std::string_view digits = text.substr(i);
  if (!IsDigits(digits)) Fail(text, i, "expected an integer");
  Int value{std::string(digits)};
  return negative ? Int(-value) : value;
}

Rational ParseRational(std::string_view text) {
  if (text.empty()) Fail(text, 0, "empty number");
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Int num = ParseInt(text.substr(0, slash));
    std::string_view den_text = text.substr(slash + 1);
    if (!IsDigits(den_text)) Fail(text, slash + 1, "expected a positive denominator");
    Int den{std::string(den_text)};
    if (den == 0) Fail(text, slash + 1, "zero denominator");
    return Rational(num, den);
  }

  bool negative = false;
  std::size_t i = ReadSign(text, 0, &negative);
  std::size_t start = i;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
  std::string int_part(text.substr(start, i - start));
  std::string frac_part;
  if (i < text.size() && text[i] == '.') {
    std::size_t f = ++i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    frac_part = std::string(text.substr(f, i - f));
  }
  if (int_part.empty() && frac_part.empty()) Fail(text, start, "expected digits");
  long exponent = 0;
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    std::size_t e = ++i;
    bool exp_negative = false;
    i = ReadSign(text, i, &exp_negative);
    std::string_view exp_digits = text.substr(i);
    if (!IsDigits(exp_digits) || exp_digits.size() > 6) Fail(text, e, "bad exponent");
    exponent = std::stol(std::string(exp_digits));
    if (exp_negative) exponent = -exponent;
    i = text.size();
  }
  if (i != text.size()) Fail(text, i, "unexpected character");

  Int mantissa(int_part.empty() && frac_part.empty() ? std::string("0")
                                                     : int_part + frac_part);
  long scale = exponent - static_cast<long>(frac_part.size());
  Rational value = scale >= 0 ? Rational(mantissa * Pow10(static_cast<unsigned>(scale)))
                              : Rational(mantissa, Pow10(static_cast<unsigned>(-scale)));
  return negative ? Rational(-value) : value;
}

std::string ToString(const Int& value) { return value.str(); }

std::string ToString(const Rational& value) {
  return boost::multiprecision::numerator(value).str() + "/" +
         boost::multiprecision::denominator(value).str();
}

std::string FormatReal(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

std::string FormatReal(const BigFloat& value, int digits) {
  return value.str(digits, std::ios_base::fmtflags(0));
}

Rational DyadicFloor(double value, int bits) {
  if (!(value > 0) || !std::isfinite(value)) {
    throw Error(ErrorCode::kInvalidArgument, "DyadicFloor needs a positive finite value");
  }
  int exponent = 0;
  std::frexp(value, &exponent);
  int shift = bits - exponent;
  double scaled = std::floor(std::ldexp(value, shift));
  Int m(scaled);
  Int two_pow = 1;
  two_pow <<= static_cast<unsigned>(shift >= 0 ? shift : 0);
  if (shift >= 0) return Rational(m, two_pow);
  Int up = 1;
  up <<= static_cast<unsigned>(-shift);
  return Rational(m * up);
}

Int Gcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }

Int RoundDiv(const Int& a, const Int& b) {
  Int num = 2 * a + b;
  Int den = 2 * b;
  if (den < 0) {
    num = -num;
    den = -den;
  }
  Int q;
  mpz_fdiv_q(q.backend().data(), num.backend().data(), den.backend().data());
  return q;
}

PrecisionScope::PrecisionScope(unsigned digits) : saved_(BigFloat::default_precision()) {
  BigFloat::default_precision(digits);
}

PrecisionScope::~PrecisionScope() { BigFloat::default_precision(saved_); }

}  // namespace g24

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

#ifndef G24_SCHEDULE_HPP_
#define G24_SCHEDULE_HPP_

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "g24/arith.hpp"

namespace g24 {

// A strictly positive, non-increasing target function phi on [1, inf).
//
//   power      phi(t) = C t^-K
//   power-log  phi(t) = C t^-K / ln(t + e - 1)     (phi(1) = C)
//   table      log-log interpolation of samples (t_j, phi_j), constant
//              before the first and after the last sample
class Schedule {
 public:
  enum class Family { kPower, kPowerLog, kTable };

  // "t^-K", "C*t^-K", "C*t^-K/log", or "@file.csv" (rows "t,phi", an
  // optional header line). Throws ParseError.
  static Schedule Parse(std::string_view spec);
  static Schedule Power(Rational exponent, Rational scale = Rational(1));
  static Schedule PowerLog(Rational exponent, Rational scale = Rational(1));
  static Schedule FromSamples(std::vector<std::pair<Rational, Rational>> samples);

  Family family() const { return family_; }
  const Rational& exponent() const { return exponent_; }
  const Rational& scale() const { return scale_; }
  const std::vector<std::pair<Rational, Rational>>& samples() const { return samples_; }

  double operator()(double t) const;
  // At the current MPFR precision.
  BigFloat Evaluate(const BigFloat& t) const;
  BigFloat AtHeightSq(const Int& height_sq) const;

  // Positive and non-increasing on the grid t = 2^(k/8), k = 0..320.
  bool Validate(std::string* why = nullptr) const;

  std::string ToSpec() const;
  std::string_view FamilyName() const;

  bool operator==(const Schedule&) const = default;

 private:
  Schedule() = default;

  Family family_ = Family::kPower;
  Rational exponent_ = 1;
  Rational scale_ = 1;
  std::vector<std::pair<Rational, Rational>> samples_;
};

}  // namespace g24

#endif  // G24_SCHEDULE_HPP_

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

#include "g24/schedule.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "g24/error.hpp"

namespace g24 {

namespace {

BigFloat ToBig(const Rational& r) {
  return BigFloat(boost::multiprecision::numerator(r)) /
         BigFloat(boost::multiprecision::denominator(r));
}

std::string Trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::pair<Rational, Rational>> ReadSampleFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open schedule table " + path.string());
  std::vector<std::pair<Rational, Rational>> samples;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string trimmed = Trim(line);
    if (trimmed.empty() || trimmed[0] == '#') continue;
    auto comma = trimmed.find(',');
    if (comma == std::string::npos) {
      throw ParseError("expected 't,phi'", line_no, static_cast<int>(trimmed.size()) + 1);
    }
    std::string t_text = Trim(std::string_view(trimmed).substr(0, comma));
    std::string phi_text = Trim(std::string_view(trimmed).substr(comma + 1));
    if (samples.empty() && line_no == 1 && !t_text.empty() &&
        std::isalpha(static_cast<unsigned char>(t_text[0]))) {
      continue;  // header
    }
    try {
      samples.emplace_back(ParseRational(t_text), ParseRational(phi_text));
    } catch (const ParseError& e) {
      throw ParseError("bad sample", line_no, e.column());
    }
  }
  return samples;
}

}  // namespace

Schedule Schedule::Power(Rational exponent, Rational scale) {
  Schedule s;
  s.family_ = Family::kPower;
  s.exponent_ = std::move(exponent);
  s.scale_ = std::move(scale);
  return s;
}

Schedule Schedule::PowerLog(Rational exponent, Rational scale) {
  Schedule s = Power(std::move(exponent), std::move(scale));
  s.family_ = Family::kPowerLog;
  return s;
}

Schedule Schedule::FromSamples(std::vector<std::pair<Rational, Rational>> samples) {
  if (samples.empty()) throw Error(ErrorCode::kInvalidArgument, "empty schedule table");
  Schedule s;
  s.family_ = Family::kTable;
  s.samples_ = std::move(samples);
  return s;
}

Schedule Schedule::Parse(std::string_view spec) {
  std::string text = Trim(spec);
  if (!text.empty() && text[0] == '@') {
    return FromSamples(ReadSampleFile(text.substr(1)));
  }
  std::string_view rest = text;
  Rational scale = 1;
  int offset = 0;
  if (auto star = rest.find('*'); star != std::string_view::npos) {
    try {
      scale = ParseRational(rest.substr(0, star));
    } catch (const ParseError& e) {
      throw ParseError("bad scale in schedule '" + text + "'", 1, e.column());
    }
    rest.remove_prefix(star + 1);
    offset = static_cast<int>(star) + 1;
  }
  bool with_log = false;
  if (rest.size() >= 4 && rest.substr(rest.size() - 4) == "/log") {
    with_log = true;
    rest.remove_suffix(4);
  }
  if (rest.substr(0, 3) != "t^-") {
    throw ParseError("schedule must look like t^-K, C*t^-K or C*t^-K/log", 1, offset + 1);
  }
  Rational exponent;
  try {
    exponent = ParseRational(rest.substr(3));
  } catch (const ParseError& e) {
    throw ParseError("bad exponent in schedule '" + text + "'", 1, offset + 3 + e.column());
  }
  if (exponent <= 0 || scale <= 0) {
    throw ParseError("schedule needs K > 0 and C > 0", 1, 1);
  }
  return with_log ? PowerLog(exponent, scale) : Power(exponent, scale);
}

BigFloat Schedule::Evaluate(const BigFloat& t) const {
  using boost::multiprecision::exp;
  using boost::multiprecision::log;
  using boost::multiprecision::pow;
  switch (family_) {
    case Family::kPower:
      return ToBig(scale_) * pow(t, -ToBig(exponent_));
    case Family::kPowerLog: {
      BigFloat e = exp(BigFloat(1));
      return ToBig(scale_) * pow(t, -ToBig(exponent_)) / log(t + e - 1);
    }
    case Family::kTable: {
      if (t <= ToBig(samples_.front().first)) return ToBig(samples_.front().second);
      for (std::size_t j = 1; j < samples_.size(); ++j) {
        BigFloat t1 = ToBig(samples_[j].first);
        if (t <= t1) {
          BigFloat t0 = ToBig(samples_[j - 1].first);
          BigFloat y0 = log(ToBig(samples_[j - 1].second));
          BigFloat y1 = log(ToBig(samples_[j].second));
          BigFloat w = (log(t) - log(t0)) / (log(t1) - log(t0));
          return exp(y0 + w * (y1 - y0));
        }
      }
      return ToBig(samples_.back().second);
    }
  }
  return BigFloat(0);
}

double Schedule::operator()(double t) const {
  PrecisionScope scope(30);
  return Evaluate(BigFloat(t)).convert_to<double>();
}

BigFloat Schedule::AtHeightSq(const Int& height_sq) const {
  return Evaluate(boost::multiprecision::sqrt(BigFloat(height_sq)));
}

bool Schedule::Validate(std::string* why) const {
  auto fail = [why](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (family_ == Family::kTable) {
    for (std::size_t j = 0; j < samples_.size(); ++j) {
      if (samples_[j].first < 1) return fail("table abscissae must be >= 1");
      if (samples_[j].second <= 0) return fail("table values must be positive");
      if (j > 0 && samples_[j].first <= samples_[j - 1].first) {
        return fail("table abscissae must increase");
      }
      if (j > 0 && samples_[j].second > samples_[j - 1].second) {
        return fail("table values must not increase");
      }
    }
  } else if (exponent_ <= 0 || scale_ <= 0) {
    return fail("exponent and scale must be positive");
  }
  PrecisionScope scope(30);
  BigFloat previous = 0;
  for (int k = 0; k <= 320; ++k) {
    BigFloat t = boost::multiprecision::pow(BigFloat(2), BigFloat(k) / 8);
    BigFloat v = Evaluate(t);
    if (!(v > 0)) return fail("phi is not positive at t = " + FormatReal(t));
    if (k > 0 && v > previous) return fail("phi increases near t = " + FormatReal(t));
    previous = v;
  }
  return true;
}

std::string_view Schedule::FamilyName() const {
  switch (family_) {
    case Family::kPower: return "power";
    case Family::kPowerLog: return "power-log";
    case Family::kTable: return "table";
  }
  return "unknown";
}

std::string Schedule::ToSpec() const {
  auto plain = [](const Rational& r) {
    return boost::multiprecision::denominator(r) == 1 ? boost::multiprecision::numerator(r).str()
                                                      : ToString(r);
  };
  switch (family_) {
    case Family::kPower:
      return (scale_ == 1 ? std::string() : plain(scale_) + "*") + "t^-" + plain(exponent_);
    case Family::kPowerLog:
      return plain(scale_) + "*t^-" + plain(exponent_) + "/log";
    case Family::kTable: {
      std::ostringstream os;
      os << "table(" << samples_.size() << " samples)";
      return os.str();
    }
  }
  return {};
}

}  // namespace g24

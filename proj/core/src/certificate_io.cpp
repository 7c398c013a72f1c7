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

#include <boost/uuid/detail/sha1.hpp>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "g24/error.hpp"
#include "g24/singular.hpp"
#include "json.hpp"

namespace g24 {

namespace {

using nlohmann::json;

json IntJson(const Int& x) { return ToString(x); }

json SubspaceJson(const RationalSubspace& s) {
  json p = json::array();
  for (const Int& x : s.plucker().coords()) p.push_back(IntJson(x));
  json basis = json::array();
  for (const IntVec4& row : s.lattice_basis().rows) {
    json r = json::array();
    for (const Int& x : row) r.push_back(IntJson(x));
    basis.push_back(std::move(r));
  }
  return json{{"plucker", std::move(p)}, {"basis", std::move(basis)},
              {"height_sq", IntJson(s.height_sq())}};
}

json ScheduleJson(const Schedule& phi) {
  json out{{"family", std::string(phi.FamilyName())}};
  if (phi.family() == Schedule::Family::kTable) {
    json samples = json::array();
    for (const auto& [t, v] : phi.samples()) samples.push_back({ToString(t), ToString(v)});
    out["samples"] = std::move(samples);
  } else {
    out["exponent"] = ToString(phi.exponent());
    out["scale"] = ToString(phi.scale());
  }
  return out;
}

json OptionalReal(const std::optional<double>& x) {
  return x ? json(FormatReal(*x)) : json(nullptr);
}

json Body(const SingularCertificate& cert) {
  json stages = json::array();
  for (const Stage& st : cert.stages) {
    stages.push_back(json{
        {"index", std::to_string(st.index)},
        {"q", SubspaceJson(st.q)},
        {"height_sq", IntJson(st.height_sq())},
        {"region",
         json{{"center", SubspaceJson(st.region.center)},
              {"radius", ToString(st.region.radius)},
              {"witness", SubspaceJson(st.region.witness)}}},
        {"pivot", st.pivot ? SubspaceJson(*st.pivot) : json(nullptr)},
        {"margin", OptionalReal(st.margin)},
        {"threshold", OptionalReal(st.threshold)},
    });
  }
  return json{{"format_version", std::to_string(cert.format_version)},
              {"schedule", ScheduleJson(cert.schedule)},
              {"stages", std::move(stages)},
              {"output", SubspaceJson(cert.output)},
              {"t_ver", std::to_string(cert.t_ver)}};
}

// Reading --------------------------------------------------------------

[[noreturn]] void Malformed(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::kParse, where + ": " + what);
}

const json& Field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) Malformed(where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) Malformed(where, std::string("missing key '") + key + "'");
  return *it;
}

std::string Text(const json& j, const std::string& where) {
  if (!j.is_string()) Malformed(where, "expected a string");
  return j.get<std::string>();
}

Int IntField(const json& j, const std::string& where) {
  try {
    return ParseInt(Text(j, where));
  } catch (const ParseError& e) {
    Malformed(where, e.what());
  }
}

Rational RationalField(const json& j, const std::string& where) {
  try {
    return ParseRational(Text(j, where));
  } catch (const ParseError& e) {
    Malformed(where, e.what());
  }
}

int SmallInt(const json& j, const std::string& where) {
  Int v = IntField(j, where);
  if (v < -1000000 || v > 1000000) Malformed(where, "integer out of range");
  return v.convert_to<int>();
}

std::optional<double> RealField(const json& j, const std::string& where) {
  if (j.is_null()) return std::nullopt;
  std::string s = Text(j, where);
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) Malformed(where, "expected a real");
  if (FormatReal(v) != s) Malformed(where, "real is not in canonical %.17g form");
  return v;
}

RationalSubspace SubspaceField(const json& j, const std::string& where) {
  const json& p = Field(j, "plucker", where);
  if (!p.is_array() || p.size() != 6) Malformed(where + ".plucker", "expected 6 entries");
  Vec6<Int> coords;
  for (std::size_t k = 0; k < 6; ++k) coords[k] = IntField(p[k], where + ".plucker");
  const json& b = Field(j, "basis", where);
  if (!b.is_array() || b.size() != 2) Malformed(where + ".basis", "expected 2 rows");
  IntBasis basis;
  for (std::size_t r = 0; r < 2; ++r) {
    if (!b[r].is_array() || b[r].size() != 4) Malformed(where + ".basis", "expected 4 entries");
    for (std::size_t c = 0; c < 4; ++c) basis.rows[r][c] = IntField(b[r][c], where + ".basis");
  }
  Int h = IntField(Field(j, "height_sq", where), where + ".height_sq");
  try {
    return RationalSubspace::FromParts(coords, basis, h);
  } catch (const Error& e) {
    Malformed(where, e.what());
  }
}

Schedule ScheduleField(const json& j) {
  std::string family = Text(Field(j, "family", "schedule"), "schedule.family");
  try {
    if (family == "table") {
      const json& samples = Field(j, "samples", "schedule");
      if (!samples.is_array()) Malformed("schedule.samples", "expected an array");
      std::vector<std::pair<Rational, Rational>> out;
      for (const json& s : samples) {
        if (!s.is_array() || s.size() != 2) Malformed("schedule.samples", "expected pairs");
        out.emplace_back(RationalField(s[0], "schedule.samples"),
                         RationalField(s[1], "schedule.samples"));
      }
      return Schedule::FromSamples(std::move(out));
    }
    Rational k = RationalField(Field(j, "exponent", "schedule"), "schedule.exponent");
    Rational c = RationalField(Field(j, "scale", "schedule"), "schedule.scale");
    if (family == "power") return Schedule::Power(k, c);
    if (family == "power-log") return Schedule::PowerLog(k, c);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kParse) throw;
    Malformed("schedule", e.what());
  }
  Malformed("schedule.family", "unknown family '" + family + "'");
}

std::string Hex(const boost::uuids::detail::sha1::digest_type& d) {
  std::string out;
  char buf[9];
  for (unsigned int word : d) {
    std::snprintf(buf, sizeof buf, "%08x", word);
    out += buf;
  }
  return out;
}

}  // namespace

std::string CertificateDigest(const SingularCertificate& cert) {
  std::string canonical = Body(cert).dump();
  boost::uuids::detail::sha1 sha;
  sha.process_bytes(canonical.data(), canonical.size());
  boost::uuids::detail::sha1::digest_type d;
  sha.get_digest(d);
  return Hex(d);
}

std::string CertificateToJson(const SingularCertificate& cert) {
  json j = Body(cert);
  j["digest"] = cert.digest;
  return j.dump(2) + "\n";
}

SingularCertificate CertificateFromJson(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    int line = 1, column = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError("certificate is not valid JSON", line, column);
  }
  if (!j.is_object()) Malformed("certificate", "expected an object");
  for (const auto& [key, value] : j.items()) {
    static const char* kKeys[] = {"format_version", "schedule", "stages", "output", "t_ver",
                                  "digest"};
    if (std::find(std::begin(kKeys), std::end(kKeys), key) == std::end(kKeys)) {
      Malformed("certificate", "unexpected key '" + key + "'");
    }
  }

  int version = SmallInt(Field(j, "format_version", "certificate"), "format_version");
  Schedule phi = ScheduleField(Field(j, "schedule", "certificate"));
  const json& stages = Field(j, "stages", "certificate");
  if (!stages.is_array() || stages.empty()) Malformed("stages", "expected a non-empty array");
  std::vector<Stage> out;
  for (std::size_t i = 0; i < stages.size(); ++i) {
    const json& st = stages[i];
    std::string where = "stages[" + std::to_string(i) + "]";
    int index = SmallInt(Field(st, "index", where), where + ".index");
    RationalSubspace q = SubspaceField(Field(st, "q", where), where + ".q");
    Int h = IntField(Field(st, "height_sq", where), where + ".height_sq");
    if (h != q.height_sq()) Malformed(where + ".height_sq", "differs from the height of q");
    const json& reg = Field(st, "region", where);
    GrassRegion region{SubspaceField(Field(reg, "center", where + ".region"), where + ".region.center"),
                       RationalField(Field(reg, "radius", where + ".region"), where + ".region.radius"),
                       SubspaceField(Field(reg, "witness", where + ".region"), where + ".region.witness")};
    const json& pivot_json = Field(st, "pivot", where);
    std::optional<RationalSubspace> pivot;
    if (!pivot_json.is_null()) pivot = SubspaceField(pivot_json, where + ".pivot");
    std::optional<double> margin = RealField(Field(st, "margin", where), where + ".margin");
    std::optional<double> threshold =
        RealField(Field(st, "threshold", where), where + ".threshold");
    out.push_back(Stage{index, std::move(q), std::move(region), std::move(pivot), margin,
                        threshold});
  }
  RationalSubspace output = SubspaceField(Field(j, "output", "certificate"), "output");
  int t_ver = SmallInt(Field(j, "t_ver", "certificate"), "t_ver");
  std::string digest = Text(Field(j, "digest", "certificate"), "digest");
  return SingularCertificate{version, std::move(phi), std::move(out), std::move(output), t_ver,
                             std::move(digest)};
}

}  // namespace g24

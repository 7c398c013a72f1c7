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

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "g24/error.hpp"
#include "g24/exact_metric.hpp"
#include "g24/singular.hpp"

namespace g24 {

namespace {

class Recorder {
 public:
  explicit Recorder(VerificationReport* report) : report_(report) {}

  bool Check(std::string name, bool passed, std::string detail = {},
             std::optional<double> slack = std::nullopt) {
    report_->checks.push_back(CheckResult{std::move(name), passed, slack, std::move(detail)});
    return passed;
  }

 private:
  VerificationReport* report_;
};

std::string StageName(std::size_t i, const char* what) {
  return "stage[" + std::to_string(i + 1) + "]." + what;
}

// |pairing| of the unit Plucker vectors.
BigFloat UnitPairing(const PluckerInt& p, const PluckerInt& q) {
  return BigFloat(boost::multiprecision::abs(IncidencePairing(p, q))) /
         SqrtOf(p.NormSq() * q.NormSq());
}

bool InsideBall(const GrassRegion& outer, const PluckerInt& c, const Rational& r) {
  if (outer.radius >= 2) return true;
  if (r >= outer.radius) return false;
  return ChordalAtMost(outer.center.plucker(), c, outer.radius - r);
}

bool RelativelyClose(double stored, const BigFloat& exact) {
  double e = exact.convert_to<double>();
  return std::fabs(stored - e) <= 1e-12 * std::max(std::fabs(e), 1e-300);
}

void CheckSubspaces(const SingularCertificate& cert, Recorder& rec) {
  bool ok = true;
  std::string detail;
  auto visit = [&](const RationalSubspace& s, const std::string& where) {
    const PluckerInt& p = s.plucker();
    if (QuadricResidual(p.coords()) != 0 || s.height_sq() != p.NormSq() ||
        ToPlucker(s.lattice_basis()) != p) {
      ok = false;
      if (detail.empty()) detail = where;
    }
  };
  for (std::size_t i = 0; i < cert.stages.size(); ++i) {
    const Stage& st = cert.stages[i];
    std::string base = "stage[" + std::to_string(i + 1) + "]";
    visit(st.q, base + ".q");
    visit(st.region.center, base + ".center");
    visit(st.region.witness, base + ".witness");
    if (st.pivot) visit(*st.pivot, base + ".pivot");
  }
  visit(cert.output, "output");
  rec.Check("quadric_membership", ok, ok ? "every stored Plucker vector" : detail);
}

void CheckStage(const SingularCertificate& cert, std::size_t i, const HeightTable* table,
                Recorder& rec) {
  const Stage& st = cert.stages[i];
  const bool last = i + 1 == cert.stages.size();
  rec.Check(StageName(i, "index"), st.index == static_cast<int>(i) + 1,
            "stored " + std::to_string(st.index));
  rec.Check(StageName(i, "radius_positive"), st.region.radius > 0,
            ToString(st.region.radius));
  rec.Check(StageName(i, "witness_incidence"), Incident(st.q, st.region.witness));
  rec.Check(StageName(i, "witness_inside"),
            st.region.radius >= 2 ||
                ChordalLess(st.region.center.plucker(), st.region.witness.plucker(),
                            st.region.radius));
  if (i > 0) {
    const Stage& prev = cert.stages[i - 1];
    rec.Check(StageName(i, "height_increasing"), prev.height_sq() < st.height_sq(),
              ToString(prev.height_sq()) + " < " + ToString(st.height_sq()));
    rec.Check(StageName(i, "nesting"),
              st.region.radius < prev.region.radius &&
                  InsideBall(prev.region, st.region.center.plucker(), st.region.radius));
  }
  const bool has_link = st.pivot && st.margin && st.threshold;
  const bool has_any = st.pivot || st.margin || st.threshold;
  if (!rec.Check(StageName(i, "link_fields"), last ? !has_any : has_link,
                 last ? "last stage carries no link" : "pivot, margin and threshold")) {
    return;
  }
  if (last) return;

  const Stage& next = cert.stages[i + 1];
  const RationalSubspace& pivot = *st.pivot;
  rec.Check(StageName(i, "pivot_incidence"), Incident(st.q, pivot) && !(pivot == st.q));
  rec.Check(StageName(i, "pivot_inside"),
            st.region.radius >= 2 ||
                ChordalLess(st.region.center.plucker(), pivot.plucker(), st.region.radius));
  rec.Check(StageName(i, "next_incident_to_pivot"), Incident(pivot, next.q));

  BigFloat psi2 = SecondSineExact(st.q.plucker(), pivot.plucker());
  BigFloat half = psi2 / 2;
  double margin = *st.margin;
  rec.Check(StageName(i, "margin"), margin > 0 && BigFloat(margin) <= half &&
                                        RelativelyClose(margin, half),
            "stored " + FormatReal(margin) + ", recomputed " + FormatReal(half));
  BigFloat phi_next = cert.schedule.AtHeightSq(next.height_sq());
  double threshold = *st.threshold;
  rec.Check(StageName(i, "threshold"),
            threshold > 0 && BigFloat(threshold) <= phi_next &&
                RelativelyClose(threshold, phi_next),
            "stored " + FormatReal(threshold) + ", phi " + FormatReal(phi_next));

  // Everything in the next ball inherits (u1) and (u2) since psi2 and the
  // unit pairing are 1-Lipschitz in the chordal metric.
  const PluckerInt& c = next.region.center.plucker();
  BigFloat r = BigFloat(boost::multiprecision::numerator(next.region.radius)) /
               BigFloat(boost::multiprecision::denominator(next.region.radius));
  BigFloat u2 = BigFloat(margin) * BigFloat(threshold) - (UnitPairing(c, st.q.plucker()) + r);
  rec.Check(StageName(i + 1, "u2_region"), u2 > 0, "sup Psi(A, Q_i) < margin * threshold",
            u2.convert_to<double>());
  BigFloat u1 = SecondSineExact(c, st.q.plucker()) - r - BigFloat(margin);
  rec.Check(StageName(i + 1, "u1_region"), u1 > 0, "inf psi2(A, Q_i) > margin",
            u1.convert_to<double>());

  if (table) {
    Int low = i > 0 ? cert.stages[i - 1].height_sq() : Int(0);
    std::size_t begin = table->CountUpTo(low.convert_to<std::int64_t>());
    std::size_t end = table->CountUpTo(st.height_sq().convert_to<std::int64_t>());
    bool ok = true;
    double slack = std::numeric_limits<double>::infinity();
    Unit6 cu = UnitPlucker(c);
    double rd = next.region.radius.convert_to<double>();
    for (std::size_t k = begin; k < end; ++k) {
      PluckerInt p = table->Plucker(k);
      if (!PairingExceeds(c, p, next.region.radius)) ok = false;
      slack = std::min(slack, std::fabs(IncidencePairing(cu, table->UnitPluckerAt(k))) - rd);
    }
    rec.Check(StageName(i + 1, "obstacles"), ok,
              std::to_string(end - begin) + " rational subspaces with H in (H_" +
                  std::to_string(i) + ", H_" + std::to_string(i + 1) + "]",
              end > begin ? std::optional<double>(slack) : std::nullopt);
  }
}

}  // namespace

bool VerificationReport::AllPassed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

const CheckResult* VerificationReport::FirstFailure() const {
  for (const CheckResult& c : checks) {
    if (!c.passed) return &c;
  }
  return nullptr;
}

std::string VerificationReport::ToJson() const {
  auto quote = [](const std::string& s) {
    std::string out = "\"";
    for (char ch : s) {
      if (ch == '"' || ch == '\\') out += '\\';
      out += ch;
    }
    return out + "\"";
  };
  std::ostringstream os;
  os << "{\"passed\": " << (AllPassed() ? "true" : "false") << ", \"checks\": [";
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const CheckResult& c = checks[i];
    if (i) os << ", ";
    os << "{\"name\": " << quote(c.name) << ", \"passed\": " << (c.passed ? "true" : "false")
       << ", \"slack\": " << (c.slack ? FormatReal(*c.slack) : std::string("null"))
       << ", \"detail\": " << quote(c.detail) << "}";
  }
  os << "]}";
  return os.str();
}

VerificationReport VerifyCertificate(const SingularCertificate& cert, int t_ver,
                                     const VerifyOptions& options) {
  if (t_ver <= 0) t_ver = cert.t_ver;
  VerificationReport report;
  Recorder rec(&report);
  PrecisionScope precision(options.digits);

  rec.Check("format_version", cert.format_version == SingularCertificate::kFormatVersion,
            std::to_string(cert.format_version));
  rec.Check("integrity", cert.digest == CertificateDigest(cert), "sha1 of the certificate body");
  std::string why;
  rec.Check("schedule", cert.schedule.Validate(&why), why);
  if (!rec.Check("stages_present", !cert.stages.empty())) return report;
  CheckSubspaces(cert, rec);

  const std::size_t n = cert.stages.size();
  const Stage& last = cert.stages.back();
  const bool t_ok = t_ver >= 1 && t_ver <= options.enumeration.cap;
  rec.Check("t_ver_within_cap", t_ok,
            "t_ver " + std::to_string(t_ver) + ", cap " + std::to_string(options.enumeration.cap));

  // Heights the checks below need enumerated.
  const Int t_sq = Int(t_ver) * t_ver;
  const Int range_sq = std::min(last.height_sq(), t_sq);
  Int need_sq = range_sq;
  if (n >= 2) need_sq = std::max(need_sq, cert.stages[n - 2].height_sq());
  std::optional<HeightTable> table;
  if (t_ok) {
    try {
      if (need_sq > Int(options.enumeration.cap) * options.enumeration.cap) {
        throw Error(ErrorCode::kEnumerationCapExceeded, "obstacle heights beyond the cap");
      }
      table = LoadOrEnumerate(need_sq.convert_to<std::int64_t>(), options.enumeration);
      rec.Check("enumeration", true, "height_sq <= " + ToString(need_sq));
    } catch (const Error& e) {
      rec.Check("enumeration", false, e.what());
    }
  }

  for (std::size_t i = 0; i < n; ++i) CheckStage(cert, i, table ? &*table : nullptr, rec);

  const RationalSubspace& a = cert.output;
  rec.Check("output.inside_final_region",
            a == last.region.center || last.region.radius >= 2 ||
                ChordalLess(last.region.center.plucker(), a.plucker(), last.region.radius));
  rec.Check("output.height_exceeds_t_ver", a.height_sq() > t_sq,
            "height_sq " + std::to_string(a.height_sq().str().size()) + " digits");

  // (a): psi1(A, Q_i) < phi(H_{i+1}).
  for (std::size_t i = 0; i + 1 < n; ++i) {
    BigFloat psi = FirstSineExact(a.plucker(), cert.stages[i].q.plucker());
    BigFloat phi = cert.schedule.AtHeightSq(cert.stages[i + 1].height_sq());
    rec.Check("(a) stage[" + std::to_string(i + 1) + "]: psi1(A, Q_i) < phi(H_{i+1})", psi < phi,
              "psi1 " + FormatReal(psi) + ", phi " + FormatReal(phi),
              ((phi - psi) / phi).convert_to<double>());
  }

  if (!table) return report;

  // (b): exact non-incidence with every R of height <= min(H_N, t_ver).
  const std::int64_t range = range_sq.convert_to<std::int64_t>();
  const std::size_t count = table->CountUpTo(range);
  const Unit6 au = UnitPlucker(a.plucker());
  std::vector<double> psi(count);
  std::size_t incident = 0;
  for (std::size_t k = 0; k < count; ++k) {
    Unit6 b = table->UnitPluckerAt(k);
    psi[k] = FirstSineFromPlucker(au, b);
    if (std::fabs(IncidencePairing(au, b)) < 1e-6 &&
        IncidencePairing(a.plucker(), table->Plucker(k)) == 0) {
      ++incident;
    }
  }
  rec.Check("(b) non-incidence up to min(H_N, t_ver)", incident == 0,
            std::to_string(count) + " subspaces, " + std::to_string(incident) + " incident");

  // Sweep: 0 < psi_A(t) < phi(t) for integers t in [H_1, min(H_N, t_ver)].
  int t_hi = static_cast<int>(std::floor(std::sqrt(static_cast<double>(range)) + 1e-9));
  while (static_cast<std::int64_t>(t_hi + 1) * (t_hi + 1) <= range) ++t_hi;
  while (static_cast<std::int64_t>(t_hi) * t_hi > range) --t_hi;
  if (options.t_lim > 0) t_hi = std::min(t_hi, options.t_lim);
  const Int& h1 = cert.stages.front().height_sq();
  int t_lo = 1;
  while (Int(t_lo) * t_lo < h1) ++t_lo;
  bool ok = incident == 0;
  double worst = std::numeric_limits<double>::infinity();
  std::size_t k = 0;
  std::size_t best = 0;
  std::string detail = "t in [" + std::to_string(t_lo) + ", " + std::to_string(t_hi) + "]";
  for (int t = 1; t <= t_hi; ++t) {
    for (; k < count && table->entries()[k].height_sq <= static_cast<std::int64_t>(t) * t; ++k) {
      if (psi[k] < psi[best]) best = k;
    }
    if (t < t_lo || k == 0) continue;
    // psi_A(t) is at most the exact first sine at the floating minimizer.
    BigFloat upper = FirstSineExact(a.plucker(), table->Plucker(best));
    BigFloat phi = cert.schedule.Evaluate(BigFloat(t));
    double rel = ((phi - upper) / phi).convert_to<double>();
    worst = std::min(worst, rel);
    if (!(upper < phi) && ok) {
      detail += "; fails at t = " + std::to_string(t);
      ok = false;
    }
  }
  rec.Check("theorem: 0 < psi_A(t) < phi(t)", ok && t_hi >= t_lo, detail,
            std::isfinite(worst) ? std::optional<double>(worst) : std::nullopt);
  return report;
}

VerificationReport VerifyCertificateText(const std::string& text, int t_ver,
                                         const VerifyOptions& options) {
  std::optional<SingularCertificate> cert;
  try {
    cert = CertificateFromJson(text);
  } catch (const Error& e) {
    VerificationReport report;
    report.checks.push_back(CheckResult{"well_formed", false, std::nullopt, e.what()});
    return report;
  }
  VerificationReport report =
      VerifyCertificate(*cert, t_ver > 0 ? t_ver : cert->t_ver, options);
  report.checks.insert(report.checks.begin(), CheckResult{"well_formed", true, std::nullopt, {}});
  return report;
}

}  // namespace g24

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

#ifndef G24_SINGULAR_HPP_
#define G24_SINGULAR_HPP_

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "g24/angles.hpp"
#include "g24/arith.hpp"
#include "g24/enumerate.hpp"
#include "g24/plucker.hpp"
#include "g24/schedule.hpp"

namespace g24 {

// Seeded source of uniform and normal deviates. The mappings from raw
// 64-bit words are fixed here so runs agree across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t Next() { return engine_(); }
  double Uniform();  // [0, 1)
  double Normal();
  RealVec4 NormalVec4();

 private:
  std::mt19937_64 engine_;
};

// Closed chordal ball {B : d(center, B) <= radius} together with a rational
// witness in its interior. Radius 2 covers the whole Grassmannian.
struct GrassRegion {
  RationalSubspace center;
  Rational radius;
  RationalSubspace witness;

  bool operator==(const GrassRegion&) const = default;
};

struct Stage {
  int index = 0;
  RationalSubspace q;
  GrassRegion region;
  // Link to the next stage; absent on the last one.
  std::optional<RationalSubspace> pivot;  // incident to q, inside region
  std::optional<double> margin;           // psi2(q, pivot) / 2
  std::optional<double> threshold;        // phi(H of the next stage)

  const Int& height_sq() const { return q.height_sq(); }
  bool operator==(const Stage&) const = default;
};

struct SingularCertificate {
  static constexpr int kFormatVersion = 1;

  int format_version = kFormatVersion;
  Schedule schedule;
  std::vector<Stage> stages;
  RationalSubspace output;
  int t_ver = 25;
  // SHA-1 of the canonical serialization without this field.
  std::string digest;
};

struct SingularOptions {
  EnumerationConfig enumeration;
  int t_ver = 25;
  int attempts = 48;
  unsigned digits = 50;
};

// Rational point of V(a) (the subspaces incident to a) within chordal
// distance eps of `target`, which must itself be incident to a (exactly if
// it carries an exact key, otherwise within the incidence tolerance).
// Candidates come from a fixed sequence of refinements that depends only on
// a and target, so shrinking eps only extends the search. Never returns a.
RationalSubspace RationalIncidentNear(const RationalSubspace& a, const Frame& target,
                                      double eps);

// Smallest height rational subspace incident to q with height_sq strictly
// above min_height_sq; ties go to the smaller canonical Plucker vector.
RationalSubspace IncidentWithLargerHeight(const RationalSubspace& q, const Int& min_height_sq);

// Sub-ball of `region` whose witness lies in V(q) and all of whose points
// keep chordal pairing above the radius with every obstacle.
GrassRegion AvoidObstacles(const RationalSubspace& q,
                           std::span<const RationalSubspace> obstacles,
                           const GrassRegion& region, Rng& rng, int attempts = 48);

struct StepResult {
  Stage current;  // the input stage with its link fields filled in
  Stage next;
};

StepResult SingularStep(std::span<const Stage> history, const Schedule& phi, Rng& rng,
                        TableStore& store, const SingularOptions& options = {});

SingularCertificate ConstructSingular(const Schedule& phi, int stages, std::uint64_t seed,
                                      const SingularOptions& options = {});

// Serialization; integers are decimal strings, rationals "p/q", reals
// "%.17g". Dumps are byte-stable.
std::string CertificateToJson(const SingularCertificate& cert);
SingularCertificate CertificateFromJson(const std::string& text);
std::string CertificateDigest(const SingularCertificate& cert);

struct CheckResult {
  std::string name;
  bool passed = false;
  std::optional<double> slack;
  std::string detail;
};

struct VerificationReport {
  std::vector<CheckResult> checks;

  bool AllPassed() const;
  const CheckResult* FirstFailure() const;
  std::string ToJson() const;
};

struct VerifyOptions {
  EnumerationConfig enumeration;
  unsigned digits = 50;
  // Upper end of the sweep 0 < psi_A(t) < phi(t); 0 means t_ver.
  int t_lim = 0;
};

// Recomputes every claim of the certificate. Failed checks are reported,
// not thrown. t_ver <= 0 takes the stored value.
VerificationReport VerifyCertificate(const SingularCertificate& cert, int t_ver,
                                     const VerifyOptions& options = {});
// Same, starting from serialized text; malformed input becomes a failed
// "well_formed" check.
VerificationReport VerifyCertificateText(const std::string& text, int t_ver,
                                         const VerifyOptions& options = {});

}  // namespace g24

#endif  // G24_SINGULAR_HPP_

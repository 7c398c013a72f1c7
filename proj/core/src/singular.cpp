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

#include "g24/singular.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <utility>

#include "g24/error.hpp"
#include "g24/exact_metric.hpp"

namespace g24 {

namespace {

constexpr double kTwo53 = 9007199254740992.0;

RealVec4 ToReal(const IntVec4& v) {
  RealVec4 out;
  for (int i = 0; i < 4; ++i) out[i] = v[i].convert_to<double>();
  return out;
}

double Dot(const RealVec4& a, const RealVec4& b) {
  double s = 0;
  for (int i = 0; i < 4; ++i) s += a[i] * b[i];
  return s;
}

RealVec4 Axpy(const RealVec4& a, double s, const RealVec4& b) {
  RealVec4 out;
  for (int i = 0; i < 4; ++i) out[i] = a[i] + s * b[i];
  return out;
}

IntVec4 RoundScaled(const RealVec4& v, double scale) {
  IntVec4 out;
  for (int i = 0; i < 4; ++i) out[i] = Int(std::nearbyint(v[i] * scale));
  return out;
}

bool IsZero(const IntVec4& v) {
  return std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; });
}

IntVec4 Combine(const Int& a, const IntVec4& x, const Int& b, const IntVec4& y) {
  IntVec4 out;
  for (int i = 0; i < 4; ++i) out[i] = a * x[i] + b * y[i];
  return out;
}

std::optional<RationalSubspace> TrySpan(const IntVec4& a, const IntVec4& b) {
  if (IsZero(a) || IsZero(b)) return std::nullopt;
  try {
    return RationalSubspace::FromBasis(IntBasis{{a, b}});
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kDependentBasis) return std::nullopt;
    throw;
  }
}

// Convergents h/k of the continued fraction of x, in order of accuracy.
std::vector<std::pair<Int, Int>> Convergents(double x) {
  std::vector<std::pair<Int, Int>> out;
  double a0 = std::floor(x);
  Int h_prev = 1, h = Int(a0);
  Int k_prev = 0, k = 1;
  out.emplace_back(h, k);
  double frac = x - a0;
  while (frac > 0 && out.size() < 64) {
    double inv = 1 / frac;
    double a = std::floor(inv);
    frac = inv - a;
    if (!std::isfinite(a) || a > kTwo53) break;
    Int ai(a);
    Int h_next = ai * h + h_prev;
    Int k_next = ai * k + k_prev;
    h_prev = std::exchange(h, h_next);
    k_prev = std::exchange(k, k_next);
    if (k > Int(kTwo53)) break;
    out.emplace_back(h, k);
  }
  return out;
}

// Frame through a unit vector of `along` (moved inside `along` by up to
// `scale`) and a vector of `from` moved arbitrarily by up to `scale`.
// Incident to `along` whenever `from` is.
Frame PerturbAlong(const Frame& along, const Frame& from, double scale, Rng& rng) {
  AngleReport rep = PrincipalSines(along, from);
  RealVec4 e = rep.pairs[0].x;
  RealVec4 f = rep.pairs[1].y;
  double a = rng.Normal();
  double b = rng.Normal();
  RealVec4 shift = Axpy(RealVec4{a * along.u()[0], a * along.u()[1], a * along.u()[2],
                                 a * along.u()[3]},
                        b, along.v());
  RealVec4 e2 = Axpy(e, scale / 2, shift);
  RealVec4 f2 = Axpy(f, scale / 2, rng.NormalVec4());
  return OrthonormalFrame(e2, f2);
}

// Generic rational point near `f`, at chordal distance roughly `tau`.
RationalSubspace RandomNear(const Frame& f, double tau, Rng& rng) {
  for (int attempt = 0;; ++attempt) {
    RealVec4 u = Axpy(f.u(), tau / 2, rng.NormalVec4());
    RealVec4 v = Axpy(f.v(), tau / 2, rng.NormalVec4());
    int bits = std::max(0, static_cast<int>(std::ceil(-std::log2(tau)))) + 24;
    double scale = std::ldexp(1.0, bits);
    if (auto s = TrySpan(RoundScaled(u, scale), RoundScaled(v, scale))) return *s;
    if (attempt > 8) throw Error(ErrorCode::kRetryExhausted, "cannot draw a generic point");
  }
}

double MinAbsPairing(const Unit6& c, std::span<const Unit6> obstacles) {
  double m = std::numeric_limits<double>::infinity();
  for (const Unit6& p : obstacles) m = std::min(m, std::fabs(IncidencePairing(c, p)));
  return m;
}

double RoundedDown(const BigFloat& x) {
  double d = x.convert_to<double>();
  if (BigFloat(d) > x) d = std::nextafter(d, -std::numeric_limits<double>::infinity());
  return d;
}

// Rational containment: ball(c, r) inside the region ball.
bool InsideRegion(const GrassRegion& region, const PluckerInt& c, const Rational& r) {
  if (region.radius >= 2) return true;
  if (r >= region.radius) return false;
  return ChordalAtMost(region.center.plucker(), c, region.radius - r);
}

double Slack(const GrassRegion& region) {
  double d = ChordalDistance(UnitPlucker(region.center.plucker()),
                             UnitPlucker(region.witness.plucker()));
  return std::min(1.0, region.radius.convert_to<double>() - d);
}

std::vector<RationalSubspace> ObstaclesBetween(const HeightTable& table, const Int& low_sq,
                                               const Int& high_sq) {
  std::int64_t low = low_sq.convert_to<std::int64_t>();
  std::int64_t high = high_sq.convert_to<std::int64_t>();
  std::vector<RationalSubspace> out;
  for (std::size_t i = table.CountUpTo(low); i < table.CountUpTo(high); ++i) {
    out.push_back(table.Subspace(i));
  }
  return out;
}

}  // namespace

double Rng::Uniform() { return static_cast<double>(Next() >> 11) * 0x1.0p-53; }

double Rng::Normal() {
  double u1 = 1.0 - Uniform();  // (0, 1]
  double u2 = Uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

RealVec4 Rng::NormalVec4() {
  RealVec4 v;
  for (double& x : v) x = Normal();
  return v;
}

RationalSubspace RationalIncidentNear(const RationalSubspace& a, const Frame& target,
                                      double eps) {
  if (!(eps > 0)) throw Error(ErrorCode::kInvalidArgument, "eps must be positive");
  const Frame fa = FrameOf(a);
  if (target.exact()) {
    if (IncidencePairing(a.plucker(), *target.exact()) != 0) {
      throw Error(ErrorCode::kNotIncident, "target is not incident to A");
    }
  } else if (PsiProduct(fa, target) > Tolerances::Default().incidence) {
    throw Error(ErrorCode::kNotIncident, "target is not incident to A within tolerance");
  }

  AngleReport rep = PrincipalSines(fa, target);
  const RealVec4& e = rep.pairs[0].x;
  const RealVec4& f = rep.pairs[1].y;

  // Coordinates of e in the lattice basis of A.
  const IntBasis& basis = a.lattice_basis();
  RealVec4 b1 = ToReal(basis.rows[0]);
  RealVec4 b2 = ToReal(basis.rows[1]);
  double g11 = Dot(b1, b1), g12 = Dot(b1, b2), g22 = Dot(b2, b2);
  double r1 = Dot(b1, e), r2 = Dot(b2, e);
  double det = g11 * g22 - g12 * g12;
  double c1 = (g22 * r1 - g12 * r2) / det;
  double c2 = (g11 * r2 - g12 * r1) / det;
  bool second_dominant = std::fabs(c2) >= std::fabs(c1);
  std::vector<IntVec4> directions;
  for (auto& [h, k] : Convergents(second_dominant ? c1 / c2 : c2 / c1)) {
    directions.push_back(second_dominant ? Combine(h, basis.rows[0], k, basis.rows[1])
                                         : Combine(k, basis.rows[0], h, basis.rows[1]));
  }

  std::optional<RationalSubspace> best;
  double best_distance = std::numeric_limits<double>::infinity();
  std::size_t next_direction = 0;
  for (int level = 0; level <= 56; ++level) {
    double delta = std::ldexp(1.0, -level);
    while (next_direction + 1 < directions.size() &&
           SinAngle(ToReal(directions[next_direction]), e) > delta / 8) {
      ++next_direction;
    }
    IntVec4 q2 = RoundScaled(f, std::ldexp(1.0, level + 4));
    auto candidate = TrySpan(directions[next_direction], q2);
    if (!candidate || *candidate == a) continue;
    double distance = ChordalDistance(FrameOf(*candidate), target);
    if (distance < best_distance) {
      best_distance = distance;
      best = std::move(candidate);
    }
    if (best_distance < eps) return *best;
  }
  throw Error(ErrorCode::kPrecisionExhausted,
              "no rational incident subspace within " + FormatReal(eps) +
                  " (closest " + FormatReal(best_distance) + ")");
}

RationalSubspace IncidentWithLargerHeight(const RationalSubspace& q, const Int& min_height_sq) {
  const IntBasis& basis = q.lattice_basis();
  static constexpr int kCoeffs[][2] = {{1, 0},  {0, 1}, {1, 1},  {1, -1},
                                       {1, 2}, {1, -2}, {2, 1}, {2, -1}};
  std::vector<IntVec4> generators;
  for (const auto& c : kCoeffs) {
    generators.push_back(Combine(c[0], basis.rows[0], c[1], basis.rows[1]));
  }
  // Boxes [-k, k]^4 of second generators, grown until something clears
  // the bound. Later boxes only contribute heights above every height in
  // the earlier ones that failed, so the answer is monotone in the bound.
  for (int k = 1;; ++k) {
    std::optional<RationalSubspace> best;
    IntVec4 z;
    for (int z0 = -k; z0 <= k; ++z0) {
      for (int z1 = -k; z1 <= k; ++z1) {
        for (int z2 = -k; z2 <= k; ++z2) {
          for (int z3 = -k; z3 <= k; ++z3) {
            z = {Int(z0), Int(z1), Int(z2), Int(z3)};
            for (const IntVec4& v : generators) {
              auto r = TrySpan(v, z);
              if (!r || r->height_sq() <= min_height_sq) continue;
              if (!best || r->height_sq() < best->height_sq() ||
                  (r->height_sq() == best->height_sq() && r->plucker() < best->plucker())) {
                best = std::move(r);
              }
            }
          }
        }
      }
    }
    if (best) return *best;
  }
}

GrassRegion AvoidObstacles(const RationalSubspace& q,
                           std::span<const RationalSubspace> obstacles,
                           const GrassRegion& region, Rng& rng, int attempts) {
  for (const RationalSubspace& p : obstacles) {
    if (p == q) throw Error(ErrorCode::kObstacleEqualsQ, "obstacle equals Q");
  }
  if (!Incident(q, region.witness)) {
    throw Error(ErrorCode::kNotIncident, "region witness is not incident to Q");
  }
  if (obstacles.empty()) return region;

  std::vector<Unit6> units;
  units.reserve(obstacles.size());
  for (const RationalSubspace& p : obstacles) units.push_back(UnitPlucker(p.plucker()));
  const Frame fq = FrameOf(q);
  const Frame from = FrameOf(region.witness);
  const Unit6 region_center = UnitPlucker(region.center.plucker());
  const double region_radius = std::min(2.0, region.radius.convert_to<double>());
  const double slack = Slack(region);

  std::string last_failure = "no attempt made";
  for (int attempt = 0; attempt < attempts; ++attempt) {
    double scale = slack * std::ldexp(0.125, -(attempt / 4));
    // A rational witness on V(q) near the old one, off every obstacle.
    Frame target = PerturbAlong(fq, from, scale, rng);
    RationalSubspace w = RationalIncidentNear(q, target, scale / 4);
    if (std::any_of(obstacles.begin(), obstacles.end(),
                    [&](const RationalSubspace& p) { return Incident(w, p); })) {
      last_failure = "witness incident to an obstacle";
      continue;
    }
    if (region.radius < 2 && !ChordalLess(region.center.plucker(), w.plucker(), region.radius)) {
      last_failure = "witness outside the region";
      continue;
    }
    Unit6 wu = UnitPlucker(w.plucker());
    double room_w = region_radius - ChordalDistance(region_center, wu);
    double reach = 0.5 * std::min(MinAbsPairing(wu, units), room_w);
    if (!(reach > 0)) {
      last_failure = "no room around the witness";
      continue;
    }
    RationalSubspace c = RandomNear(FrameOf(w), reach / 8, rng);
    Unit6 cu = UnitPlucker(c.plucker());
    double room_c = region_radius - ChordalDistance(region_center, cu);
    Rational r = DyadicFloor(0.5 * std::min(MinAbsPairing(cu, units), room_c));
    if (r <= 0) {
      last_failure = "empty radius";
      continue;
    }
    if (!ChordalLess(c.plucker(), w.plucker(), r)) {
      last_failure = "witness outside the new ball";
      continue;
    }
    if (!InsideRegion(region, c.plucker(), r)) {
      last_failure = "new ball leaves the region";
      continue;
    }
    bool clear = std::all_of(obstacles.begin(), obstacles.end(), [&](const RationalSubspace& p) {
      return PairingExceeds(c.plucker(), p.plucker(), r);
    });
    if (!clear) {
      last_failure = "pairing margin below radius";
      continue;
    }
    return GrassRegion{std::move(c), std::move(r), std::move(w)};
  }
  throw Error(ErrorCode::kRetryExhausted, "avoid_obstacles: " + last_failure);
}

namespace {

// True when every sampled point at distance about rho from the pivot
// keeps psi2 with q above the margin.
bool SampledMarginHolds(const RationalSubspace& q, const Frame& pivot, double rho,
                        double margin, Rng& rng) {
  const Frame fq = FrameOf(q);
  for (int k = 0; k < 16; ++k) {
    RealVec4 u = Axpy(pivot.u(), rho / 2, rng.NormalVec4());
    RealVec4 v = Axpy(pivot.v(), rho / 2, rng.NormalVec4());
    Frame sample = OrthonormalFrame(u, v);
    if (ChordalDistance(sample, pivot) > rho) continue;
    if (!(PrincipalSines(fq, sample).psi2 > margin)) return false;
  }
  return true;
}

}  // namespace

StepResult SingularStep(std::span<const Stage> history, const Schedule& phi, Rng& rng,
                        TableStore& store, const SingularOptions& options) {
  if (history.empty()) throw Error(ErrorCode::kInvalidArgument, "empty stage history");
  const Stage& stage = history.back();
  if (!Incident(stage.q, stage.region.witness)) {
    throw Error(ErrorCode::kNotIncident, "stage witness is not incident to Q");
  }
  const Int previous_sq = history.size() >= 2 ? history[history.size() - 2].height_sq() : Int(0);
  if (stage.height_sq() > Int(std::numeric_limits<std::int64_t>::max())) {
    throw Error(ErrorCode::kEnumerationCapExceeded, "height beyond the enumeration range");
  }
  const HeightTable& table = store.AtLeast(stage.height_sq().convert_to<std::int64_t>());
  std::vector<RationalSubspace> obstacles = ObstaclesBetween(table, previous_sq, stage.height_sq());

  PrecisionScope precision(options.digits);
  const Frame fq = FrameOf(stage.q);
  const Frame witness = FrameOf(stage.region.witness);
  const double slack = Slack(stage.region);

  std::string last_failure = "no attempt made";
  for (int attempt = 0; attempt < options.attempts; ++attempt) {
    double shrink = std::ldexp(1.0, -(attempt / 4));
    double scale = slack * 0.25 * shrink;

    Frame target = PerturbAlong(fq, witness, scale, rng);
    RationalSubspace pivot = RationalIncidentNear(stage.q, target, scale / 8);
    if (pivot == stage.q) {
      last_failure = "pivot equals Q";
      continue;
    }
    if (stage.region.radius < 2 &&
        !ChordalLess(stage.region.center.plucker(), pivot.plucker(), stage.region.radius)) {
      last_failure = "pivot outside the region";
      continue;
    }
    double margin = RoundedDown(SecondSineExact(stage.q.plucker(), pivot.plucker()) / 2);
    if (!(margin > 0)) {
      last_failure = "zero second angle";
      continue;
    }
    RationalSubspace next_q = IncidentWithLargerHeight(pivot, stage.height_sq());
    double threshold = RoundedDown(phi.AtHeightSq(next_q.height_sq()));

    double pivot_room =
        std::min(2.0, stage.region.radius.convert_to<double>()) -
        ChordalDistance(UnitPlucker(stage.region.center.plucker()), UnitPlucker(pivot.plucker()));
    Rational rho = DyadicFloor(
        shrink * std::min({margin * threshold / 4, margin / 4, pivot_room / 2}));
    if (rho <= 0 || !InsideRegion(stage.region, pivot.plucker(), rho)) {
      last_failure = "(u1)/(u2) ball leaves the region";
      continue;
    }
    if (!SampledMarginHolds(stage.q, FrameOf(pivot), rho.convert_to<double>(), margin, rng)) {
      last_failure = "(u1) sampled margin";
      continue;
    }
    GrassRegion u{pivot, rho, pivot};
    std::optional<GrassRegion> region;
    try {
      region = AvoidObstacles(next_q, obstacles, u, rng, std::max(4, options.attempts / 4));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kRetryExhausted) throw;
      last_failure = e.what();
      continue;
    }

    Stage current = stage;
    current.pivot = pivot;
    current.margin = margin;
    current.threshold = threshold;
    Stage next{stage.index + 1, next_q, std::move(*region), std::nullopt, std::nullopt,
               std::nullopt};
    return StepResult{std::move(current), std::move(next)};
  }
  throw Error(ErrorCode::kRetryExhausted,
              "singular_step " + std::to_string(stage.index) + ": " + last_failure);
}

namespace {

// The output must clear every rational subspace up to the verification
// range exactly and have height above t_ver.
bool OutputQualifies(const RationalSubspace& a, const HeightTable& table, std::int64_t bound_sq,
                     int t_ver) {
  if (a.height_sq() <= Int(t_ver) * t_ver) return false;
  Unit6 au = UnitPlucker(a.plucker());
  std::size_t n = table.CountUpTo(bound_sq);
  for (std::size_t i = 0; i < n; ++i) {
    if (std::fabs(IncidencePairing(au, table.UnitPluckerAt(i))) < 1e-6 &&
        IncidencePairing(a.plucker(), table.Plucker(i)) == 0) {
      return false;
    }
  }
  return true;
}

}  // namespace

SingularCertificate ConstructSingular(const Schedule& phi, int stages, std::uint64_t seed,
                                      const SingularOptions& options) {
  if (stages < 1) throw Error(ErrorCode::kInvalidArgument, "need at least one stage");
  std::string why;
  if (!phi.Validate(&why)) throw Error(ErrorCode::kInvalidArgument, "invalid schedule: " + why);
  if (options.t_ver < 1 || options.t_ver > options.enumeration.cap) {
    throw Error(ErrorCode::kEnumerationCapExceeded, "t_ver outside the enumeration cap");
  }

  Rng rng(seed);
  TableStore store(options.enumeration);
  RationalSubspace q1 = RationalSubspace::FromBasis(
      IntBasis{{IntVec4{1, 0, 0, 0}, IntVec4{0, 1, 0, 0}}});
  std::vector<Stage> history;
  history.push_back(Stage{1, q1, GrassRegion{q1, Rational(2), q1}, std::nullopt, std::nullopt,
                          std::nullopt});
  for (int i = 1; i < stages; ++i) {
    StepResult step = SingularStep(history, phi, rng, store, options);
    history.back() = std::move(step.current);
    history.push_back(std::move(step.next));
  }

  const Stage& last = history.back();
  Int range_sq = std::min(last.height_sq(), Int(options.t_ver) * options.t_ver);
  std::int64_t bound_sq = range_sq.convert_to<std::int64_t>();
  const HeightTable& table = store.AtLeast(bound_sq);

  RationalSubspace output = last.region.center;
  if (!OutputQualifies(output, table, bound_sq, options.t_ver)) {
    const Frame center = FrameOf(last.region.center);
    double radius = std::min(1.0, last.region.radius.convert_to<double>());
    bool found = false;
    for (int attempt = 0; attempt < options.attempts * 4 && !found; ++attempt) {
      RationalSubspace candidate = RandomNear(center, radius / 8, rng);
      if ((last.region.radius >= 2 ||
           ChordalLess(last.region.center.plucker(), candidate.plucker(), last.region.radius)) &&
          OutputQualifies(candidate, table, bound_sq, options.t_ver)) {
        output = std::move(candidate);
        found = true;
      }
    }
    if (!found) throw Error(ErrorCode::kRetryExhausted, "cannot draw a qualifying output");
  }

  SingularCertificate cert{SingularCertificate::kFormatVersion, phi, std::move(history),
                           std::move(output), options.t_ver, {}};
  cert.digest = CertificateDigest(cert);
  return cert;
}

}  // namespace g24

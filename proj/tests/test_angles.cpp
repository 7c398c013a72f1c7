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

#include <cmath>
#include <string>

#include "doctest.h"
#include "g24/angles.hpp"
#include "g24/error.hpp"
#include "g24/exact_metric.hpp"
#include "oracles.hpp"

namespace g24 {
namespace {

using testing::Span;
using testing::V4;

constexpr V4 e1{1, 0, 0, 0}, e2{0, 1, 0, 0}, e3{0, 0, 1, 0}, e4{0, 0, 0, 1};

Frame F(const V4& a, const V4& b) { return OrthonormalFrame(a, b); }

void CheckVec(const RealVec4& got, const V4& want, double tol = 1e-12) {
  for (int i = 0; i < 4; ++i) CHECK(got[i] == doctest::Approx(want[i]).epsilon(tol));
}

Frame Rotated(const Frame& f, double angle) {
  V4 a, b;
  for (int i = 0; i < 4; ++i) {
    a[i] = std::cos(angle) * f.u()[i] + std::sin(angle) * f.v()[i];
    b[i] = -std::sin(angle) * f.u()[i] + std::cos(angle) * f.v()[i];
  }
  return OrthonormalFrame(a, b);
}

Frame BlockRotated(double alpha, double beta) {
  return F({std::cos(alpha), 0, std::sin(alpha), 0}, {0, std::cos(beta), 0, std::sin(beta)});
}

TEST_CASE("orthonormal_frame examples") {
  Frame f = F(e1, e2);
  CheckVec(f.u(), e1);
  CheckVec(f.v(), e2);
  Frame g = F({2, 0, 0, 0}, {1, 1, 0, 0});
  CheckVec(g.u(), e1);
  CheckVec(g.v(), e2);
  Frame h = F({1, 0, 1, 0}, {0, 1, 0, 1});
  const double s = 1 / std::sqrt(2.0);
  CheckVec(h.u(), {s, 0, s, 0});
  CheckVec(h.v(), {0, s, 0, s});
  try {
    F({1, 2, 3, 4}, {2, 4, 6, 8 + 1e-15});
    FAIL("expected NearDependent");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNearDependent);
  }
}

TEST_CASE("frames satisfy their invariants") {
  testing::Gen gen(21);
  for (int k = 0; k < 200; ++k) {
    Frame f = gen.RandomFrame();
    CHECK(std::fabs(testing::Dot(f.u(), f.u()) - 1) <= 1e-12);
    CHECK(std::fabs(testing::Dot(f.v(), f.v()) - 1) <= 1e-12);
    CHECK(std::fabs(testing::Dot(f.u(), f.v())) <= 1e-12);
    CHECK(std::fabs(Dot6(f.plucker(), f.plucker()) - 1) <= 1e-12);
    CHECK(std::fabs(QuadricResidual(f.plucker())) <= 1e-12);
  }
}

TEST_CASE("sin_angle examples") {
  CHECK(SinAngle(e1, e2) == doctest::Approx(1.0));
  CHECK(SinAngle(e1, {3, 0, 0, 0}) == 0.0);
  CHECK(SinAngle(e1, {1, 1, 0, 0}) == doctest::Approx(0.7071067812));
  CHECK_THROWS_AS(SinAngle(e1, {0, 0, 0, 0}), Error);
}

TEST_CASE("principal_sines examples") {
  AngleReport same = PrincipalSines(F(e1, e2), F(e1, e2));
  CHECK(same.psi1 == doctest::Approx(0.0));
  CHECK(same.psi2 == doctest::Approx(0.0));
  AngleReport shared = PrincipalSines(F(e1, e2), F(e1, e3));
  CHECK(shared.psi1 == doctest::Approx(0.0));
  CHECK(shared.psi2 == doctest::Approx(1.0));
  AngleReport rot = PrincipalSines(F(e1, e2), BlockRotated(0.3, 0.7));
  CHECK(rot.psi1 == doctest::Approx(std::sin(0.3)).epsilon(1e-12));
  CHECK(rot.psi2 == doctest::Approx(std::sin(0.7)).epsilon(1e-12));
  CHECK(testing::GridMinSine(e1, e2, {std::cos(0.3), 0, std::sin(0.3), 0},
                             {0, std::cos(0.7), 0, std::sin(0.7)}) ==
        doctest::Approx(std::sin(0.3)).epsilon(1e-9));
}

TEST_CASE("principal pairs realize the angles") {
  testing::Gen gen(22);
  for (int k = 0; k < 100; ++k) {
    Frame a = gen.RandomFrame(), b = gen.RandomFrame();
    AngleReport r = PrincipalSines(a, b);
    CHECK(r.psi1 <= r.psi2);
    CHECK(SinAngle(r.pairs[0].x, r.pairs[0].y) == doctest::Approx(r.psi1).epsilon(1e-9));
    CHECK(SinAngle(r.pairs[1].x, r.pairs[1].y) == doctest::Approx(r.psi2).epsilon(1e-9));
    CHECK(std::fabs(testing::Dot(r.pairs[0].x, r.pairs[1].x)) < 1e-12);
    CHECK(std::fabs(testing::Dot(r.pairs[0].y, r.pairs[1].y)) < 1e-12);
  }
}

TEST_CASE("psi_product examples") {
  CHECK(PsiProduct(F(e1, e2), F(e3, e4)) == doctest::Approx(1.0));
  CHECK(PsiProduct(F(e1, e2), F(e1, e3)) == doctest::Approx(0.0));
  CHECK(PsiProduct(F(e1, e2), BlockRotated(0.3, 0.7)) ==
        doctest::Approx(std::sin(0.3) * std::sin(0.7)).epsilon(1e-12));
}

TEST_CASE("chordal_distance examples and metric axioms") {
  CHECK(ChordalDistance(F(e1, e2), F(e2, e1)) == doctest::Approx(0.0));
  CHECK(ChordalDistance(F(e1, e2), F(e3, e4)) == doctest::Approx(std::sqrt(2.0)));
  testing::Gen gen(23);
  for (int k = 0; k < 300; ++k) {
    Frame a = gen.RandomFrame(), b = gen.RandomFrame(), c = gen.RandomFrame();
    double ab = ChordalDistance(a, b), bc = ChordalDistance(b, c), ac = ChordalDistance(a, c);
    CHECK(ab == doctest::Approx(ChordalDistance(b, a)));
    CHECK(ac <= ab + bc + 1e-12);
    CHECK(ab >= 0);
    CHECK(ab <= std::sqrt(2.0) + 1e-12);
  }
}

TEST_CASE("pairing product equals psi1 * psi2 and the generalized determinant ratio") {
  testing::Gen gen(24);
  for (int k = 0; k < 1000; ++k) {
    Frame a = gen.RandomFrame(), b = gen.RandomFrame();
    AngleReport r = PrincipalSines(a, b);
    CHECK(std::fabs(r.product - r.psi1 * r.psi2) <= 1e-9);
    std::array<V4, 4> m = {a.u(), a.v(), b.u(), b.v()};
    double ratio = std::fabs(testing::Det4(m));  // frames are orthonormal
    CHECK(std::fabs(r.product - ratio) <= 1e-9);
  }
}

TEST_CASE("SVD angles agree with the minimization oracle") {
  testing::Gen gen(25);
  for (int k = 0; k < 40; ++k) {
    V4 a1 = gen.Gaussian(), a2 = gen.Gaussian(), b1 = gen.Gaussian(), b2 = gen.Gaussian();
    AngleReport r = PrincipalSines(F(a1, a2), F(b1, b2));
    CHECK(std::fabs(r.psi1 - testing::GridMinSine(a1, a2, b1, b2)) <= 1e-9);
    CHECK(std::fabs(r.psi2 - testing::GridMaxDistance(a1, a2, b1, b2)) <= 1e-9);
  }
}

TEST_CASE("tiny first angles keep relative accuracy") {
  for (double alpha : {1e-4, 1e-8, 1e-12}) {
    AngleReport r = PrincipalSines(F(e1, e2), BlockRotated(alpha, 0.5));
    CHECK(r.psi1 == doctest::Approx(std::sin(alpha)).epsilon(1e-6));
    CHECK(r.psi2 == doctest::Approx(std::sin(0.5)).epsilon(1e-12));
  }
}

TEST_CASE("symmetry and frame independence") {
  testing::Gen gen(26);
  for (int k = 0; k < 200; ++k) {
    Frame a = gen.RandomFrame(), b = gen.RandomFrame();
    AngleReport ab = PrincipalSines(a, b), ba = PrincipalSines(b, a);
    CHECK(std::fabs(ab.psi1 - ba.psi1) <= 1e-12);
    CHECK(std::fabs(ab.product - ba.product) <= 1e-12);
    AngleReport rot = PrincipalSines(Rotated(a, 0.1 * k), Rotated(b, -0.07 * k));
    CHECK(std::fabs(ab.psi1 - rot.psi1) <= 1e-9);
    CHECK(std::fabs(ab.psi2 - rot.psi2) <= 1e-9);
    CHECK(std::fabs(ab.product - rot.product) <= 1e-9);
  }
}

TEST_CASE("pairing and both sines are 1-Lipschitz in the chordal metric") {
  testing::Gen gen(27);
  for (int k = 0; k < 500; ++k) {
    Frame a = gen.RandomFrame(), b = gen.RandomFrame();
    // A nearby point as well as an unrelated one.
    V4 u = a.u(), v = a.v();
    double s = std::pow(10.0, -gen.Uniform(1, 6));
    V4 g1 = gen.Gaussian(), g2 = gen.Gaussian();
    for (int i = 0; i < 4; ++i) u[i] += s * g1[i], v[i] += s * g2[i];
    for (const Frame& a2 : {OrthonormalFrame(u, v), gen.RandomFrame()}) {
      double d = ChordalDistance(a, a2);
      AngleReport r1 = PrincipalSines(a, b), r2 = PrincipalSines(a2, b);
      CHECK(std::fabs(r1.product - r2.product) <= d + 1e-12);
      CHECK(std::fabs(r1.psi1 - r2.psi1) <= d + 1e-9);
      CHECK(std::fabs(r1.psi2 - r2.psi2) <= d + 1e-9);
    }
  }
}

TEST_CASE("floating product detects exact incidence of rational subspaces") {
  testing::Gen gen(28);
  int incident = 0;
  for (int k = 0; k < 400; ++k) {
    IntBasis a = gen.Basis(6), b = gen.Basis(6);
    if (k % 2 == 0) b.rows[1] = a.rows[0];
    RationalSubspace sa = RationalSubspace::FromBasis(a), sb = RationalSubspace::FromBasis(b);
    bool exact = Incident(sa, sb);
    CHECK((PsiProduct(FrameOf(sa), FrameOf(sb)) < 1e-9) == exact);
    incident += exact;
  }
  CHECK(incident >= 200);
}

TEST_CASE("first sine from Plucker vectors matches the SVD route") {
  testing::Gen gen(29);
  for (int k = 0; k < 300; ++k) {
    Frame a = gen.RandomFrame(), b = gen.RandomFrame();
    CHECK(std::fabs(FirstSineFromPlucker(a.plucker(), b.plucker()) -
                    PrincipalSines(a, b).psi1) <= 1e-9);
  }
}

TEST_CASE("FrameOf a rational subspace carries its exact key") {
  RationalSubspace s = Span({1, 0, 0, 0}, {0, 1, 1, 1});
  Frame f = FrameOf(s);
  REQUIRE(f.exact());
  CHECK(*f.exact() == s.plucker());
  Unit6 unit = UnitPlucker(s.plucker());
  for (int k = 0; k < 6; ++k) CHECK(std::fabs(unit[k] - f.plucker()[k]) < 1e-15);
}

TEST_CASE("exact chordal predicates agree with floating distances") {
  testing::Gen gen(30);
  PrecisionScope precision(40);
  for (int k = 0; k < 300; ++k) {
    RationalSubspace a = RationalSubspace::FromBasis(gen.Basis(8));
    RationalSubspace b = RationalSubspace::FromBasis(gen.Basis(8));
    double d = ChordalDistance(FrameOf(a), FrameOf(b));
    CHECK(std::fabs(ChordalDistanceExact(a.plucker(), b.plucker()).convert_to<double>() - d) <
          1e-12);
    for (double r : {d * 0.999, d * 1.001, 0.05, 1.0, 1.5}) {
      if (std::fabs(r - d) < 1e-9) continue;
      Rational rr = DyadicFloor(r);
      CHECK(ChordalLess(a.plucker(), b.plucker(), rr) == (d < r));
      CHECK(ChordalAtMost(a.plucker(), b.plucker(), rr) == (d < r));
      double p = PsiProduct(FrameOf(a), FrameOf(b));
      if (std::fabs(p - r) > 1e-9) CHECK(PairingExceeds(a.plucker(), b.plucker(), rr) == (p > r));
    }
    AngleReport rep = PrincipalSines(FrameOf(a), FrameOf(b));
    CHECK(std::fabs(FirstSineExact(a.plucker(), b.plucker()).convert_to<double>() - rep.psi1) <
          1e-9);
    CHECK(std::fabs(SecondSineExact(a.plucker(), b.plucker()).convert_to<double>() - rep.psi2) <
          1e-9);
  }
  RationalSubspace x = Span({1, 0, 0, 0}, {0, 1, 0, 0});
  CHECK(ChordalAtMost(x.plucker(), x.plucker(), Rational(0)));
  CHECK(!ChordalLess(x.plucker(), x.plucker(), Rational(0)));
  RationalSubspace y = Span({0, 0, 1, 0}, {0, 0, 0, 1});
  // d = sqrt(2): boundary behaviour at r = sqrt(2) is exact via r^2 = 2.
  CHECK(!ChordalLess(x.plucker(), y.plucker(), Rational(7, 5)));
  CHECK(ChordalLess(x.plucker(), y.plucker(), Rational(3, 2)));
  CHECK(PairingExceeds(x.plucker(), y.plucker(), Rational(99, 100)));
  CHECK(!PairingExceeds(x.plucker(), y.plucker(), Rational(1)));
}

TEST_CASE("AngleReport JSON") {
  std::string j = ToJson(PrincipalSines(F(e1, e2), F(e3, e4)));
  for (const char* key : {"\"psi1\": 1", "\"psi2\": 1", "\"product\": 1", "\"pairs\": "}) {
    CHECK(j.find(key) != std::string::npos);
  }
}

}  // namespace
}  // namespace g24

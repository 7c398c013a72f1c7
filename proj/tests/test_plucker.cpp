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

#include "doctest.h"
#include "g24/arith.hpp"
#include "g24/error.hpp"
#include "g24/plucker.hpp"
#include "oracles.hpp"

namespace g24 {
namespace {

using testing::MakeBasis;
using testing::Six;

RatVec4 R4(long a, long b, long c, long d) { return {Rational(a), Rational(b), Rational(c), Rational(d)}; }

Vec6<Rational> R6(long a, long b, long c, long d, long e, long f) {
  return {Rational(a), Rational(b), Rational(c), Rational(d), Rational(e), Rational(f)};
}

TEST_CASE("ParseRational reads fractions and decimals exactly") {
  CHECK(ParseRational("3/4") == Rational(3, 4));
  CHECK(ParseRational("-6/8") == Rational(-3, 4));
  CHECK(ParseRational("0.1") == Rational(1, 10));
  CHECK(ParseRational("-1.25e2") == Rational(-125));
  CHECK(ParseRational("2.5E-3") == Rational(1, 400));
  CHECK(ParseRational("+7") == Rational(7));
  CHECK_THROWS_AS(ParseRational("1/0"), ParseError);
  CHECK_THROWS_AS(ParseRational(""), ParseError);
  try {
    ParseRational("12x");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
    CHECK(e.column() == 3);
  }
}

TEST_CASE("ToString and DyadicFloor") {
  CHECK(ToString(Rational(2)) == "2/1");
  CHECK(ToString(Rational(-1, 3)) == "-1/3");
  Rational d = DyadicFloor(0.3);
  CHECK(d <= Rational(3, 10));
  CHECK(Rational(3, 10) - d < Rational(1, 1000000000));
  Int den = boost::multiprecision::denominator(d);
  CHECK((den & (den - 1)) == 0);
  CHECK_THROWS_AS(DyadicFloor(0.0), Error);
}

TEST_CASE("wedge4 examples") {
  CHECK(Wedge4(R4(1, 0, 0, 0), R4(0, 1, 0, 0)) == R6(1, 0, 0, 0, 0, 0));
  CHECK(Wedge4(R4(3, 1, 4, 1), R4(3, 1, 4, 1)) == R6(0, 0, 0, 0, 0, 0));
  CHECK(Wedge4(R4(1, 0, 0, 0), R4(0, 1, 1, 1)) == R6(1, 1, 1, 0, 0, 0));
}

TEST_CASE("to_plucker examples") {
  CHECK(ToPlucker(MakeBasis({2, 0, 0, 0}, {0, 2, 0, 0})).coords() == Six({1, 0, 0, 0, 0, 0}));
  CHECK(ToPlucker(MakeBasis({0, 1, 0, 0}, {1, 0, 0, 0})).coords() == Six({1, 0, 0, 0, 0, 0}));
  CHECK(ToPlucker(MakeBasis({1, 1, 0, 0}, {1, -1, 0, 0})).coords() == Six({1, 0, 0, 0, 0, 0}));
  CHECK_THROWS_AS(ToPlucker(MakeBasis({1, 2, 3, 4}, {2, 4, 6, 8})), Error);
  try {
    ToPlucker(MakeBasis({1, 2, 3, 4}, {-1, -2, -3, -4}));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kDependentBasis);
  }
}

TEST_CASE("quadric_residual examples") {
  CHECK(QuadricResidual(Six({1, 0, 0, 0, 0, 0})) == 0);
  CHECK(QuadricResidual(Six({1, 0, 0, 0, 0, 1})) == 1);
  testing::Gen gen(11);
  for (int k = 0; k < 200; ++k) {
    IntBasis b = gen.Basis(9);
    CHECK(QuadricResidual(Wedge4(b.rows[0], b.rows[1])) == 0);
  }
}

TEST_CASE("incidence_pairing examples") {
  CHECK(IncidencePairing(Six({1, 0, 0, 0, 0, 0}), Six({0, 0, 0, 0, 0, 1})) == 1);
  CHECK(IncidencePairing(Six({1, 0, 0, 0, 0, 0}), Six({0, 1, 0, 0, 0, 0})) == 0);
  Vec6<Int> p = Six({1, 1, 1, 0, 0, 0});
  CHECK(IncidencePairing(p, p) == 2 * QuadricResidual(p));
}

TEST_CASE("pairing is symmetric and bilinear; self-pairing is twice the quadric") {
  testing::Gen gen(12);
  auto random6 = [&] {
    Vec6<Int> v;
    for (Int& x : v) x = gen.Uniform(-30, 30);
    return v;
  };
  for (int k = 0; k < 300; ++k) {
    Vec6<Int> p = random6(), q = random6(), r = random6();
    Int a = gen.Uniform(-5, 5), b = gen.Uniform(-5, 5);
    Vec6<Int> mix;
    for (int i = 0; i < 6; ++i) mix[i] = a * q[i] + b * r[i];
    CHECK(IncidencePairing(p, q) == IncidencePairing(q, p));
    CHECK(IncidencePairing(p, mix) == a * IncidencePairing(p, q) + b * IncidencePairing(p, r));
    CHECK(IncidencePairing(p, p) == 2 * QuadricResidual(p));
  }
}

TEST_CASE("generalized_det examples") {
  std::array<Vec4<double>, 1> one = {{{3, 4, 0, 0}}};
  CHECK(GeneralizedDet(one) == doctest::Approx(5.0));
  std::array<Vec4<double>, 4> id = {{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}};
  CHECK(GeneralizedDet(id) == doctest::Approx(1.0));
  std::array<Vec4<double>, 2> two = {{{1, 0, 0, 0}, {0, 1, 1, 1}}};
  CHECK(GeneralizedDet(two) == doctest::Approx(std::sqrt(3.0)));
  std::array<RatVec4, 2> exact = {R4(1, 0, 0, 0), R4(0, 1, 1, 1)};
  CHECK(GramDeterminant(exact) == 3);
}

TEST_CASE("saturate examples") {
  IntBasis coord = MakeBasis({1, 0, 0, 0}, {0, 1, 0, 0});
  for (const IntBasis& input : {MakeBasis({2, 0, 0, 0}, {0, 2, 0, 0}),
                                MakeBasis({1, 1, 0, 0}, {1, -1, 0, 0}), coord}) {
    IntBasis s = Saturate(input);
    CHECK(GramDeterminant(s) == 1);
    for (const IntVec4& v : coord.rows) CHECK(testing::InIntegerSpan(v, s));
    for (const IntVec4& v : s.rows) CHECK(testing::InIntegerSpan(v, coord));
    CHECK(GramDeterminant(input) % GramDeterminant(s) == 0);
  }
}

TEST_CASE("saturation spans the full lattice on random bases") {
  testing::Gen gen(13);
  for (int k = 0; k < 300; ++k) {
    IntBasis b = gen.Basis(12);
    IntBasis s = Saturate(b);
    CHECK(GramDeterminant(s) == testing::HeightSqOracle(b));
    CHECK(testing::InIntegerSpan(b.rows[0], s));
    CHECK(testing::InIntegerSpan(b.rows[1], s));
    CHECK(GramDeterminant(b) % GramDeterminant(s) == 0);
    // Idempotent on the lattice.
    IntBasis again = Saturate(s);
    CHECK(testing::InIntegerSpan(again.rows[0], s));
    CHECK(testing::InIntegerSpan(again.rows[1], s));
    CHECK(GramDeterminant(again) == GramDeterminant(s));
  }
}

TEST_CASE("height examples") {
  CHECK(ComputeHeight(MakeBasis({1, 0, 0, 0}, {0, 1, 0, 0})).height_sq == 1);
  Height h = ComputeHeight(MakeBasis({1, 0, 0, 0}, {0, 1, 1, 1}));
  CHECK(h.height_sq == 3);
  CHECK(h.height == doctest::Approx(std::sqrt(3.0)));
  CHECK(ComputeHeight(MakeBasis({1, 1, 0, 0}, {1, -1, 0, 0})).height_sq == 1);
  CHECK_THROWS_AS(ComputeHeight(MakeBasis({0, 0, 0, 0}, {1, 0, 0, 0})), Error);
}

TEST_CASE("height via Plucker norm equals saturated Gram determinant") {
  testing::Gen gen(14);
  for (int k = 0; k < 500; ++k) {
    IntBasis b = gen.Basis(20);
    RationalSubspace s = RationalSubspace::FromBasis(b);
    CHECK(s.height_sq() == s.plucker().NormSq());
    CHECK(s.height_sq() == testing::GramDetOracle(s.lattice_basis()));
    CHECK(s.height_sq() == testing::HeightSqOracle(b));
  }
}

TEST_CASE("to_plucker is invariant under unimodular change of basis") {
  testing::Gen gen(15);
  for (int k = 0; k < 300; ++k) {
    IntBasis b = gen.Basis(15);
    CHECK(ToPlucker(testing::Apply(gen.Unimodular(), b)) == ToPlucker(b));
  }
}

TEST_CASE("from_plucker examples and errors") {
  auto spans = [](const IntBasis& b, std::array<long, 4> x, std::array<long, 4> y) {
    return ToPlucker(b) == ToPlucker(MakeBasis(x, y));
  };
  CHECK(spans(FromPlucker(PluckerInt::FromCoordinates(Six({1, 0, 0, 0, 0, 0}))), {1, 0, 0, 0},
              {0, 1, 0, 0}));
  CHECK(spans(FromPlucker(PluckerInt::FromCoordinates(Six({0, 0, 0, 0, 0, 1}))), {0, 0, 1, 0},
              {0, 0, 0, 1}));
  CHECK(spans(FromPlucker(PluckerInt::FromCoordinates(Six({1, 1, 1, 0, 0, 0}))), {1, 0, 0, 0},
              {0, 1, 1, 1}));
  try {
    PluckerInt::FromCoordinates(Six({1, 0, 0, 0, 0, 1}));
    FAIL("expected NotDecomposable");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNotDecomposable);
  }
}

TEST_CASE("from_plucker round trip on random subspaces") {
  testing::Gen gen(16);
  for (int k = 0; k < 300; ++k) {
    PluckerInt p = ToPlucker(gen.Basis(25));
    IntBasis b = FromPlucker(p);
    CHECK(ToPlucker(b) == p);
    CHECK(GramDeterminant(b) == p.NormSq());
  }
}

TEST_CASE("PluckerInt canonical form") {
  PluckerInt p = PluckerInt::FromCoordinates(Six({0, -2, 4, 0, 0, 0}));
  CHECK(p.coords() == Six({0, 1, -2, 0, 0, 0}));
  CHECK(p.ToString() == "0 1 -2 0 0 0");
  CHECK_THROWS_AS(PluckerInt::FromCoordinates(Six({0, 0, 0, 0, 0, 0})), Error);
}

TEST_CASE("incidence pairing vanishes exactly when the stacked bases drop rank") {
  testing::Gen gen(17);
  int incident = 0;
  for (int k = 0; k < 400; ++k) {
    IntBasis a = gen.Basis(3);
    IntBasis b = gen.Basis(3);
    if (k % 2 == 0) b.rows[0] = a.rows[gen.Uniform(0, 1)];  // force a shared vector
    if (testing::ExactRank({testing::AsRational(a.rows[0]), testing::AsRational(a.rows[1]),
                            testing::AsRational(b.rows[0]), testing::AsRational(b.rows[1])}) == 2) {
      continue;  // same subspace
    }
    bool rank_deficient =
        testing::ExactRank({testing::AsRational(a.rows[0]), testing::AsRational(a.rows[1]),
                            testing::AsRational(b.rows[0]), testing::AsRational(b.rows[1])}) <= 3;
    bool pairing_zero = IncidencePairing(ToPlucker(a), ToPlucker(b)) == 0;
    CHECK(rank_deficient == pairing_zero);
    incident += pairing_zero;
  }
  CHECK(incident > 100);
}

TEST_CASE("RationalSubspace from rational basis, text round trip and FromParts") {
  RatBasis rb = ParseBasis("1/2,0,0,0;0,0.5,0.5,0.5");
  RationalSubspace s = RationalSubspace::FromBasis(rb);
  CHECK(s.plucker().coords() == Six({1, 1, 1, 0, 0, 0}));
  CHECK(s.height_sq() == 3);
  CHECK(FormatBasis(rb) == "1/2,0,0,0;0,1/2,1/2,1/2");
  RationalSubspace back =
      RationalSubspace::FromParts(s.plucker().coords(), s.lattice_basis(), s.height_sq());
  CHECK(back == s);
  CHECK(back.lattice_basis() == s.lattice_basis());
  CHECK_THROWS_AS(RationalSubspace::FromParts(s.plucker().coords(), s.lattice_basis(), 4), Error);
  IntBasis doubled = s.lattice_basis();
  for (Int& x : doubled.rows[0]) x *= 2;
  CHECK_THROWS_AS(RationalSubspace::FromParts(s.plucker().coords(), doubled, s.height_sq()), Error);
}

TEST_CASE("ParseBasis reports row and column") {
  try {
    ParseBasis("1,0,0,0;0,1,q,0");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 5);
  }
  CHECK_THROWS_AS(ParseBasis("1,0,0;0,1,0,0"), ParseError);
  CHECK_THROWS_AS(ParseBasis("1,0,0,0"), ParseError);
}

}  // namespace
}  // namespace g24

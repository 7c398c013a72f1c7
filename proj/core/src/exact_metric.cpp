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

#include "g24/exact_metric.hpp"

namespace g24 {

namespace {

// Shared pieces of the squared-form predicates.
struct PairTerms {
  Int dot_sq;   // (p.q)^2
  Int pair_sq;  // pairing(p, q)^2
  Int norms;    // Np * Nq
};

PairTerms Terms(const PluckerInt& p, const PluckerInt& q) {
  Int d = Dot6(p.coords(), q.coords());
  Int e = IncidencePairing(p, q);
  return PairTerms{d * d, e * e, p.NormSq() * q.NormSq()};
}

// Sign of (2 - r^2)^2 Np Nq - 4 (p.q)^2 when 2 - r^2 > 0; the distance
// comparison d <=> r is equivalent to this sign.
int DistanceSign(const PluckerInt& p, const PluckerInt& q, const Rational& r) {
  Rational slack = 2 - r * r;
  if (slack < 0) return -1;  // every pair is within distance sqrt(2) < r
  PairTerms t = Terms(p, q);
  if (slack == 0) return t.dot_sq > 0 ? -1 : 0;
  Rational lhs = slack * slack * Rational(t.norms);
  Rational rhs = Rational(4 * t.dot_sq);
  if (lhs < rhs) return -1;
  if (lhs > rhs) return 1;
  return 0;
}

}  // namespace

bool ChordalLess(const PluckerInt& p, const PluckerInt& q, const Rational& r) {
  if (r <= 0) return false;
  return DistanceSign(p, q, r) < 0;
}

bool ChordalAtMost(const PluckerInt& p, const PluckerInt& q, const Rational& r) {
  if (r < 0) return false;
  return DistanceSign(p, q, r) <= 0;
}

bool PairingExceeds(const PluckerInt& p, const PluckerInt& q, const Rational& r) {
  if (r < 0) return true;
  PairTerms t = Terms(p, q);
  return Rational(t.pair_sq) > r * r * Rational(t.norms);
}

BigFloat SqrtOf(const Int& value) { return boost::multiprecision::sqrt(BigFloat(value)); }

BigFloat ChordalDistanceExact(const PluckerInt& p, const PluckerInt& q) {
  PairTerms t = Terms(p, q);
  BigFloat c = boost::multiprecision::sqrt(BigFloat(t.dot_sq) / BigFloat(t.norms));
  BigFloat d2 = 2 - 2 * c;
  if (d2 < 0) d2 = 0;
  return boost::multiprecision::sqrt(d2);
}

// With N = Np Nq, a = pairing^2 and b = dot^2, the squared sines are
// (S -/+ sqrt(D)) / (2N) where S = N + a - b and D = S^2 - 4aN >= 0.
// The smaller root is written as 2a / (S + sqrt(D)) to avoid cancellation.
BigFloat FirstSineExact(const PluckerInt& p, const PluckerInt& q) {
  PairTerms t = Terms(p, q);
  if (t.pair_sq == 0) return BigFloat(0);
  Int s = t.norms + t.pair_sq - t.dot_sq;
  Int disc = s * s - 4 * t.pair_sq * t.norms;
  if (disc < 0) disc = 0;
  BigFloat denom = BigFloat(s) + SqrtOf(disc);
  return boost::multiprecision::sqrt(2 * BigFloat(t.pair_sq) / denom);
}

BigFloat SecondSineExact(const PluckerInt& p, const PluckerInt& q) {
  PairTerms t = Terms(p, q);
  Int s = t.norms + t.pair_sq - t.dot_sq;
  Int disc = s * s - 4 * t.pair_sq * t.norms;
  if (disc < 0) disc = 0;
  BigFloat z = (BigFloat(s) + SqrtOf(disc)) / (2 * BigFloat(t.norms));
  if (z > 1) z = 1;
  return boost::multiprecision::sqrt(z);
}

}  // namespace g24

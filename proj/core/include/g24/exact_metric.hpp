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

#ifndef G24_EXACT_METRIC_HPP_
#define G24_EXACT_METRIC_HPP_

// Exact comparisons between rational subspaces in the chordal metric, and
// extended-precision principal sines.
//
// For primitive Plucker vectors p, q with norms Np, Nq the chordal distance
// satisfies d^2 = 2 - 2|p.q| / sqrt(Np Nq); every predicate below squares
// that relation so the decision is made on exact rationals.

#include "g24/arith.hpp"
#include "g24/plucker.hpp"

namespace g24 {

// d(p, q) < r.
bool ChordalLess(const PluckerInt& p, const PluckerInt& q, const Rational& r);
// d(p, q) <= r.
bool ChordalAtMost(const PluckerInt& p, const PluckerInt& q, const Rational& r);

// |pairing(p/|p|, q/|q|)| > r. Because the pairing form is a signed
// permutation, every point within chordal distance r of p is then
// non-incident to q.
bool PairingExceeds(const PluckerInt& p, const PluckerInt& q, const Rational& r);

// Extended-precision values at the current MPFR precision.
BigFloat ChordalDistanceExact(const PluckerInt& p, const PluckerInt& q);
BigFloat FirstSineExact(const PluckerInt& p, const PluckerInt& q);
BigFloat SecondSineExact(const PluckerInt& p, const PluckerInt& q);
BigFloat SqrtOf(const Int& value);

}  // namespace g24

#endif  // G24_EXACT_METRIC_HPP_

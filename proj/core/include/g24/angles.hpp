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

#ifndef G24_ANGLES_HPP_
#define G24_ANGLES_HPP_

#include <array>
#include <optional>
#include <string>

#include "g24/plucker.hpp"

namespace g24 {

using RealVec4 = std::array<double, 4>;
using Unit6 = std::array<double, 6>;

// Every floating tolerance used by the library, in one place.
struct Tolerances {
  // Orthonormality of frames and unit norm of cached Plucker vectors.
  double frame = 1e-12;
  // Rows whose normalized generalized determinant falls below this are
  // rejected as numerically dependent.
  double near_dependent = 1e-12;
  // Agreement between the pairing route and the principal-angle route.
  double product = 1e-9;
  // Floating first angles below this are flagged as possibly incident.
  double incidence = 1e-9;
  // Above this cosine the first sine is recomputed from the residual of
  // the projection, avoiding cancellation in sqrt(1 - sigma^2).
  double tiny_angle_sigma = 0.99;

  static const Tolerances& Default();
};

// Orthonormal basis (u, v) of a 2-subspace with its unit Plucker vector.
// Frames of rational subspaces also carry the exact canonical key.
class Frame {
 public:
  const RealVec4& u() const { return u_; }
  const RealVec4& v() const { return v_; }
  const Unit6& plucker() const { return plucker_; }
  const std::optional<PluckerInt>& exact() const { return exact_; }

 private:
  friend Frame OrthonormalFrame(const RealVec4&, const RealVec4&, const Tolerances&);
  friend Frame FrameOf(const RationalSubspace&);
  friend Frame FrameOf(const RatBasis&);

  RealVec4 u_{};
  RealVec4 v_{};
  Unit6 plucker_{};
  std::optional<PluckerInt> exact_;
};

// Gram-Schmidt (with one re-orthogonalization pass). Throws NearDependent.
Frame OrthonormalFrame(const RealVec4& a, const RealVec4& b,
                       const Tolerances& tol = Tolerances::Default());
Frame FrameOf(const RationalSubspace& s);
Frame FrameOf(const RatBasis& basis);

// ||X ^ Y|| / (||X|| ||Y||). Throws ZeroVector.
double SinAngle(const RealVec4& x, const RealVec4& y);

struct PrincipalPair {
  RealVec4 x;  // unit vector in A
  RealVec4 y;  // unit vector in B
};

struct AngleReport {
  double psi1 = 0;     // sine of the first (smallest) principal angle
  double psi2 = 0;     // sine of the second principal angle
  double product = 0;  // |pairing| of the unit Plucker vectors
  std::array<PrincipalPair, 2> pairs{};
};

AngleReport PrincipalSines(const Frame& a, const Frame& b,
                           const Tolerances& tol = Tolerances::Default());

// psi1 * psi2 through the Plucker pairing.
double PsiProduct(const Frame& a, const Frame& b);

// min(|a - b|, |a + b|) over the unit Plucker vectors; a metric on G(2,4).
double ChordalDistance(const Frame& a, const Frame& b);
double ChordalDistance(const Unit6& a, const Unit6& b);

Unit6 UnitPlucker(const PluckerInt& p);

// First sine from unit Plucker vectors alone: with K = (a.b)^2 and
// P = pairing(a,b)^2 the squared sines are the roots of
// z^2 - (1 + P - K) z + P. Cheaper than an SVD; used for table scans.
double FirstSineFromPlucker(const Unit6& a, const Unit6& b);

// {"psi1":..,"psi2":..,"product":..,"pairs":[[X1,Y1],[X2,Y2]]}, reals with
// 17 significant digits.
std::string ToJson(const AngleReport& report);

}  // namespace g24

#endif  // G24_ANGLES_HPP_

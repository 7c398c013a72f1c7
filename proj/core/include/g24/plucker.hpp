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

#ifndef G24_PLUCKER_HPP_
#define G24_PLUCKER_HPP_

// Exact linear algebra of 2-dimensional subspaces of R^4.
//
// Plucker coordinates are the 2x2 minors of a 2x4 basis matrix, ordered by
// the column pairs (1,2),(1,3),(1,4),(2,3),(2,4),(3,4). With this order the
// Grassmannian is the quadric p1*p6 - p2*p5 + p3*p4 = 0 and two subspaces
// share a nonzero vector iff
//   p1*q6 + p6*q1 - p2*q5 - p5*q2 + p3*q4 + p4*q3 = 0.

#include <array>
#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>

#include "g24/arith.hpp"

namespace g24 {

template <class T>
using Vec4 = std::array<T, 4>;
template <class T>
using Vec6 = std::array<T, 6>;

using IntVec4 = Vec4<Int>;
using RatVec4 = Vec4<Rational>;

// Column pair (i, j), 0-based, of the k-th Plucker coordinate.
inline constexpr std::array<std::array<int, 2>, 6> kMinorPairs = {
    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

template <class T>
Vec6<T> Wedge4(const Vec4<T>& x, const Vec4<T>& y) {
  Vec6<T> out;
  for (std::size_t k = 0; k < 6; ++k) {
    auto [i, j] = kMinorPairs[k];
    out[k] = x[i] * y[j] - x[j] * y[i];
  }
  return out;
}

template <class T>
T QuadricResidual(const Vec6<T>& p) {
  return p[0] * p[5] - p[1] * p[4] + p[2] * p[3];
}

// Symmetric bilinear form whose zero set on the quadric is incidence.
// IncidencePairing(p, p) == 2 * QuadricResidual(p).
template <class T>
T IncidencePairing(const Vec6<T>& p, const Vec6<T>& q) {
  return p[0] * q[5] + p[5] * q[0] - p[1] * q[4] - p[4] * q[1] + p[2] * q[3] +
         p[3] * q[2];
}

template <class T>
T Dot6(const Vec6<T>& p, const Vec6<T>& q) {
  T s = p[0] * q[0];
  for (std::size_t k = 1; k < 6; ++k) s += p[k] * q[k];
  return s;
}

struct IntBasis {
  std::array<IntVec4, 2> rows;
  bool operator==(const IntBasis&) const = default;
};

struct RatBasis {
  std::array<RatVec4, 2> rows;
};

// Scales each row by the lcm of its denominators.
IntBasis ClearDenominators(const RatBasis& basis);

// Primitive, sign-canonical integer point of the Grassmannian quadric.
class PluckerInt {
 public:
  // Validates the quadric (NotDecomposable), divides by the gcd and makes the
  // first nonzero entry positive. Throws DependentBasis for the zero vector.
  static PluckerInt FromCoordinates(const Vec6<Int>& raw);

  const Int& operator[](std::size_t k) const { return p_[k]; }
  const Vec6<Int>& coords() const { return p_; }
  // Sum of squares; the squared height of the subspace.
  Int NormSq() const { return Dot6(p_, p_); }

  bool operator==(const PluckerInt& other) const { return p_ == other.p_; }
  // Lexicographic on the signed coordinates.
  std::strong_ordering operator<=>(const PluckerInt& other) const;

  std::string ToString() const;  // six space-separated decimals

 private:
  explicit PluckerInt(Vec6<Int> p) : p_(std::move(p)) {}
  Vec6<Int> p_;
};

Int IncidencePairing(const PluckerInt& a, const PluckerInt& b);

// Wedge of the rows, made primitive and sign-canonical.
PluckerInt ToPlucker(const IntBasis& basis);

// Basis of span_R(basis) ∩ Z^4, Lagrange-reduced and oriented so that
// ToPlucker of the result has the same sign as the input's wedge.
IntBasis Saturate(const IntBasis& basis);

// Saturated basis whose Plucker vector is `p`.
IntBasis FromPlucker(const PluckerInt& p);

struct Height {
  Int height_sq;
  double height;
};

// Covolume of span(basis) ∩ Z^4. The squared value is computed both as the
// Plucker norm and as the Gram determinant of the saturated basis; a
// disagreement is a logic error.
Height ComputeHeight(const IntBasis& basis);

// det(M^T M) for k <= 4 rational vectors (the squared generalized
// determinant), exact.
Rational GramDeterminant(std::span<const RatVec4> vectors);
Int GramDeterminant(const IntBasis& basis);

// sqrt(det(M^T M)) for k <= 4 real vectors.
double GeneralizedDet(std::span<const Vec4<double>> vectors);

// A rational 2-subspace with its canonical key, lattice basis and height.
class RationalSubspace {
 public:
  static RationalSubspace FromBasis(const IntBasis& basis);
  static RationalSubspace FromBasis(const RatBasis& basis);
  static RationalSubspace FromPlucker(const PluckerInt& p);
  // Reassembles a stored subspace without re-reducing the basis. The basis
  // must be saturated with wedge exactly `p`, `p` canonical, and
  // `height_sq` equal to |p|^2; otherwise throws kInvalidArgument.
  static RationalSubspace FromParts(const Vec6<Int>& p, const IntBasis& basis,
                                    const Int& height_sq);

  const PluckerInt& plucker() const { return plucker_; }
  const IntBasis& lattice_basis() const { return basis_; }
  const Int& height_sq() const { return height_sq_; }
  double height() const;

  bool operator==(const RationalSubspace& other) const {
    return plucker_ == other.plucker_;
  }

 private:
  RationalSubspace(PluckerInt p, IntBasis b, Int h)
      : plucker_(std::move(p)), basis_(std::move(b)), height_sq_(std::move(h)) {}

  PluckerInt plucker_;
  IntBasis basis_;
  Int height_sq_;
};

inline Int IncidencePairing(const RationalSubspace& a, const RationalSubspace& b) {
  return IncidencePairing(a.plucker(), b.plucker());
}

// The two subspaces share a nonzero vector.
inline bool Incident(const RationalSubspace& a, const RationalSubspace& b) {
  return IncidencePairing(a, b) == 0;
}

// Text form of a basis: two ';'-separated rows of ','-separated rationals,
// e.g. "1,0,1/2,0;0,1,0,-3". Decimal entries are read exactly. Parse errors
// report the row as the line and the character offset as the column.
RatBasis ParseBasis(std::string_view text);
std::string FormatBasis(const IntBasis& basis);
std::string FormatBasis(const RatBasis& basis);

}  // namespace g24

#endif  // G24_PLUCKER_HPP_

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

#include "g24/plucker.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "g24/error.hpp"

namespace g24 {

namespace {

using boost::multiprecision::abs;

Int Lcm(const Int& a, const Int& b) { return a / Gcd(a, b) * b; }

Int Dot4(const IntVec4& a, const IntVec4& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

Vec6<Int> WedgeRows(const IntBasis& basis) {
  return Wedge4(basis.rows[0], basis.rows[1]);
}

bool IsZero(const Vec6<Int>& p) {
  for (const Int& x : p) {
    if (x != 0) return false;
  }
  return true;
}

int FirstNonzeroSign(const Vec6<Int>& p) {
  for (const Int& x : p) {
    if (x != 0) return x > 0 ? 1 : -1;
  }
  return 0;
}

// Column operations on a 2x4 matrix, mirrored as row operations on the
// inverse of the accumulated unimodular transform.
class ColumnReducer {
 public:
  explicit ColumnReducer(const IntBasis& basis) : m_(basis.rows) {
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) inv_[i][j] = (i == j) ? 1 : 0;
    }
  }

  // Drives m[row][col] to zero against the pivot m[row][pivot].
  void Eliminate(int row, int pivot, int col) {
    while (m_[row][col] != 0) {
      Int q = m_[row][pivot] / m_[row][col];
      if (q != 0) SubtractColumn(pivot, col, q);
      SwapColumns(pivot, col);
    }
  }

  const Int& at(int r, int c) const { return m_[r][c]; }
  const IntVec4& inverse_row(int r) const { return inv_[r]; }

 private:
  // col_a -= q * col_b; inverse gets row_b += q * row_a.
  void SubtractColumn(int a, int b, const Int& q) {
    for (auto& row : m_) row[a] -= q * row[b];
    for (int j = 0; j < 4; ++j) inv_[b][j] += q * inv_[a][j];
  }

  void SwapColumns(int a, int b) {
    for (auto& row : m_) std::swap(row[a], row[b]);
    std::swap(inv_[a], inv_[b]);
  }

  std::array<IntVec4, 2> m_;
  std::array<IntVec4, 4> inv_;
};

// Lagrange-Gauss reduction of a 2-dimensional lattice basis.
void LagrangeReduce(IntVec4& a, IntVec4& b) {
  for (;;) {
    if (Dot4(a, a) > Dot4(b, b)) std::swap(a, b);
    Int mu = RoundDiv(Dot4(a, b), Dot4(a, a));
    if (mu == 0) return;
    for (int j = 0; j < 4; ++j) b[j] -= mu * a[j];
  }
}

Rational DeterminantInPlace(std::vector<std::vector<Rational>>& m) {
  const std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    while (pivot < n && m[pivot][c] == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != c) {
      std::swap(m[pivot], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m[r][c] == 0) continue;
      Rational f = m[r][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return det;
}

}  // namespace

IntBasis ClearDenominators(const RatBasis& basis) {
  IntBasis out;
  for (int r = 0; r < 2; ++r) {
    Int l = 1;
    for (const Rational& x : basis.rows[r]) {
      l = Lcm(l, boost::multiprecision::denominator(x));
    }
    for (int j = 0; j < 4; ++j) {
      Rational scaled = basis.rows[r][j] * l;
      out.rows[r][j] = boost::multiprecision::numerator(scaled);
    }
  }
  return out;
}

PluckerInt PluckerInt::FromCoordinates(const Vec6<Int>& raw) {
  if (IsZero(raw)) throw Error(ErrorCode::kDependentBasis, "zero Plucker vector");
  if (QuadricResidual(raw) != 0) {
    throw Error(ErrorCode::kNotDecomposable,
                "vector is off the Grassmannian quadric (residual " +
                    QuadricResidual(raw).str() + ")");
  }
  Int g = 0;
  for (const Int& x : raw) g = Gcd(g, x);
  if (FirstNonzeroSign(raw) < 0) g = -g;
  Vec6<Int> p;
  for (std::size_t k = 0; k < 6; ++k) p[k] = raw[k] / g;
  return PluckerInt(std::move(p));
}

std::strong_ordering PluckerInt::operator<=>(const PluckerInt& other) const {
  for (std::size_t k = 0; k < 6; ++k) {
    if (p_[k] < other.p_[k]) return std::strong_ordering::less;
    if (p_[k] > other.p_[k]) return std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

std::string PluckerInt::ToString() const {
  std::string s;
  for (std::size_t k = 0; k < 6; ++k) {
    if (k) s += ' ';
    s += p_[k].str();
  }
  return s;
}

Int IncidencePairing(const PluckerInt& a, const PluckerInt& b) {
  return IncidencePairing(a.coords(), b.coords());
}

PluckerInt ToPlucker(const IntBasis& basis) {
  Vec6<Int> w = WedgeRows(basis);
  if (IsZero(w)) throw Error(ErrorCode::kDependentBasis, "basis rows are dependent");
  return PluckerInt::FromCoordinates(w);
}

IntBasis Saturate(const IntBasis& basis) {
  Vec6<Int> w = WedgeRows(basis);
  if (IsZero(w)) throw Error(ErrorCode::kDependentBasis, "basis rows are dependent");

  // Column Hermite reduction: basis * V = [H | 0]. The first two rows of
  // V^{-1} then span the saturated lattice.
  ColumnReducer reducer(basis);
  for (int j = 1; j < 4; ++j) reducer.Eliminate(0, 0, j);
  for (int j = 2; j < 4; ++j) reducer.Eliminate(1, 1, j);
  if (reducer.at(0, 0) == 0 || reducer.at(1, 1) == 0) {
    throw std::logic_error("Saturate: rank dropped during reduction");
  }

  IntVec4 a = reducer.inverse_row(0);
  IntVec4 b = reducer.inverse_row(1);
  LagrangeReduce(a, b);
  if (FirstNonzeroSign(Wedge4(a, b)) != FirstNonzeroSign(w)) {
    for (Int& x : b) x = -x;
  }
  return IntBasis{{a, b}};
}

IntBasis FromPlucker(const PluckerInt& p) {
  // Row k of the antisymmetric matrix P[k][l] = p_{kl} lies in the subspace;
  // rows i and j are independent whenever p_{ij} != 0.
  std::array<IntVec4, 4> rows;
  for (auto& r : rows) r.fill(0);
  for (std::size_t k = 0; k < 6; ++k) {
    auto [i, j] = kMinorPairs[k];
    rows[i][j] = p[k];
    rows[j][i] = -p[k];
  }
  std::size_t k = 0;
  while (p[k] == 0) ++k;
  auto [i, j] = kMinorPairs[k];
  IntBasis sat = Saturate(IntBasis{{rows[i], rows[j]}});
  Vec6<Int> w = WedgeRows(sat);
  if (w != p.coords()) {
    for (Int& x : sat.rows[1]) x = -x;
    if (WedgeRows(sat) != p.coords()) {
      throw std::logic_error("FromPlucker: reconstruction mismatch");
    }
  }
  return sat;
}

Int GramDeterminant(const IntBasis& basis) {
  const IntVec4& a = basis.rows[0];
  const IntVec4& b = basis.rows[1];
  Int ab = Dot4(a, b);
  return Dot4(a, a) * Dot4(b, b) - ab * ab;
}

Rational GramDeterminant(std::span<const RatVec4> vectors) {
  const std::size_t k = vectors.size();
  if (k == 0 || k > 4) {
    throw Error(ErrorCode::kInvalidArgument, "GramDeterminant needs 1..4 vectors");
  }
  std::vector<std::vector<Rational>> g(k, std::vector<Rational>(k));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      Rational s = 0;
      for (int c = 0; c < 4; ++c) s += vectors[i][c] * vectors[j][c];
      g[i][j] = s;
    }
  }
  return DeterminantInPlace(g);
}

double GeneralizedDet(std::span<const Vec4<double>> vectors) {
  const std::size_t k = vectors.size();
  if (k == 0 || k > 4) {
    throw Error(ErrorCode::kInvalidArgument, "GeneralizedDet needs 1..4 vectors");
  }
  // Gaussian elimination with partial pivoting on the Gram matrix.
  std::array<std::array<double, 4>, 4> g{};
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      double s = 0;
      for (int c = 0; c < 4; ++c) s += vectors[i][c] * vectors[j][c];
      g[i][j] = s;
    }
  }
  double det = 1;
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t pivot = c;
    for (std::size_t r = c + 1; r < k; ++r) {
      if (std::fabs(g[r][c]) > std::fabs(g[pivot][c])) pivot = r;
    }
    if (g[pivot][c] == 0) return 0;
    if (pivot != c) {
      std::swap(g[pivot], g[c]);
      det = -det;
    }
    det *= g[c][c];
    for (std::size_t r = c + 1; r < k; ++r) {
      double f = g[r][c] / g[c][c];
      for (std::size_t j = c; j < k; ++j) g[r][j] -= f * g[c][j];
    }
  }
  return std::sqrt(std::max(det, 0.0));
}

Height ComputeHeight(const IntBasis& basis) {
  PluckerInt p = ToPlucker(basis);
  Int from_plucker = p.NormSq();
  Int from_gram = GramDeterminant(Saturate(basis));
  if (from_plucker != from_gram) {
    throw std::logic_error("ComputeHeight: Plucker norm " + from_plucker.str() +
                           " != saturated Gram determinant " + from_gram.str());
  }
  return Height{from_plucker, std::sqrt(from_plucker.convert_to<double>())};
}

RationalSubspace RationalSubspace::FromBasis(const IntBasis& basis) {
  IntBasis sat = Saturate(basis);
  PluckerInt p = ToPlucker(sat);
  if (WedgeRows(sat) != p.coords()) {
    for (Int& x : sat.rows[1]) x = -x;
  }
  Int h = p.NormSq();
#ifndef NDEBUG
  if (h != GramDeterminant(sat)) throw std::logic_error("height mismatch");
#endif
  return RationalSubspace(std::move(p), std::move(sat), std::move(h));
}

RationalSubspace RationalSubspace::FromBasis(const RatBasis& basis) {
  return FromBasis(ClearDenominators(basis));
}

RationalSubspace RationalSubspace::FromPlucker(const PluckerInt& p) {
  IntBasis b = g24::FromPlucker(p);
  return RationalSubspace(p, std::move(b), p.NormSq());
}

RationalSubspace RationalSubspace::FromParts(const Vec6<Int>& p, const IntBasis& basis,
                                             const Int& height_sq) {
  PluckerInt canonical = PluckerInt::FromCoordinates(p);
  if (canonical.coords() != p) {
    throw Error(ErrorCode::kInvalidArgument, "Plucker vector is not primitive and canonical");
  }
  if (WedgeRows(basis) != p) {
    throw Error(ErrorCode::kInvalidArgument, "basis does not span a saturated lattice with this Plucker vector");
  }
  if (height_sq != canonical.NormSq()) {
    throw Error(ErrorCode::kInvalidArgument, "height_sq differs from |p|^2");
  }
  return RationalSubspace(std::move(canonical), basis, height_sq);
}

double RationalSubspace::height() const {
  return std::sqrt(height_sq_.convert_to<double>());
}

RatBasis ParseBasis(std::string_view text) {
  RatBasis out;
  std::size_t row_start = 0;
  for (int r = 0; r < 2; ++r) {
    std::size_t row_end = text.find(';', row_start);
    if (r == 0 && row_end == std::string_view::npos) {
      throw ParseError("expected two rows separated by ';'", 1,
                       static_cast<int>(text.size()) + 1);
    }
    if (r == 1 && row_end != std::string_view::npos) {
      throw ParseError("more than two rows", 2,
                       static_cast<int>(row_end - row_start) + 1);
    }
    if (row_end == std::string_view::npos) row_end = text.size();
    std::string_view row = text.substr(row_start, row_end - row_start);
    std::size_t entry_start = 0;
    for (int c = 0; c < 4; ++c) {
      std::size_t entry_end = row.find(',', entry_start);
      if (c < 3 && entry_end == std::string_view::npos) {
        throw ParseError("row needs 4 entries", r + 1, static_cast<int>(row.size()) + 1);
      }
      if (c == 3) {
        if (entry_end != std::string_view::npos) {
          throw ParseError("row has more than 4 entries", r + 1,
                           static_cast<int>(entry_end) + 1);
        }
        entry_end = row.size();
      }
      std::string_view entry = row.substr(entry_start, entry_end - entry_start);
      // Surrounding blanks are allowed.
      std::size_t lead = 0;
      while (lead < entry.size() && entry[lead] == ' ') ++lead;
      entry.remove_prefix(lead);
      while (!entry.empty() && entry.back() == ' ') entry.remove_suffix(1);
      try {
        out.rows[r][c] = ParseRational(entry);
      } catch (const ParseError& e) {
        throw ParseError("bad entry '" + std::string(entry) + "'", r + 1,
                         static_cast<int>(entry_start + lead) + e.column());
      }
      entry_start = entry_end + 1;
    }
    row_start = row_end + 1;
  }
  return out;
}

std::string FormatBasis(const IntBasis& basis) {
  std::string s;
  for (int r = 0; r < 2; ++r) {
    if (r) s += ';';
    for (int c = 0; c < 4; ++c) {
      if (c) s += ',';
      s += basis.rows[r][c].str();
    }
  }
  return s;
}

std::string FormatBasis(const RatBasis& basis) {
  std::string s;
  for (int r = 0; r < 2; ++r) {
    if (r) s += ';';
    for (int c = 0; c < 4; ++c) {
      if (c) s += ',';
      const Rational& x = basis.rows[r][c];
      s += boost::multiprecision::denominator(x) == 1 ? ToString(boost::multiprecision::numerator(x))
                                                      : ToString(x);
    }
  }
  return s;
}

}  // namespace g24

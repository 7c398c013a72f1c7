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

// Independent reference computations and random generators for tests. None
// of these route through the library algorithms they are compared with.

#ifndef G24_TESTS_ORACLES_HPP_
#define G24_TESTS_ORACLES_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "g24/angles.hpp"
#include "g24/arith.hpp"
#include "g24/plucker.hpp"

namespace g24::testing {

using Key6 = std::array<long, 6>;

// All primitive, sign-canonical integer points of the quadric with norm at
// most t, by six nested loops.
inline std::set<Key6> NaivePlanes(int t) {
  std::set<Key6> out;
  const long t2 = static_cast<long>(t) * t;
  Key6 p;
  for (p[0] = -t; p[0] <= t; ++p[0])
    for (p[1] = -t; p[1] <= t; ++p[1])
      for (p[2] = -t; p[2] <= t; ++p[2])
        for (p[3] = -t; p[3] <= t; ++p[3])
          for (p[4] = -t; p[4] <= t; ++p[4])
            for (p[5] = -t; p[5] <= t; ++p[5]) {
              long n = 0;
              for (long x : p) n += x * x;
              if (n == 0 || n > t2) continue;
              if (p[0] * p[5] - p[1] * p[4] + p[2] * p[3] != 0) continue;
              long g = 0;
              for (long x : p) g = std::gcd(g, x);
              if (g != 1) continue;
              long first = *std::find_if(p.begin(), p.end(), [](long x) { return x != 0; });
              if (first < 0) continue;
              out.insert(p);
            }
  return out;
}

// Rank of rational row vectors by Gaussian elimination.
inline int ExactRank(std::vector<std::array<Rational, 4>> rows) {
  int rank = 0;
  for (int col = 0; col < 4 && rank < static_cast<int>(rows.size()); ++col) {
    int pivot = -1;
    for (int r = rank; r < static_cast<int>(rows.size()); ++r) {
      if (rows[r][col] != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    std::swap(rows[rank], rows[pivot]);
    for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
      if (r == rank || rows[r][col] == 0) continue;
      Rational f = rows[r][col] / rows[rank][col];
      for (int c = 0; c < 4; ++c) rows[r][c] -= f * rows[rank][c];
    }
    ++rank;
  }
  return rank;
}

inline std::array<Rational, 4> AsRational(const IntVec4& v) {
  return {Rational(v[0]), Rational(v[1]), Rational(v[2]), Rational(v[3])};
}

// Squared covolume of span(rows) ∩ Z^4: the wedge divided by its content.
inline Int HeightSqOracle(const IntBasis& b) {
  Int w[6];
  int k = 0;
  Int g = 0;
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      w[k] = b.rows[0][i] * b.rows[1][j] - b.rows[0][j] * b.rows[1][i];
      g = boost::multiprecision::gcd(g, w[k]);
      ++k;
    }
  }
  Int n = 0;
  for (const Int& x : w) n += (x / g) * (x / g);
  return n;
}

inline Int GramDetOracle(const IntBasis& b) {
  Int a = 0, c = 0, d = 0;
  for (int i = 0; i < 4; ++i) {
    a += b.rows[0][i] * b.rows[0][i];
    c += b.rows[0][i] * b.rows[1][i];
    d += b.rows[1][i] * b.rows[1][i];
  }
  return a * d - c * c;
}

// True when v is an integer combination of the rows of b.
inline bool InIntegerSpan(const IntVec4& v, const IntBasis& b) {
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      Int det = b.rows[0][i] * b.rows[1][j] - b.rows[0][j] * b.rows[1][i];
      if (det == 0) continue;
      Rational x = Rational(v[i] * b.rows[1][j] - v[j] * b.rows[1][i], det);
      Rational y = Rational(b.rows[0][i] * v[j] - b.rows[0][j] * v[i], det);
      if (boost::multiprecision::denominator(x) != 1 ||
          boost::multiprecision::denominator(y) != 1) {
        return false;
      }
      for (int c = 0; c < 4; ++c) {
        if (x * b.rows[0][c] + y * b.rows[1][c] != Rational(v[c])) return false;
      }
      return true;
    }
  }
  return false;
}

// Plain-double helpers for the minimization oracle.
using V4 = std::array<double, 4>;

inline double Dot(const V4& a, const V4& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

inline std::pair<V4, V4> GramSchmidt(V4 a, V4 b) {
  double na = std::sqrt(Dot(a, a));
  for (double& x : a) x /= na;
  double p = Dot(a, b);
  for (int i = 0; i < 4; ++i) b[i] -= p * a[i];
  double nb = std::sqrt(Dot(b, b));
  for (double& x : b) x /= nb;
  return {a, b};
}

inline double SinBetween(const V4& x, const V4& y) {
  double c = Dot(x, y) / std::sqrt(Dot(x, x) * Dot(y, y));
  return std::sqrt(std::max(0.0, 1 - c * c));
}

// min over unit x in span(a1,a2), y in span(b1,b2) of sin(x, y): a grid over
// both circles, then repeated local refinement around the best cell.
inline double GridMinSine(const V4& a1, const V4& a2, const V4& b1, const V4& b2) {
  auto [u1, u2] = GramSchmidt(a1, a2);
  auto [w1, w2] = GramSchmidt(b1, b2);
  auto eval = [&](double s, double t) {
    V4 x, y;
    for (int i = 0; i < 4; ++i) {
      x[i] = std::cos(s) * u1[i] + std::sin(s) * u2[i];
      y[i] = std::cos(t) * w1[i] + std::sin(t) * w2[i];
    }
    // Lines, so sin is taken for y and -y alike.
    return SinBetween(x, y);
  };
  const int n = 180;
  const double pi = std::acos(-1.0);
  double best = 2, bs = 0, bt = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double s = pi * i / n, t = pi * j / n;
      double v = eval(s, t);
      if (v < best) best = v, bs = s, bt = t;
    }
  }
  double step = pi / n;
  for (int round = 0; round < 60; ++round) {
    double cs = bs, ct = bt;
    for (int i = -4; i <= 4; ++i) {
      for (int j = -4; j <= 4; ++j) {
        double s = cs + i * step / 4, t = ct + j * step / 4;
        double v = eval(s, t);
        if (v < best) best = v, bs = s, bt = t;
      }
    }
    step /= 2;
  }
  return best;
}

// max over unit x in span(a1,a2) of its distance to span(b1,b2).
inline double GridMaxDistance(const V4& a1, const V4& a2, const V4& b1, const V4& b2) {
  auto [u1, u2] = GramSchmidt(a1, a2);
  auto [w1, w2] = GramSchmidt(b1, b2);
  auto eval = [&](double s) {
    V4 x;
    for (int i = 0; i < 4; ++i) x[i] = std::cos(s) * u1[i] + std::sin(s) * u2[i];
    double p1 = Dot(x, w1), p2 = Dot(x, w2);
    return std::sqrt(std::max(0.0, 1 - p1 * p1 - p2 * p2));
  };
  const double pi = std::acos(-1.0);
  double best = -1, bs = 0, step = pi / 720;
  for (int i = 0; i < 720; ++i) {
    double v = eval(i * step);
    if (v > best) best = v, bs = i * step;
  }
  for (int round = 0; round < 60; ++round) {
    double c = bs;
    for (int i = -4; i <= 4; ++i) {
      double v = eval(c + i * step / 4);
      if (v > best) best = v, bs = c + i * step / 4;
    }
    step /= 2;
  }
  return best;
}

inline double Det4(const std::array<V4, 4>& m) {
  std::array<V4, 4> a = m;
  double det = 1;
  for (int c = 0; c < 4; ++c) {
    int p = c;
    for (int r = c + 1; r < 4; ++r) {
      if (std::fabs(a[r][c]) > std::fabs(a[p][c])) p = r;
    }
    if (a[p][c] == 0) return 0;
    if (p != c) std::swap(a[p], a[c]), det = -det;
    det *= a[c][c];
    for (int r = c + 1; r < 4; ++r) {
      double f = a[r][c] / a[c][c];
      for (int k = c; k < 4; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return det;
}

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  long Uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
  double Normal() { return std::normal_distribution<double>()(rng_); }

  IntVec4 IntVector(long range) {
    IntVec4 v;
    for (Int& x : v) x = Uniform(-range, range);
    return v;
  }

  // Random basis with independent rows.
  IntBasis Basis(long range) {
    for (;;) {
      IntBasis b{{IntVector(range), IntVector(range)}};
      if (ExactRank({AsRational(b.rows[0]), AsRational(b.rows[1])}) == 2) return b;
    }
  }

  V4 Gaussian() { return {Normal(), Normal(), Normal(), Normal()}; }

  Frame RandomFrame() {
    V4 a = Gaussian(), b = Gaussian();
    return OrthonormalFrame(a, b);
  }

  // det = ±1.
  std::array<std::array<long, 2>, 2> Unimodular() {
    std::array<std::array<long, 2>, 2> u = {{{1, 0}, {0, 1}}};
    for (int k = 0; k < 6; ++k) {
      long m = Uniform(-3, 3);
      if (Uniform(0, 1)) {
        for (int c = 0; c < 2; ++c) u[0][c] += m * u[1][c];
      } else {
        for (int c = 0; c < 2; ++c) u[1][c] += m * u[0][c];
      }
      if (Uniform(0, 1)) std::swap(u[0], u[1]);
    }
    return u;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline IntBasis Apply(const std::array<std::array<long, 2>, 2>& u, const IntBasis& b) {
  IntBasis out;
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 4; ++c) out.rows[r][c] = u[r][0] * b.rows[0][c] + u[r][1] * b.rows[1][c];
  }
  return out;
}

inline IntBasis MakeBasis(std::array<long, 4> a, std::array<long, 4> b) {
  IntBasis out;
  for (int c = 0; c < 4; ++c) {
    out.rows[0][c] = a[c];
    out.rows[1][c] = b[c];
  }
  return out;
}

inline RationalSubspace Span(std::array<long, 4> a, std::array<long, 4> b) {
  return RationalSubspace::FromBasis(MakeBasis(a, b));
}

inline Vec6<Int> Six(std::array<long, 6> p) {
  Vec6<Int> out;
  for (int k = 0; k < 6; ++k) out[k] = p[k];
  return out;
}

}  // namespace g24::testing

#endif  // G24_TESTS_ORACLES_HPP_

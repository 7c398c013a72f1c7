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

#include "g24/angles.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

#include "g24/error.hpp"

namespace g24 {

namespace {

double Dot(const RealVec4& a, const RealVec4& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

double Norm(const RealVec4& a) { return std::sqrt(Dot(a, a)); }

double Norm6(const Unit6& a) {
  double s = 0;
  for (double x : a) s += x * x;
  return std::sqrt(s);
}

RealVec4 Combine(double s, const RealVec4& a, double t, const RealVec4& b) {
  return {s * a[0] + t * b[0], s * a[1] + t * b[1], s * a[2] + t * b[2],
          s * a[3] + t * b[3]};
}

Eigen::Matrix<double, 4, 2> Columns(const Frame& f) {
  Eigen::Matrix<double, 4, 2> m;
  for (int i = 0; i < 4; ++i) {
    m(i, 0) = f.u()[i];
    m(i, 1) = f.v()[i];
  }
  return m;
}

}  // namespace

const Tolerances& Tolerances::Default() {
  static const Tolerances kDefault;
  return kDefault;
}

Frame OrthonormalFrame(const RealVec4& a, const RealVec4& b, const Tolerances& tol) {
  double na = Norm(a);
  double nb = Norm(b);
  if (na == 0 || nb == 0 || !std::isfinite(na) || !std::isfinite(nb)) {
    throw Error(ErrorCode::kNearDependent, "zero or non-finite basis row");
  }
  RealVec4 u = Combine(1 / na, a, 0, a);
  RealVec4 bn = Combine(1 / nb, b, 0, b);
  // |u ^ bn| is the generalized determinant of the normalized rows.
  RealVec4 v = Combine(1, bn, -Dot(u, bn), u);
  if (Norm(v) < tol.near_dependent) {
    throw Error(ErrorCode::kNearDependent, "basis rows are numerically dependent");
  }
  v = Combine(1, v, -Dot(u, v), u);
  double nv = Norm(v);
  v = Combine(1 / nv, v, 0, v);

  Frame f;
  f.u_ = u;
  f.v_ = v;
  f.plucker_ = Wedge4(u, v);
  double np = Norm6(f.plucker_);
  for (double& x : f.plucker_) x /= np;
  return f;
}

Unit6 UnitPlucker(const PluckerInt& p) {
  // Scale by the largest entry first so huge coordinates do not overflow.
  double big = 0;
  Unit6 out;
  Int max_abs = 0;
  for (std::size_t k = 0; k < 6; ++k) {
    Int a = boost::multiprecision::abs(p[k]);
    if (a > max_abs) max_abs = a;
  }
  for (std::size_t k = 0; k < 6; ++k) {
    out[k] = Rational(p[k], max_abs).convert_to<double>();
    big += out[k] * out[k];
  }
  double n = std::sqrt(big);
  for (double& x : out) x /= n;
  return out;
}

Frame FrameOf(const RationalSubspace& s) {
  RealVec4 a, b;
  const IntBasis& basis = s.lattice_basis();
  // Normalize rows exactly by their largest entry before leaving Z.
  for (int r = 0; r < 2; ++r) {
    Int max_abs = 0;
    for (const Int& x : basis.rows[r]) {
      Int ax = boost::multiprecision::abs(x);
      if (ax > max_abs) max_abs = ax;
    }
    RealVec4& dst = r == 0 ? a : b;
    for (int c = 0; c < 4; ++c) {
      dst[c] = Rational(basis.rows[r][c], max_abs).convert_to<double>();
    }
  }
  Frame f = OrthonormalFrame(a, b);
  Unit6 exact_unit = UnitPlucker(s.plucker());
  double sign = Dot6(exact_unit, f.plucker_) < 0 ? -1.0 : 1.0;
  for (std::size_t k = 0; k < 6; ++k) f.plucker_[k] = sign * exact_unit[k];
  f.exact_ = s.plucker();
  return f;
}

Frame FrameOf(const RatBasis& basis) {
  return FrameOf(RationalSubspace::FromBasis(basis));
}

double SinAngle(const RealVec4& x, const RealVec4& y) {
  double nx = Norm(x);
  double ny = Norm(y);
  if (nx == 0 || ny == 0) throw Error(ErrorCode::kZeroVector, "SinAngle of a zero vector");
  Unit6 w = Wedge4(x, y);
  return std::min(1.0, Norm6(w) / (nx * ny));
}

AngleReport PrincipalSines(const Frame& a, const Frame& b, const Tolerances& tol) {
  const Eigen::Matrix<double, 4, 2> fa = Columns(a);
  const Eigen::Matrix<double, 4, 2> fb = Columns(b);
  const Eigen::Matrix2d cross = fa.transpose() * fb;
  Eigen::JacobiSVD<Eigen::Matrix2d> svd(cross, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::Vector2d sigma = svd.singularValues();
  const Eigen::Matrix2d& left = svd.matrixU();
  const Eigen::Matrix2d& right = svd.matrixV();

  AngleReport report;
  for (int k = 0; k < 2; ++k) {
    Eigen::Vector4d x = fa * left.col(k);
    Eigen::Vector4d y = fb * right.col(k);
    for (int i = 0; i < 4; ++i) {
      report.pairs[k].x[i] = x(i);
      report.pairs[k].y[i] = y(i);
    }
  }
  auto from_cosine = [](double s) { return std::sqrt(std::max(0.0, 1.0 - s * s)); };
  report.psi1 = from_cosine(sigma(0));
  report.psi2 = from_cosine(sigma(1));

  if (sigma(0) > tol.tiny_angle_sigma) {
    // Singular values of (I - P_A) B are the principal sines themselves.
    Eigen::Matrix<double, 4, 2> residual = fb - fa * cross;
    residual -= fa * (fa.transpose() * residual);
    Eigen::JacobiSVD<Eigen::Matrix<double, 4, 2>> rsvd(residual);
    const Eigen::Vector2d sines = rsvd.singularValues();
    report.psi1 = sines(1);
    if (sigma(1) > tol.tiny_angle_sigma) report.psi2 = sines(0);
  }
  report.psi1 = std::min(report.psi1, report.psi2);
  report.product = PsiProduct(a, b);
  return report;
}

double PsiProduct(const Frame& a, const Frame& b) {
  return std::min(1.0, std::fabs(IncidencePairing(a.plucker(), b.plucker())));
}

double ChordalDistance(const Unit6& a, const Unit6& b) {
  double minus = 0;
  double plus = 0;
  for (std::size_t k = 0; k < 6; ++k) {
    minus += (a[k] - b[k]) * (a[k] - b[k]);
    plus += (a[k] + b[k]) * (a[k] + b[k]);
  }
  return std::sqrt(std::min(minus, plus));
}

double ChordalDistance(const Frame& a, const Frame& b) {
  return ChordalDistance(a.plucker(), b.plucker());
}

double FirstSineFromPlucker(const Unit6& a, const Unit6& b) {
  double d = Dot6(a, b);
  double q = IncidencePairing(a, b);
  double k = d * d;
  double p = q * q;
  double s = 1 + p - k;
  double disc = std::max(0.0, s * s - 4 * p);
  double denom = s + std::sqrt(disc);
  if (denom <= 0) return 0;
  return std::sqrt(std::max(0.0, 2 * p / denom));
}

std::string ToJson(const AngleReport& report) {
  auto vec = [](const RealVec4& v) {
    std::string s = "[";
    for (int i = 0; i < 4; ++i) {
      if (i) s += ", ";
      s += FormatReal(v[i]);
    }
    return s + "]";
  };
  std::string s = "{\"psi1\": " + FormatReal(report.psi1) +
                  ", \"psi2\": " + FormatReal(report.psi2) +
                  ", \"product\": " + FormatReal(report.product) + ", \"pairs\": [";
  for (int k = 0; k < 2; ++k) {
    if (k) s += ", ";
    s += "[" + vec(report.pairs[k].x) + ", " + vec(report.pairs[k].y) + "]";
  }
  return s + "]}";
}

}  // namespace g24

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

#include "g24/enumerate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <system_error>

#include "g24/error.hpp"

namespace g24 {

namespace {

using Key = std::array<std::int64_t, 6>;

std::int64_t ISqrt(std::int64_t n) {
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

bool Canonical(const Key& p) {
  std::int64_t g = 0;
  int first_sign = 0;
  for (std::int64_t x : p) {
    if (first_sign == 0 && x != 0) first_sign = x > 0 ? 1 : -1;
    g = std::gcd(g, x);
  }
  return first_sign > 0 && g == 1;
}

bool EntryLess(const TableEntry& a, const TableEntry& b) {
  if (a.height_sq != b.height_sq) return a.height_sq < b.height_sq;
  return a.p < b.p;
}

std::int64_t NormSq(const Key& p) {
  std::int64_t s = 0;
  for (std::int64_t x : p) s += x * x;
  return s;
}

// Per-entry first sines of A against a table prefix.
struct Scan {
  std::vector<double> psi;
  std::vector<char> incident;
};

constexpr double kRefineBelow = 1e-5;

Scan ScanTable(const Frame& a, const HeightTable& table, std::size_t count) {
  Scan scan;
  scan.psi.resize(count);
  scan.incident.assign(count, 0);
  const Unit6& unit_a = a.plucker();
  for (std::size_t i = 0; i < count; ++i) {
    Unit6 b = table.UnitPluckerAt(i);
    scan.psi[i] = FirstSineFromPlucker(unit_a, b);
    // The closed form loses absolute accuracy ~1e-8 when both angles are
    // small; the projection residual does not.
    if (scan.psi[i] < kRefineBelow) {
      scan.psi[i] = PrincipalSines(a, FrameOf(table.Subspace(i))).psi1;
    }
    // Float pairing error is ~1e-15, so only near-zero values can be exact
    // zeros; confirm those with integers.
    if (a.exact() && std::fabs(IncidencePairing(unit_a, b)) < 1e-6) {
      if (IncidencePairing(*a.exact(), table.Plucker(i)) == 0) {
        scan.psi[i] = 0;
        scan.incident[i] = 1;
      }
    }
  }
  return scan;
}

// Strictly better, or an exact tie broken in favour of A itself (zero
// second angle); remaining ties keep the earlier canonical entry.
bool Better(const Frame& a, const HeightTable& table, const Scan& scan, std::size_t i,
            std::size_t best) {
  if (scan.psi[i] != scan.psi[best]) return scan.psi[i] < scan.psi[best];
  return scan.incident[i] && a.exact() && table.Plucker(i) == *a.exact();
}

void CheckTableCovers(const HeightTable& table, int t) {
  if (t < 1) throw Error(ErrorCode::kEmptyRange, "t must be at least 1");
  if (table.bound_sq() < static_cast<std::int64_t>(t) * t) {
    throw Error(ErrorCode::kInvalidArgument,
                "height table bound " + std::to_string(table.bound_sq()) +
                    " does not cover t^2 = " + std::to_string(t * t));
  }
}

ApproxRecord MakeRecord(double t, const HeightTable& table, std::size_t index,
                        const Scan& scan, const Tolerances& tol) {
  RationalSubspace best = table.Subspace(index);
  double h = std::sqrt(static_cast<double>(table.entries()[index].height_sq));
  double psi = scan.psi[index];
  bool incident = scan.incident[index] != 0;
  return ApproxRecord{t,        best,     psi, h * psi, h * h * h * psi, incident,
                      !incident && psi < tol.incidence};
}

}  // namespace

std::filesystem::path DefaultCacheDir() {
  if (const char* dir = std::getenv("G24_CACHE_DIR"); dir && *dir) return dir;
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) {
    return std::filesystem::path(xdg) / "g24";
  }
  if (const char* home = std::getenv("HOME"); home && *home) {
    return std::filesystem::path(home) / ".cache" / "g24";
  }
  return std::filesystem::path(".g24-cache");
}

HeightTable::HeightTable(std::int64_t bound_sq, std::vector<TableEntry> entries)
    : bound_sq_(bound_sq), entries_(std::move(entries)) {}

std::size_t HeightTable::CountUpTo(std::int64_t height_sq) const {
  auto it = std::upper_bound(
      entries_.begin(), entries_.end(), height_sq,
      [](std::int64_t h, const TableEntry& e) { return h < e.height_sq; });
  return static_cast<std::size_t>(it - entries_.begin());
}

PluckerInt HeightTable::Plucker(std::size_t i) const {
  Vec6<Int> p;
  for (std::size_t k = 0; k < 6; ++k) p[k] = entries_[i].p[k];
  return PluckerInt::FromCoordinates(p);
}

RationalSubspace HeightTable::Subspace(std::size_t i) const {
  return RationalSubspace::FromPlucker(Plucker(i));
}

Unit6 HeightTable::UnitPluckerAt(std::size_t i) const {
  const TableEntry& e = entries_[i];
  double inv = 1.0 / std::sqrt(static_cast<double>(e.height_sq));
  Unit6 u;
  for (std::size_t k = 0; k < 6; ++k) u[k] = static_cast<double>(e.p[k]) * inv;
  return u;
}

HeightTable EnumerateHeights(int t, const EnumerationConfig& config) {
  if (t < 1) throw Error(ErrorCode::kEmptyRange, "height bound must be at least 1");
  if (t > config.cap) {
    throw Error(ErrorCode::kBoundTooLarge, "height bound " + std::to_string(t) +
                                               " exceeds the enumeration cap " +
                                               std::to_string(config.cap));
  }
  return EnumerateHeightsSq(static_cast<std::int64_t>(t) * t, config);
}

HeightTable EnumerateHeightsSq(std::int64_t bound_sq, const EnumerationConfig& config) {
  if (bound_sq < 1) throw Error(ErrorCode::kEmptyRange, "height bound must be at least 1");
  if (bound_sq > static_cast<std::int64_t>(config.cap) * config.cap) {
    throw Error(ErrorCode::kBoundTooLarge, "squared bound " + std::to_string(bound_sq) +
                                               " exceeds the enumeration cap " +
                                               std::to_string(config.cap));
  }
  const std::int64_t b = bound_sq;
  std::vector<TableEntry> out;

  // Canonical sign forces the first nonzero coordinate positive, so p1 >= 0
  // and, on the p1 = 0 stratum, the remaining prefix is handled by the
  // Canonical() filter.
  const std::int64_t r1 = ISqrt(b);
  for (std::int64_t p1 = 0; p1 <= r1; ++p1) {
    const std::int64_t s1 = p1 * p1;
    const std::int64_t r2 = ISqrt(b - s1);
    for (std::int64_t p2 = -r2; p2 <= r2; ++p2) {
      const std::int64_t s2 = s1 + p2 * p2;
      const std::int64_t r3 = ISqrt(b - s2);
      for (std::int64_t p3 = -r3; p3 <= r3; ++p3) {
        const std::int64_t s3 = s2 + p3 * p3;
        const std::int64_t r4 = ISqrt(b - s3);
        for (std::int64_t p4 = -r4; p4 <= r4; ++p4) {
          const std::int64_t s4 = s3 + p4 * p4;
          const std::int64_t r5 = ISqrt(b - s4);
          for (std::int64_t p5 = -r5; p5 <= r5; ++p5) {
            const std::int64_t s5 = s4 + p5 * p5;
            const std::int64_t num = p2 * p5 - p3 * p4;
            if (p1 != 0) {
              // Quadric p1 p6 - p2 p5 + p3 p4 = 0 determines p6.
              if (num % p1 != 0) continue;
              const std::int64_t p6 = num / p1;
              const std::int64_t h = s5 + p6 * p6;
              if (h > b) continue;
              Key key{p1, p2, p3, p4, p5, p6};
              if (Canonical(key)) out.push_back({key, h});
            } else {
              if (num != 0) continue;
              const std::int64_t r6 = ISqrt(b - s5);
              for (std::int64_t p6 = -r6; p6 <= r6; ++p6) {
                Key key{p1, p2, p3, p4, p5, p6};
                if (Canonical(key)) out.push_back({key, s5 + p6 * p6});
              }
            }
          }
        }
      }
    }
  }
  std::sort(out.begin(), out.end(), EntryLess);
  return HeightTable(bound_sq, std::move(out));
}

void WriteTable(const HeightTable& table, std::ostream& out) {
  out << "G24-HTABLE " << HeightTable::kVersion << ' ' << table.bound_sq() << '\n';
  for (const TableEntry& e : table.entries()) {
    for (std::size_t k = 0; k < 6; ++k) {
      if (k) out << ' ';
      out << e.p[k];
    }
    out << '\n';
  }
}

HeightTable ReadTable(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw ParseError("missing table header", 1, 1);
  std::istringstream hs(header);
  std::string magic, version;
  std::int64_t bound_sq = 0;
  if (!(hs >> magic >> version >> bound_sq) || magic != "G24-HTABLE") {
    throw ParseError("bad table header '" + header + "'", 1, 1);
  }
  if (version != HeightTable::kVersion) {
    throw ParseError("unsupported table version '" + version + "'", 1,
                     static_cast<int>(magic.size()) + 2);
  }
  std::vector<TableEntry> entries;
  std::string line;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream ls(line);
    Key key;
    for (auto& x : key) {
      if (!(ls >> x)) throw ParseError("expected six integers", line_no, 1);
    }
    std::string extra;
    if (ls >> extra) throw ParseError("trailing data", line_no, 1);
    const std::int64_t h = NormSq(key);
    const bool on_quadric = key[0] * key[5] - key[1] * key[4] + key[2] * key[3] == 0;
    if (!on_quadric || !Canonical(key) || h > bound_sq) {
      throw ParseError("entry is not a canonical Plucker vector within the bound", line_no, 1);
    }
    TableEntry e{key, h};
    if (!entries.empty() && !EntryLess(entries.back(), e)) {
      throw ParseError("entries out of canonical order", line_no, 1);
    }
    entries.push_back(e);
  }
  return HeightTable(bound_sq, std::move(entries));
}

std::filesystem::path CachePath(const std::filesystem::path& dir, std::int64_t bound_sq) {
  return dir / ("htable-" + std::to_string(bound_sq) + ".txt");
}

HeightTable LoadOrEnumerate(std::int64_t bound_sq, const EnumerationConfig& config,
                            bool* cache_hit) {
  if (cache_hit) *cache_hit = false;
  if (!config.cache_dir.empty()) {
    std::ifstream in(CachePath(config.cache_dir, bound_sq));
    if (in) {
      try {
        HeightTable table = ReadTable(in);
        if (table.bound_sq() == bound_sq) {
          if (cache_hit) *cache_hit = true;
          return table;
        }
      } catch (const Error&) {
        // Unreadable cache files are rebuilt below.
      }
    }
  }
  HeightTable table = EnumerateHeightsSq(bound_sq, config);
  if (!config.cache_dir.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(config.cache_dir, ec);
    const auto path = CachePath(config.cache_dir, bound_sq);
    const auto tmp = path.string() + ".tmp";
    {
      std::ofstream out(tmp);
      if (out) WriteTable(table, out);
    }
    std::filesystem::rename(tmp, path, ec);
  }
  return table;
}

const HeightTable& TableStore::AtLeast(std::int64_t bound_sq) {
  const std::int64_t cap_sq = static_cast<std::int64_t>(config_.cap) * config_.cap;
  if (bound_sq > cap_sq) {
    throw Error(ErrorCode::kEnumerationCapExceeded,
                "need heights up to sqrt(" + std::to_string(bound_sq) +
                    ") but the enumeration cap is " + std::to_string(config_.cap));
  }
  if (!table_ || table_->bound_sq() < bound_sq) {
    // Round up to a perfect square so cache files are shared across callers.
    std::int64_t t = ISqrt(std::max<std::int64_t>(bound_sq, 1));
    if (t * t < bound_sq) ++t;
    table_ = LoadOrEnumerate(std::min(t * t, cap_sq), config_);
  }
  return *table_;
}

ApproxRecord PsiA(const Frame& a, int t, const HeightTable& table, const Tolerances& tol) {
  CheckTableCovers(table, t);
  const std::size_t count = table.CountUpTo(static_cast<std::int64_t>(t) * t);
  Scan scan = ScanTable(a, table, count);
  std::size_t best = 0;
  for (std::size_t i = 1; i < count; ++i) {
    if (Better(a, table, scan, i, best)) best = i;
  }
  return MakeRecord(t, table, best, scan, tol);
}

std::vector<ApproxRecord> BestRecords(const Frame& a, int t_max, const HeightTable& table,
                                      const Tolerances& tol) {
  CheckTableCovers(table, t_max);
  const std::size_t count = table.CountUpTo(static_cast<std::int64_t>(t_max) * t_max);
  Scan scan = ScanTable(a, table, count);
  auto entries = table.entries();
  std::vector<ApproxRecord> records;
  double current = std::numeric_limits<double>::infinity();
  std::size_t i = 0;
  while (i < count) {
    std::size_t group_end = i;
    std::size_t group_best = i;
    while (group_end < count && entries[group_end].height_sq == entries[i].height_sq) {
      if (Better(a, table, scan, group_end, group_best)) group_best = group_end;
      ++group_end;
    }
    if (scan.psi[group_best] < current) {
      current = scan.psi[group_best];
      double h = std::sqrt(static_cast<double>(entries[i].height_sq));
      records.push_back(MakeRecord(h, table, group_best, scan, tol));
    }
    i = group_end;
  }
  return records;
}

std::vector<ExponentRow> ExponentStats(const Frame& a, int t_max, const HeightTable& table,
                                       const Tolerances& /*tol*/) {
  CheckTableCovers(table, t_max);
  const std::size_t count = table.CountUpTo(static_cast<std::int64_t>(t_max) * t_max);
  Scan scan = ScanTable(a, table, count);
  auto entries = table.entries();
  std::vector<ExponentRow> rows;
  double min_h = std::numeric_limits<double>::infinity();
  double min_h3 = std::numeric_limits<double>::infinity();
  std::size_t i = 0;
  for (int t = 1; t <= t_max; ++t) {
    const std::int64_t limit = static_cast<std::int64_t>(t) * t;
    for (; i < count && entries[i].height_sq <= limit; ++i) {
      double h = std::sqrt(static_cast<double>(entries[i].height_sq));
      min_h = std::min(min_h, h * scan.psi[i]);
      min_h3 = std::min(min_h3, h * h * h * scan.psi[i]);
    }
    rows.push_back(ExponentRow{t, min_h, static_cast<double>(limit) * min_h, min_h3});
  }
  return rows;
}

void WriteExponentCsv(std::span<const ExponentRow> rows, std::ostream& out) {
  out << "t,min_H_psi,t2_scaled,min_H3_psi\n";
  for (const ExponentRow& r : rows) {
    out << r.t << ',' << FormatReal(r.min_h_psi) << ',' << FormatReal(r.t2_scaled) << ','
        << FormatReal(r.min_h3_psi) << '\n';
  }
}

}  // namespace g24

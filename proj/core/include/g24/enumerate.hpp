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

#ifndef G24_ENUMERATE_HPP_
#define G24_ENUMERATE_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "g24/angles.hpp"
#include "g24/plucker.hpp"

namespace g24 {

struct EnumerationConfig {
  // Largest admissible height bound t (tables hold height_sq <= t^2).
  int cap = 40;
  // Directory for persisted tables; empty disables the disk cache.
  std::filesystem::path cache_dir;
};

// $G24_CACHE_DIR, else $XDG_CACHE_HOME/g24, else $HOME/.cache/g24.
std::filesystem::path DefaultCacheDir();

// Canonical Plucker key of a table entry. Coordinates are bounded by the
// enumeration cap, so machine integers are exact here.
struct TableEntry {
  std::array<std::int64_t, 6> p;
  std::int64_t height_sq;
  bool operator==(const TableEntry&) const = default;
};

// All rational 2-subspaces of height at most sqrt(bound_sq), sorted by
// (height_sq, lexicographic Plucker key).
class HeightTable {
 public:
  static constexpr std::string_view kVersion = "v1";

  HeightTable(std::int64_t bound_sq, std::vector<TableEntry> entries);

  std::int64_t bound_sq() const { return bound_sq_; }
  std::span<const TableEntry> entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  // Length of the prefix with height_sq <= h.
  std::size_t CountUpTo(std::int64_t height_sq) const;

  PluckerInt Plucker(std::size_t i) const;
  RationalSubspace Subspace(std::size_t i) const;
  Unit6 UnitPluckerAt(std::size_t i) const;

  bool operator==(const HeightTable&) const = default;

 private:
  std::int64_t bound_sq_;
  std::vector<TableEntry> entries_;
};

// Throws EmptyRange for t < 1 and BoundTooLarge above the cap.
HeightTable EnumerateHeights(int t, const EnumerationConfig& config = {});
HeightTable EnumerateHeightsSq(std::int64_t bound_sq, const EnumerationConfig& config = {});

// Cache file: "G24-HTABLE v1 <bound_sq>" then one line of six integers per
// entry, in table order.
void WriteTable(const HeightTable& table, std::ostream& out);
HeightTable ReadTable(std::istream& in);

std::filesystem::path CachePath(const std::filesystem::path& dir, std::int64_t bound_sq);

// Reads the cached table for bound_sq if present and valid, otherwise
// enumerates and (when a cache directory is configured) persists it.
HeightTable LoadOrEnumerate(std::int64_t bound_sq, const EnumerationConfig& config,
                            bool* cache_hit = nullptr);

// Keeps the largest table built so far; smaller bounds are served as
// prefixes of it.
class TableStore {
 public:
  explicit TableStore(EnumerationConfig config) : config_(std::move(config)) {}

  // Throws EnumerationCapExceeded when bound_sq exceeds cap^2.
  const HeightTable& AtLeast(std::int64_t bound_sq);
  const EnumerationConfig& config() const { return config_; }

 private:
  EnumerationConfig config_;
  std::optional<HeightTable> table_;
};

struct ApproxRecord {
  double t = 0;
  RationalSubspace best;
  double psi1 = 0;
  double h_psi = 0;   // H(best) * psi1
  double h3_psi = 0;  // H(best)^3 * psi1
  // Exact: the pairing of the rational representation of A with `best` is 0.
  bool incident = false;
  // Floating value below Tolerances::incidence without exact incidence.
  bool below_tolerance = false;
};

// min psi1(A, B) over table entries with H(B) <= t; ties go to the earlier
// entry in table order.
ApproxRecord PsiA(const Frame& a, int t, const HeightTable& table,
                  const Tolerances& tol = Tolerances::Default());

// Heights at which the running minimum strictly decreases, up to t_max.
std::vector<ApproxRecord> BestRecords(const Frame& a, int t_max, const HeightTable& table,
                                      const Tolerances& tol = Tolerances::Default());

struct ExponentRow {
  int t = 0;
  double min_h_psi = 0;   // min over H(B) <= t of H * psi1
  double t2_scaled = 0;   // t^2 * min_h_psi
  double min_h3_psi = 0;  // min over H(B) <= t of H^3 * psi1
};

std::vector<ExponentRow> ExponentStats(const Frame& a, int t_max, const HeightTable& table,
                                       const Tolerances& tol = Tolerances::Default());

// Columns t,min_H_psi,t2_scaled,min_H3_psi.
void WriteExponentCsv(std::span<const ExponentRow> rows, std::ostream& out);

}  // namespace g24

#endif  // G24_ENUMERATE_HPP_

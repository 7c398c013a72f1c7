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

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

#include "cli.hpp"
#include "g24/error.hpp"
#include "g24/schedule.hpp"

namespace g24::cli {

namespace {

std::vector<std::string> SplitCsv(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double ParseCell(const std::string& cell, int line, int column) {
  char* end = nullptr;
  double v = std::strtod(cell.c_str(), &end);
  if (cell.empty() || end != cell.c_str() + cell.size() || !std::isfinite(v)) {
    throw ParseError("expected a number, got '" + cell + "'", line, column);
  }
  return v;
}

struct Canvas {
  static constexpr double kWidth = 720, kHeight = 480, kLeft = 70, kRight = 20, kTop = 20,
                          kBottom = 50;
  double x0, x1, y0, y1;

  double X(double t) const {
    return kLeft + (std::log10(t) - x0) / (x1 - x0) * (kWidth - kLeft - kRight);
  }
  double Y(double log_v) const {
    return kTop + (y1 - log_v) / (y1 - y0) * (kHeight - kTop - kBottom);
  }
};

std::string Num(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

}  // namespace

PlotInput ReadApproxCsv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty CSV", 1, 1);
  std::vector<std::string> header = SplitCsv(line);
  auto t_col = std::find(header.begin(), header.end(), "t") - header.begin();
  auto psi_col = std::find(header.begin(), header.end(), "psi_A") - header.begin();
  if (t_col == static_cast<long>(header.size()) || psi_col == static_cast<long>(header.size())) {
    throw ParseError("header must name columns t and psi_A", 1, 1);
  }
  PlotInput data;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> cells = SplitCsv(line);
    if (cells.size() != header.size()) {
      throw ParseError("expected " + std::to_string(header.size()) + " cells", line_no, 1);
    }
    data.t.push_back(ParseCell(cells[t_col], line_no, static_cast<int>(t_col) + 1));
    data.psi.push_back(ParseCell(cells[psi_col], line_no, static_cast<int>(psi_col) + 1));
    if (data.t.back() <= 0) throw ParseError("t must be positive", line_no, 1);
  }
  if (data.t.empty()) throw ParseError("CSV has no data rows", line_no, 1);
  return data;
}

std::string RenderSvg(const PlotInput& data, const std::string& phi_spec, double guide) {
  const double t_min = *std::min_element(data.t.begin(), data.t.end());
  double t_max = *std::max_element(data.t.begin(), data.t.end());
  if (t_max <= t_min) t_max = t_min * 2;

  std::optional<Schedule> phi;
  if (!phi_spec.empty()) phi = Schedule::Parse(phi_spec);
  std::vector<double> sample_t;
  for (int k = 0; k <= 64; ++k) sample_t.push_back(t_min * std::pow(t_max / t_min, k / 64.0));

  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  auto include = [&](double v) {
    if (v > 0 && std::isfinite(v)) {
      lo = std::min(lo, std::log10(v));
      hi = std::max(hi, std::log10(v));
    }
  };
  for (double v : data.psi) include(v);
  for (double t : sample_t) {
    if (phi) include((*phi)(t));
    if (guide > 0) include(guide * std::pow(t, -3.0));
  }
  if (!std::isfinite(lo)) lo = hi = 0;
  // Zeros (exact incidences) sit on the floor one decade below the data.
  const double floor_v = std::floor(lo) - 1;
  Canvas c{std::log10(t_min), std::log10(t_max), floor_v, std::ceil(hi) + (hi == lo ? 1 : 0)};
  auto y_of = [&](double v) { return c.Y(v > 0 ? std::max(std::log10(v), floor_v) : floor_v); };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << Canvas::kWidth
      << "\" height=\"" << Canvas::kHeight << "\" viewBox=\"0 0 " << Canvas::kWidth << ' '
      << Canvas::kHeight << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  const double left = Canvas::kLeft;
  const double bottom = Canvas::kHeight - Canvas::kBottom;
  svg << "<line x1=\"" << left << "\" y1=\"" << bottom << "\" x2=\""
      << Canvas::kWidth - Canvas::kRight << "\" y2=\"" << bottom << "\" stroke=\"black\"/>\n"
      << "<line x1=\"" << left << "\" y1=\"" << Canvas::kTop << "\" x2=\"" << left
      << "\" y2=\"" << bottom << "\" stroke=\"black\"/>\n";
  for (int e = static_cast<int>(c.y0); e <= static_cast<int>(c.y1); ++e) {
    svg << "<text x=\"" << left - 8 << "\" y=\"" << Num(c.Y(e) + 4)
        << "\" font-size=\"11\" text-anchor=\"end\">1e" << e << "</text>\n";
  }
  for (int e = static_cast<int>(std::ceil(c.x0)); e <= static_cast<int>(std::floor(c.x1)); ++e) {
    svg << "<text x=\"" << Num(c.X(std::pow(10.0, e))) << "\" y=\"" << bottom + 18
        << "\" font-size=\"11\" text-anchor=\"middle\">1e" << e << "</text>\n";
  }
  svg << "<text x=\"" << Canvas::kWidth / 2 << "\" y=\"" << Canvas::kHeight - 10
      << "\" font-size=\"12\" text-anchor=\"middle\">t</text>\n";

  svg << "<polyline id=\"psi_A\" fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < data.t.size(); ++i) {
    double x = c.X(data.t[i]);
    double y = y_of(data.psi[i]);
    if (i > 0) svg << ' ' << Num(x) << ',' << Num(y_of(data.psi[i - 1]));
    svg << (i ? " " : "") << Num(x) << ',' << Num(y);
  }
  svg << "\"/>\n";
  if (phi) {
    svg << "<polyline id=\"phi\" fill=\"none\" stroke=\"#d62728\" stroke-dasharray=\"6 3\" "
           "points=\"";
    for (std::size_t k = 0; k < sample_t.size(); ++k) {
      svg << (k ? " " : "") << Num(c.X(sample_t[k])) << ',' << Num(y_of((*phi)(sample_t[k])));
    }
    svg << "\"/>\n";
  }
  if (guide > 0) {
    svg << "<polyline id=\"guide\" fill=\"none\" stroke=\"#7f7f7f\" stroke-dasharray=\"2 3\" "
           "points=\"";
    for (std::size_t k = 0; k < sample_t.size(); ++k) {
      double t = sample_t[k];
      svg << (k ? " " : "") << Num(c.X(t)) << ',' << Num(y_of(guide * std::pow(t, -3.0)));
    }
    svg << "\"/>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace g24::cli

// Copyright 2026 The dasim Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dasim/tools/table.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace dasim::tools {
namespace {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  return out;
}

std::string escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

void Table::add(std::vector<double> row) {
  if (row.size() != columns.size()) throw std::invalid_argument("Table::add: row width does not match columns");
  rows.push_back(std::move(row));
}

std::size_t Table::column(std::string_view name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) throw std::out_of_range("no column named " + std::string(name));
  return static_cast<std::size_t>(it - columns.begin());
}

std::vector<double> Table::values(std::string_view name) const {
  const std::size_t c = column(name);
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r[c]);
  return out;
}

void write_csv(std::ostream& out, const Table& table, std::string_view comment) {
  out << "# " << comment << '\n';
  for (std::size_t c = 0; c < table.columns.size(); ++c) out << (c ? "," : "") << table.columns[c];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << format_number(row[c]);
    out << '\n';
  }
}

void write_csv(const std::filesystem::path& file, const Table& table, std::string_view comment) {
  if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
  std::ofstream out(file, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + file.string());
  write_csv(out, table, comment);
}

Table read_csv(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot read " + file.string());
  Table t;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto cells = split(line);
    if (header) {
      t.columns = cells;
      header = false;
      continue;
    }
    std::vector<double> row;
    for (const auto& c : cells) row.push_back(std::strtod(c.c_str(), nullptr));
    t.add(std::move(row));
  }
  return t;
}

void write_svg(const std::filesystem::path& file, const Table& table, const PlotSpec& spec) {
  constexpr double kW = 640, kH = 420, kLeft = 70, kRight = 20, kTop = 40, kBottom = 50;
  static const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
  auto tx = [&](double v) { return spec.log_x ? std::log10(v) : v; };
  auto ty = [&](double v) { return spec.log_y ? std::log10(v) : v; };
  auto usable = [&](double x, double y) {
    return std::isfinite(x) && std::isfinite(y) && (!spec.log_x || x > 0) && (!spec.log_y || y > 0);
  };

  const auto xs = table.values(spec.x);
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& name : spec.y) {
    const auto ys = table.values(name);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (!usable(xs[i], ys[i])) continue;
      x0 = std::min(x0, tx(xs[i]));
      x1 = std::max(x1, tx(xs[i]));
      y0 = std::min(y0, ty(ys[i]));
      y1 = std::max(y1, ty(ys[i]));
    }
  }
  if (!(x1 > x0)) x1 = x0 + 1.0;
  if (!(y1 > y0)) y1 = y0 + 1.0;
  auto px = [&](double v) { return kLeft + (tx(v) - x0) / (x1 - x0) * (kW - kLeft - kRight); };
  auto py = [&](double v) { return kH - kBottom - (ty(v) - y0) / (y1 - y0) * (kH - kTop - kBottom); };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << kW / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" << escape(spec.title)
      << "</text>\n"
      << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << kW - kLeft - kRight << "\" height=\""
      << kH - kTop - kBottom << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double gx = x0 + (x1 - x0) * k / 4.0;
    const double gy = y0 + (y1 - y0) * k / 4.0;
    const double lx = spec.log_x ? std::pow(10.0, gx) : gx;
    const double ly = spec.log_y ? std::pow(10.0, gy) : gy;
    char bx[32], by[32];
    std::snprintf(bx, sizeof bx, "%.3g", lx);
    std::snprintf(by, sizeof by, "%.3g", ly);
    svg << "<text x=\"" << px(lx) << "\" y=\"" << kH - kBottom + 16 << "\" text-anchor=\"middle\" font-size=\"11\">"
        << bx << "</text>\n"
        << "<text x=\"" << kLeft - 6 << "\" y=\"" << py(ly) + 4 << "\" text-anchor=\"end\" font-size=\"11\">" << by
        << "</text>\n";
  }
  svg << "<text x=\"" << kW / 2 << "\" y=\"" << kH - 12 << "\" text-anchor=\"middle\" font-size=\"12\">"
      << escape(spec.x) << "</text>\n";
  for (std::size_t k = 0; k < spec.y.size(); ++k) {
    const auto ys = table.values(spec.y[k]);
    const char* color = kColors[k % std::size(kColors)];
    svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (usable(xs[i], ys[i])) svg << px(xs[i]) << ',' << py(ys[i]) << ' ';
    }
    svg << "\"/>\n"
        << "<text x=\"" << kLeft + 10 << "\" y=\"" << kTop + 16 + 14 * k << "\" font-size=\"12\" fill=\"" << color
        << "\">" << escape(spec.y[k]) << "</text>\n";
  }
  svg << "</svg>\n";

  if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
  std::ofstream out(file, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + file.string());
  out << svg.str();
}

}  // namespace dasim::tools

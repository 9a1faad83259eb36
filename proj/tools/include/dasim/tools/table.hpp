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

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace dasim::tools {

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  void add(std::vector<double> row);
  std::size_t column(std::string_view name) const;  // throws std::out_of_range
  double at(std::size_t row, std::string_view name) const { return rows.at(row).at(column(name)); }
  std::vector<double> values(std::string_view name) const;
};

/// "# <comment>" line, header row, then rows with 17 significant digits.
void write_csv(std::ostream& out, const Table& table, std::string_view comment);
void write_csv(const std::filesystem::path& file, const Table& table, std::string_view comment);

/// Reads a file written by write_csv; comment lines are skipped.
Table read_csv(const std::filesystem::path& file);

struct PlotSpec {
  std::string title;
  std::string x;
  std::vector<std::string> y;
  bool log_x = false;
  bool log_y = false;
};

/// Minimal SVG line plot of table columns.
void write_svg(const std::filesystem::path& file, const Table& table, const PlotSpec& spec);

}  // namespace dasim::tools

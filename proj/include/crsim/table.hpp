// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 the crsim authors

#ifndef CRSIM_TABLE_HPP
#define CRSIM_TABLE_HPP

#include <string>
#include <vector>

namespace crsim {

// Rectangular numeric results; categorical tags live in the column names.
struct ResultTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  void add_row(std::vector<double> row);
};

// UTF-8 CSV, header row first, '.' decimal separator, locale independent.
// Numbers carry 10 significant digits so a parse-back stays within 1e-9
// relative of the source values.
void emit_csv(const ResultTable& table, const std::string& path);
std::string to_csv(const ResultTable& table);

// Parse-back used by round-trip checks and downstream tooling.
ResultTable parse_csv(const std::string& text);

}  // namespace crsim

#endif  // CRSIM_TABLE_HPP

// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 the crsim authors

#include "crsim/table.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace crsim {

void ResultTable::add_row(std::vector<double> row) {
  if (row.size() != columns.size())
    throw std::invalid_argument("ResultTable: row width does not match the header");
  rows.push_back(std::move(row));
}

std::string to_csv(const ResultTable& table) {
  std::string out;
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c) out.push_back(',');
    out += table.columns[c];
  }
  out.push_back('\n');
  char buf[40];
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out.push_back(',');
      std::snprintf(buf, sizeof(buf), "%.10g", row[c]);
      out += buf;
    }
    out.push_back('\n');
  }
  return out;
}

void emit_csv(const ResultTable& table, const std::string& path) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("emit_csv: cannot open '" + path + "' for writing");
  const std::string text = to_csv(table);
  file.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!file) throw std::runtime_error("emit_csv: write failed for '" + path + "'");
}

ResultTable parse_csv(const std::string& text) {
  ResultTable table;
  std::istringstream stream(text);
  std::string line;
  if (!std::getline(stream, line)) throw std::runtime_error("parse_csv: empty input");
  std::istringstream header(line);
  std::string field;
  while (std::getline(header, field, ',')) table.columns.push_back(field);
  while (std::getline(stream, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::istringstream cells(line);
    while (std::getline(cells, field, ',')) row.push_back(std::stod(field));
    table.add_row(std::move(row));
  }
  return table;
}

}  // namespace crsim

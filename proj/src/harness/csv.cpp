// SPDX-License-Identifier: Apache-2.0

#include "hamflex/harness/csv.hpp"

#include <charconv>

#include "hamflex/error.hpp"

namespace hamflex::harness {

std::string format_double(double value) {
  char buffer[40];
  const auto res = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, res.ptr);
}

CsvWriter::CsvWriter(const std::string& path,
                     const std::vector<std::string>& header)
    : out_(path), columns_(header.size()), path_(path) {
  if (!out_) throw FileError("CsvWriter: cannot open '" + path + "'");
  write_row(header);
}

void CsvWriter::write_row(const std::vector<std::string>& cells) {
  if (cells.size() != columns_)
    throw ConfigError("CsvWriter: row width mismatch in '" + path_ + "'");
  for (size_t i = 0; i < cells.size(); ++i) {
    if (i) out_ << ',';
    out_ << cells[i];
  }
  out_ << '\n';
  if (!out_) throw FileError("CsvWriter: write failed for '" + path_ + "'");
}

void CsvWriter::write_row(const std::vector<double>& values) {
  std::vector<std::string> cells;
  cells.reserve(values.size());
  for (double v : values) cells.push_back(format_double(v));
  write_row(cells);
}

} // namespace hamflex::harness

// SPDX-License-Identifier: Apache-2.0

#ifndef HAMFLEX_HARNESS_CSV_HPP
#define HAMFLEX_HARNESS_CSV_HPP

#include <fstream>
#include <string>
#include <vector>

namespace hamflex::harness {

/// Shortest decimal representation that round-trips to the same
/// double, so identical configurations produce byte-identical files.
std::string format_double(double value);

class CsvWriter {
public:
  CsvWriter(const std::string& path, const std::vector<std::string>& header);

  void write_row(const std::vector<std::string>& cells);
  void write_row(const std::vector<double>& values);

private:
  std::ofstream out_;
  size_t columns_ = 0;
  std::string path_;
};

} // namespace hamflex::harness

#endif

#pragma once

// Field persistence: CSV body (t_index, x_index, re, im) plus a JSON sidecar
// carrying the grid and the normalization tag. Sidecar path is the CSV path
// with its extension replaced by .json.

#include <fstream>
#include <string>
#include <vector>

#include "xsb/grid.hpp"

namespace xsb {

std::string sidecar_path(const std::string& csv_path);

void dump_field_csv(const SpaceTimeField& f, const std::string& csv_path);
SpaceTimeField load_field_csv(const std::string& csv_path);

// Minimal RFC-4180 CSV writer: quotes fields containing separators/quotes.
class CsvWriter {
 public:
  explicit CsvWriter(const std::string& path);
  void row(const std::vector<std::string>& cells);
  static std::string num(double v);    // 17 digits, round-trip exact
  static std::string num12(double v);  // 12 significant digits for reports

 private:
  std::ofstream out_;
};

}  // namespace xsb

#include "polylab/io.hpp"

#include <cstdio>

namespace polylab {

std::string fmt_g6(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string fmt_fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

void write_csv(std::ostream& os, const CsvTable& table) {
  for (std::size_t j = 0; j < table.header.size(); ++j)
    os << table.header[j] << (j + 1 < table.header.size() ? "," : "");
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t j = 0; j < row.size(); ++j)
      os << row[j] << (j + 1 < row.size() ? "," : "");
    os << '\n';
  }
}

}  // namespace polylab

#pragma once
#include <ostream>
#include <string>
#include <vector>

namespace polylab {

// %.6g rendering used everywhere a default float is printed; fixed-precision
// variants for table-reproduction columns. Deterministic (locale-free).
std::string fmt_g6(double v);
std::string fmt_fixed(double v, int decimals);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};
// '.' decimal, ',' separator, header row, '\n' line ends.
void write_csv(std::ostream& os, const CsvTable& table);

}  // namespace polylab

#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <vector>

namespace wargame::util {

struct CsvRow {
  std::size_t line = 0;  // 1-based line where the row starts
  std::vector<std::string> cells;
};

// RFC 4180 reader: quoted cells may contain commas, quotes ("") and newlines.
std::vector<CsvRow> read_csv(std::istream& in);

std::string csv_escape(const std::string& cell);
void write_csv_row(std::ostream& out, const std::vector<std::string>& cells);

}  // namespace wargame::util

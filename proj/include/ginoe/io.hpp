#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace ginoe {

// Shortest decimal string that reads back to the same double.
std::string format_double(double x);

// Provenance block carried by every output file.
struct OutputHeader {
  std::string command;
  std::vector<std::pair<std::string, std::string>> flags;
  int precision_bits = 0;  // negative: per-size default schedule, shown as "auto"
};

std::string version_string();

// "# key: value" lines; gnuplot and most CSV readers skip them as comments.
void write_csv_header(std::ostream& os, const OutputHeader& h);
nlohmann::json header_json(const OutputHeader& h);

void write_csv_row(std::ostream& os, const std::vector<std::string>& cells);

}  // namespace ginoe

#include "ginoe/io.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

namespace ginoe {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string version_string() { return GINOE_VERSION; }

void write_csv_header(std::ostream& os, const OutputHeader& h) {
  os << "# ginoe " << version_string() << '\n';
  os << "# command: " << h.command << '\n';
  os << "# flags:";
  for (const auto& [k, v] : h.flags) os << ' ' << k << '=' << v;
  os << '\n';
  os << "# precision_bits: ";
  if (h.precision_bits < 0)
    os << "auto";  // mixed sizes, each on the default schedule
  else
    os << h.precision_bits;
  os << '\n';
}

nlohmann::json header_json(const OutputHeader& h) {
  nlohmann::json flags = nlohmann::json::object();
  for (const auto& [k, v] : h.flags) flags[k] = v;
  nlohmann::json bits = h.precision_bits < 0 ? nlohmann::json("auto") : nlohmann::json(h.precision_bits);
  return {{"version", version_string()}, {"command", h.command}, {"flags", flags}, {"precision_bits", bits}};
}

void write_csv_row(std::ostream& os, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) os << ',';
    const std::string& c = cells[i];
    if (c.find_first_of(",\"\n") == std::string::npos) {
      os << c;
      continue;
    }
    // RFC 4180 quoting
    os << '"';
    for (char ch : c) os << (ch == '"' ? "\"\"" : std::string(1, ch));
    os << '"';
  }
  os << '\n';
}

}  // namespace ginoe

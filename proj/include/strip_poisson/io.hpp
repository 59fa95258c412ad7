#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include "strip_poisson/errors.hpp"
#include "strip_poisson/grid.hpp"

namespace strip {

/// Shortest decimal representation that round-trips binary64 exactly;
/// locale-independent.
inline std::string format_double(double x) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

inline double parse_double(const std::string& s) {
  double x = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), x);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw table_format_error("bad numeric field: '" + s + "'");
  return x;
}

/// Field table: header `y1_index,y2_index,value`, row-major (vertical index
/// fastest). Values use the round-trip format, so write/read is bit exact.
inline void write_field_csv(const StripField& f, std::ostream& os) {
  os << "y1_index,y2_index,value\n";
  for (int i = 0; i < f.grid.n1; ++i)
    for (int j = 0; j < f.grid.n2; ++j)
      os << i << ',' << j << ',' << format_double(f.at(i, j)) << '\n';
}

inline void write_field_csv(const StripField& f, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw table_format_error("cannot open for writing: " + path);
  write_field_csv(f, os);
}

inline StripField read_field_csv(std::istream& is, const StripGrid& grid,
                                 DecayClass decay = DecayClass::schwartz()) {
  std::string line;
  if (!std::getline(is, line)) throw table_format_error("empty table");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "y1_index,y2_index,value")
    throw table_format_error("expected header 'y1_index,y2_index,value'");
  StripField f(grid, decay);
  std::vector<char> seen(static_cast<size_t>(grid.n1) * grid.n2, 0);
  long count = 0;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
      throw table_format_error("bad row: '" + line + "'");
    const int i = static_cast<int>(parse_double(line.substr(0, c1)));
    const int j = static_cast<int>(parse_double(line.substr(c1 + 1, c2 - c1 - 1)));
    if (i < 0 || i >= grid.n1 || j < 0 || j >= grid.n2)
      throw table_format_error("index out of range in table row: '" + line + "'");
    f.at(i, j) = parse_double(line.substr(c2 + 1));
    seen[static_cast<size_t>(i) * grid.n2 + j] = 1;
    ++count;
  }
  if (count != grid.nodes()) throw table_format_error("table/grid shape mismatch");
  for (char s : seen)
    if (!s) throw table_format_error("table/grid shape mismatch");
  return f;
}

inline StripField read_field_csv(const std::string& path, const StripGrid& grid,
                                 DecayClass decay = DecayClass::schwartz()) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw table_format_error("cannot open table: " + path);
  return read_field_csv(is, grid, decay);
}

}  // namespace strip

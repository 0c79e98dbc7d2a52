#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace piuniv::io {

// shortest round-trip decimal representation (bit-exact reproducibility)
std::string fmt(double v);

struct Csv {
  std::string header;
  std::vector<std::string> rows;
  void add_row(std::string row) { rows.push_back(std::move(row)); }
  std::string str() const;
};

void write_file(const std::string& path, const std::string& content);

// minimal polyline plot; one curve per series, log-log axes
struct SvgSeries {
  std::string label;
  std::string color;
  std::vector<double> x, y;
};
std::string svg_loglog(const std::vector<SvgSeries>& series,
                       const std::string& title, const std::string& xlabel,
                       const std::string& ylabel);

}  // namespace piuniv::io

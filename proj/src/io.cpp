#include "piuniv/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace piuniv::io {

std::string fmt(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string Csv::str() const {
  std::string out = header;
  out += '\n';
  for (const auto& r : rows) {
    out += r;
    out += '\n';
  }
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path);
  os << content;
}

std::string svg_loglog(const std::vector<SvgSeries>& series,
                       const std::string& title, const std::string& xlabel,
                       const std::string& ylabel) {
  const double W = 640, H = 480, ml = 70, mr = 20, mt = 40, mb = 50;
  double xmin = std::numeric_limits<double>::infinity(), xmax = 0;
  double ymin = xmin, ymax = 0;
  for (const auto& s : series)
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (s.x[i] > 0 && s.y[i] > 0) {
        xmin = std::min(xmin, s.x[i]);
        xmax = std::max(xmax, s.x[i]);
        ymin = std::min(ymin, s.y[i]);
        ymax = std::max(ymax, s.y[i]);
      }
    }
  if (!(xmax > 0) || !(ymax > 0)) {
    xmin = ymin = 0.1;
    xmax = ymax = 1.0;
  }
  if (xmin == xmax) xmax = xmin * 10;
  if (ymin == ymax) ymax = ymin * 10;
  auto X = [&](double x) {
    return ml + (std::log10(x) - std::log10(xmin)) /
                    (std::log10(xmax) - std::log10(xmin)) * (W - ml - mr);
  };
  auto Y = [&](double y) {
    return H - mb - (std::log10(y) - std::log10(ymin)) /
                        (std::log10(ymax) - std::log10(ymin)) * (H - mt - mb);
  };
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W
     << "\" height=\"" << H << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" "
     << "font-family=\"sans-serif\" font-size=\"16\">" << title << "</text>\n";
  os << "<text x=\"" << W / 2 << "\" y=\"" << H - 12
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
     << xlabel << "</text>\n";
  os << "<text x=\"16\" y=\"" << H / 2
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
     << "transform=\"rotate(-90 16 " << H / 2 << ")\">" << ylabel
     << "</text>\n";
  os << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << W - ml - mr
     << "\" height=\"" << H - mt - mb
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  // decade ticks
  for (int e = static_cast<int>(std::ceil(std::log10(xmin)));
       e <= static_cast<int>(std::floor(std::log10(xmax))); ++e) {
    double x = std::pow(10.0, e);
    os << "<line x1=\"" << X(x) << "\" y1=\"" << H - mb << "\" x2=\"" << X(x)
       << "\" y2=\"" << H - mb + 5 << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << X(x) << "\" y=\"" << H - mb + 18
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
          "font-size=\"11\">1e"
       << e << "</text>\n";
  }
  for (int e = static_cast<int>(std::ceil(std::log10(ymin)));
       e <= static_cast<int>(std::floor(std::log10(ymax))); ++e) {
    double y = std::pow(10.0, e);
    os << "<line x1=\"" << ml - 5 << "\" y1=\"" << Y(y) << "\" x2=\"" << ml
       << "\" y2=\"" << Y(y) << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << ml - 8 << "\" y=\"" << Y(y) + 4
       << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
          "font-size=\"11\">1e"
       << e << "</text>\n";
  }
  int li = 0;
  for (const auto& s : series) {
    os << "<polyline fill=\"none\" stroke=\"" << s.color
       << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!(s.x[i] > 0 && s.y[i] > 0)) continue;
      os << X(s.x[i]) << ',' << Y(s.y[i]) << ' ';
    }
    os << "\"/>\n";
    os << "<text x=\"" << W - mr - 8 << "\" y=\"" << mt + 18 + 16 * li
       << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\" "
       << "fill=\"" << s.color << "\">" << s.label << "</text>\n";
    ++li;
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace piuniv::io

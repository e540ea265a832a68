#include "report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace erglab::cli {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void CsvReport::add(std::uint64_t n, cplx value, std::vector<double> extra) {
  if (extra.size() != extra_columns.size()) throw std::logic_error("CsvReport: column count mismatch");
  if (!rows.empty() && n <= rows.back().n) throw std::logic_error("CsvReport: N must be strictly increasing");
  rows.push_back({n, value, std::move(extra)});
}

std::string CsvReport::csv() const {
  std::string s = "N,re,im,abs";
  for (const auto& c : extra_columns) s += "," + c;
  s += "\n";
  for (const auto& r : rows) {
    s += std::to_string(r.n);
    s += "," + format_double(r.value.real());
    s += "," + format_double(r.value.imag());
    s += "," + format_double(std::abs(r.value));
    for (const double x : r.extra) s += "," + format_double(x);
    s += "\n";
  }
  return s;
}

namespace {

std::string escape_xml(const std::string& in) {
  std::string out;
  for (const char c : in) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string tick(double log10v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", std::pow(10.0, log10v));
  return buf;
}

}  // namespace

std::string CsvReport::svg(const std::string& title) const {
  constexpr double kW = 640, kH = 400, kL = 70, kR = 20, kT = 30, kB = 50;
  std::vector<std::pair<double, double>> pts;
  for (const auto& r : rows) {
    const double a = std::abs(r.value);
    if (r.n > 0 && a > 0.0 && std::isfinite(a)) pts.emplace_back(std::log10(static_cast<double>(r.n)), std::log10(a));
  }
  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << kW / 2 << "\" y=\"18\" text-anchor=\"middle\">" << escape_xml(title) << "</text>\n";
  o << "<line x1=\"" << kL << "\" y1=\"" << kH - kB << "\" x2=\"" << kW - kR << "\" y2=\"" << kH - kB << "\" stroke=\"black\"/>\n";
  o << "<line x1=\"" << kL << "\" y1=\"" << kT << "\" x2=\"" << kL << "\" y2=\"" << kH - kB << "\" stroke=\"black\"/>\n";
  o << "<text x=\"" << kW / 2 << "\" y=\"" << kH - 10 << "\" text-anchor=\"middle\">N (log scale)</text>\n";
  o << "<text x=\"15\" y=\"" << kH / 2 << "\" transform=\"rotate(-90 15 " << kH / 2 << ")\" text-anchor=\"middle\">|value| (log scale)</text>\n";
  if (pts.empty()) {
    o << "<text x=\"" << kW / 2 << "\" y=\"" << kH / 2 << "\" text-anchor=\"middle\">no positive data</text>\n";
  } else {
    auto [xmin, xmax] = std::minmax_element(pts.begin(), pts.end(), [](auto& a, auto& b) { return a.first < b.first; });
    auto [ymin, ymax] = std::minmax_element(pts.begin(), pts.end(), [](auto& a, auto& b) { return a.second < b.second; });
    double x0 = xmin->first, x1 = xmax->first, y0 = ymin->second, y1 = ymax->second;
    if (x1 - x0 < 1e-12) { x0 -= 0.5; x1 += 0.5; }
    if (y1 - y0 < 1e-12) { y0 -= 0.5; y1 += 0.5; }
    auto px = [&](double x) { return kL + (x - x0) / (x1 - x0) * (kW - kL - kR); };
    auto py = [&](double y) { return kH - kB - (y - y0) / (y1 - y0) * (kH - kT - kB); };
    o << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"2\" points=\"";
    for (const auto& [x, y] : pts) o << px(x) << "," << py(y) << " ";
    o << "\"/>\n";
    for (const auto& [x, y] : pts) o << "<circle cx=\"" << px(x) << "\" cy=\"" << py(y) << "\" r=\"3\" fill=\"steelblue\"/>\n";
    o << "<text x=\"" << kL << "\" y=\"" << kH - kB + 16 << "\" text-anchor=\"middle\">" << tick(x0) << "</text>\n";
    o << "<text x=\"" << kW - kR << "\" y=\"" << kH - kB + 16 << "\" text-anchor=\"middle\">" << tick(x1) << "</text>\n";
    o << "<text x=\"" << kL - 5 << "\" y=\"" << kH - kB << "\" text-anchor=\"end\">" << tick(y0) << "</text>\n";
    o << "<text x=\"" << kL - 5 << "\" y=\"" << kT + 4 << "\" text-anchor=\"end\">" << tick(y1) << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

}  // namespace erglab::cli

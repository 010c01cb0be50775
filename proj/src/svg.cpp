#include "mgame/svg.hpp"

#include <cstdio>
#include <map>
#include <sstream>

namespace mgame {

namespace {

constexpr double kSize = 480.0;
constexpr double kMargin = 60.0;

const char* const kPalette[] = {"#cfe2f3", "#f4cccc", "#d9ead3", "#fff2cc", "#ead1dc", "#d0e0e3", "#fce5cd", "#d9d2e9"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

double x_of(const Rational& lambda) { return kMargin + to_double(lambda) * kSize; }
double y_of(const Rational& gamma) { return kMargin + (1.0 - to_double(gamma)) * kSize; }

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string label_of(const DoubleGame& dg, const std::vector<PureProfile>& eqs) {
  if (eqs.empty()) return "none";
  std::string out;
  for (std::size_t i = 0; i < eqs.size(); ++i) {
    if (i) out += " ";
    out += format_profile(dg.g1(), eqs[i]);
  }
  return out;
}

}  // namespace

std::string render_region_svg(const DoubleGame& dg, const RegionDiagram& diagram) {
  const double full = kSize + 2 * kMargin;
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(full) << "\" height=\"" << num(full)
      << "\" viewBox=\"0 0 " << num(full) << ' ' << num(full) << "\" font-family=\"sans-serif\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  std::map<std::string, std::size_t> colors;
  for (const auto& cell : diagram.cells) {
    const AxisCell& lx = diagram.lambda_cells[cell.lambda_cell];
    const AxisCell& gy = diagram.gamma_cells[cell.gamma_cell];
    if (lx.is_point() || gy.is_point()) continue;
    const std::string label = label_of(dg, cell.equilibria);
    auto [it, inserted] = colors.emplace(label, colors.size());
    const double x0 = x_of(lx.lo), x1 = x_of(lx.hi);
    const double y0 = y_of(gy.hi), y1 = y_of(gy.lo);
    svg << "<rect x=\"" << num(x0) << "\" y=\"" << num(y0) << "\" width=\"" << num(x1 - x0) << "\" height=\""
        << num(y1 - y0) << "\" fill=\"" << kPalette[it->second % std::size(kPalette)] << "\"/>\n";
    svg << "<text x=\"" << num((x0 + x1) / 2) << "\" y=\"" << num((y0 + y1) / 2)
        << "\" font-size=\"12\" text-anchor=\"middle\" dominant-baseline=\"middle\">" << escape(label)
        << "</text>\n";
  }

  for (const auto& b : diagram.lambda_breaks) {
    svg << "<line x1=\"" << num(x_of(b)) << "\" y1=\"" << num(kMargin) << "\" x2=\"" << num(x_of(b)) << "\" y2=\""
        << num(kMargin + kSize) << "\" stroke=\"black\" stroke-dasharray=\"4 3\"/>\n";
    svg << "<text x=\"" << num(x_of(b)) << "\" y=\"" << num(kMargin + kSize + 16)
        << "\" font-size=\"11\" text-anchor=\"middle\">" << to_string(b) << "</text>\n";
  }
  for (const auto& b : diagram.gamma_breaks) {
    svg << "<line x1=\"" << num(kMargin) << "\" y1=\"" << num(y_of(b)) << "\" x2=\"" << num(kMargin + kSize)
        << "\" y2=\"" << num(y_of(b)) << "\" stroke=\"black\" stroke-dasharray=\"4 3\"/>\n";
    svg << "<text x=\"" << num(kMargin - 6) << "\" y=\"" << num(y_of(b) + 4)
        << "\" font-size=\"11\" text-anchor=\"end\">" << to_string(b) << "</text>\n";
  }

  svg << "<rect x=\"" << num(kMargin) << "\" y=\"" << num(kMargin) << "\" width=\"" << num(kSize) << "\" height=\""
      << num(kSize) << "\" fill=\"none\" stroke=\"black\"/>\n";
  svg << "<text x=\"" << num(kMargin + kSize / 2) << "\" y=\"" << num(full - 14)
      << "\" font-size=\"13\" text-anchor=\"middle\">lambda</text>\n";
  svg << "<text x=\"16\" y=\"" << num(kMargin + kSize / 2) << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << num(kMargin + kSize / 2) << ")\">gamma</text>\n";
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace mgame

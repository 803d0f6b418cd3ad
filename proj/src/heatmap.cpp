#include "minpair/heatmap.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "minpair/error.hpp"
#include "minpair/text.hpp"

namespace minpair {

namespace {

constexpr int kCell = 56;
constexpr int kLabelWidth = 180;
constexpr int kTitleHeight = 32;

constexpr std::array<int, 3> kNeg{33, 102, 172};
constexpr std::array<int, 3> kMid{247, 247, 247};
constexpr std::array<int, 3> kPos{178, 24, 43};

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string hex(const std::array<int, 3>& c) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", c[0], c[1], c[2]);
  return buf;
}

}  // namespace

std::array<int, 3> diverging_color(double v) {
  v = std::clamp(v, -1.0, 1.0);
  const auto& end = v < 0 ? kNeg : kPos;
  const double t = std::fabs(v);
  std::array<int, 3> c{};
  for (int i = 0; i < 3; ++i) {
    c[i] = static_cast<int>(std::lround(kMid[i] + t * (end[i] - kMid[i])));
  }
  return c;
}

std::string render_heatmap(const std::vector<std::vector<double>>& cells, const std::vector<std::string>& labels,
                           const std::string& title) {
  const std::size_t n = cells.size();
  if (labels.size() != n) throw UsageError("heatmap: label count does not match the matrix size");
  for (const auto& row : cells) {
    if (row.size() != n) throw UsageError("heatmap: matrix is not square");
  }
  const int side = static_cast<int>(n) * kCell;
  const int width = kLabelWidth + side + 90;
  const int height = kTitleHeight + kLabelWidth + side + 20;
  const int x0 = kLabelWidth;
  const int y0 = kTitleHeight + kLabelWidth;

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
    << "\" viewBox=\"0 0 " << width << ' ' << height << "\" font-family=\"sans-serif\">\n";
  o << "<defs><pattern id=\"undefined\" width=\"8\" height=\"8\" patternUnits=\"userSpaceOnUse\" "
       "patternTransform=\"rotate(45)\"><rect width=\"8\" height=\"8\" fill=\"#ffffff\"/>"
       "<line x1=\"0\" y1=\"0\" x2=\"0\" y2=\"8\" stroke=\"#888888\" stroke-width=\"3\"/></pattern>\n";
  o << "<linearGradient id=\"scale\" x1=\"0\" y1=\"1\" x2=\"0\" y2=\"0\">"
    << "<stop offset=\"0\" stop-color=\"" << hex(kNeg) << "\"/>"
    << "<stop offset=\"0.5\" stop-color=\"" << hex(kMid) << "\"/>"
    << "<stop offset=\"1\" stop-color=\"" << hex(kPos) << "\"/></linearGradient></defs>\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
  if (!title.empty()) {
    o << "<text x=\"" << width / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"16\">" << escape(title)
      << "</text>\n";
  }
  for (std::size_t i = 0; i < n; ++i) {
    const int c = static_cast<int>(i) * kCell + kCell / 2;
    o << "<text x=\"" << x0 - 6 << "\" y=\"" << y0 + c + 4 << "\" text-anchor=\"end\" font-size=\"12\">"
      << escape(labels[i]) << "</text>\n";
    o << "<text transform=\"translate(" << x0 + c + 4 << ',' << y0 - 6
      << ") rotate(-60)\" text-anchor=\"start\" font-size=\"12\">" << escape(labels[i]) << "</text>\n";
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double v = cells[i][j];
      const int x = x0 + static_cast<int>(j) * kCell;
      const int y = y0 + static_cast<int>(i) * kCell;
      const bool undefined = !std::isfinite(v);
      const std::string fill = undefined ? "url(#undefined)" : hex(diverging_color(v));
      o << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << kCell << "\" height=\"" << kCell << "\" fill=\""
        << fill << "\" stroke=\"#ffffff\" stroke-width=\"1\"/>\n";
      const std::string text = undefined ? "NA" : format_fixed(v, 2);
      const char* ink = !undefined && std::fabs(v) > 0.6 ? "#ffffff" : "#000000";
      o << "<text x=\"" << x + kCell / 2 << "\" y=\"" << y + kCell / 2 + 4
        << "\" text-anchor=\"middle\" font-size=\"12\" fill=\"" << ink << "\">" << text << "</text>\n";
    }
  }
  const int lx = x0 + side + 20;
  o << "<rect x=\"" << lx << "\" y=\"" << y0 << "\" width=\"16\" height=\"" << std::max(side, kCell)
    << "\" fill=\"url(#scale)\" stroke=\"#000000\" stroke-width=\"0.5\"/>\n";
  o << "<text x=\"" << lx + 22 << "\" y=\"" << y0 + 10 << "\" font-size=\"11\">1</text>\n";
  o << "<text x=\"" << lx + 22 << "\" y=\"" << y0 + std::max(side, kCell) / 2 + 4 << "\" font-size=\"11\">0</text>\n";
  o << "<text x=\"" << lx + 22 << "\" y=\"" << y0 + std::max(side, kCell) << "\" font-size=\"11\">-1</text>\n";
  o << "</svg>\n";
  return o.str();
}

}  // namespace minpair

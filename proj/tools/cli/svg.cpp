#include "cli/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace brlab::cli {

namespace {

constexpr double kW = 640, kH = 440, kLeft = 80, kRight = 24, kTop = 40, kBottom = 60;

std::string esc(const std::string& s) {
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

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

struct Axis {
  double lo, hi;  // log10 range
  double px_lo, px_hi;
  double map(double v) const { return px_lo + (std::log10(v) - lo) / (hi - lo) * (px_hi - px_lo); }
  // ticks at 1, 2, 5 times powers of ten when the range is short, decades otherwise
  std::vector<double> ticks() const {
    std::vector<double> t;
    const bool fine = hi - lo < 2;
    for (int e = static_cast<int>(std::floor(lo)); e <= static_cast<int>(std::ceil(hi)); ++e)
      for (double m : fine ? std::vector<double>{1, 2, 5} : std::vector<double>{1}) {
        const double v = m * std::pow(10.0, e);
        if (std::log10(v) >= lo - 1e-12 && std::log10(v) <= hi + 1e-12) t.push_back(v);
      }
    return t;
  }
};

Axis make_axis(const std::vector<double>& v, double px_lo, double px_hi) {
  double lo = INFINITY, hi = -INFINITY;
  for (double x : v)
    if (x > 0 && std::isfinite(x)) {
      lo = std::min(lo, std::log10(x));
      hi = std::max(hi, std::log10(x));
    }
  if (!std::isfinite(lo)) lo = 0, hi = 1;
  const double pad = std::max(0.05 * (hi - lo), 0.05);
  return {lo - pad, hi + pad, px_lo, px_hi};
}

}  // namespace

std::string plot_svg(const Plot& p) {
  std::ostringstream os;
  const Axis ax = make_axis(p.x, kLeft, kW - kRight);
  const Axis ay = make_axis(p.y, kH - kBottom, kTop);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
     << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << kW / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" << esc(p.title) << "</text>\n";
  os << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << kW - kLeft - kRight << "\" height=\""
     << kH - kTop - kBottom << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (double t : ax.ticks()) {
    const double x = ax.map(t);
    os << "<line x1=\"" << x << "\" y1=\"" << kH - kBottom << "\" x2=\"" << x << "\" y2=\"" << kTop
       << "\" stroke=\"#ddd\"/>\n";
    os << "<text x=\"" << x << "\" y=\"" << kH - kBottom + 16 << "\" text-anchor=\"middle\">" << fmt("%.3g", t)
       << "</text>\n";
  }
  for (double t : ay.ticks()) {
    const double y = ay.map(t);
    os << "<line x1=\"" << kLeft << "\" y1=\"" << y << "\" x2=\"" << kW - kRight << "\" y2=\"" << y
       << "\" stroke=\"#ddd\"/>\n";
    os << "<text x=\"" << kLeft - 6 << "\" y=\"" << y + 4 << "\" text-anchor=\"end\">" << fmt("%.3g", t)
       << "</text>\n";
  }
  os << "<text x=\"" << (kLeft + kW - kRight) / 2 << "\" y=\"" << kH - 18 << "\" text-anchor=\"middle\">"
     << esc(p.x_label) << "</text>\n";
  os << "<text transform=\"translate(18," << (kTop + kH - kBottom) / 2
     << ") rotate(-90)\" text-anchor=\"middle\">" << esc(p.y_label) << "</text>\n";
  if (!p.fit.degenerate && !p.x.empty()) {
    const auto [mn, mx] = std::minmax_element(p.x.begin(), p.x.end());
    auto line_y = [&](double x) { return std::exp(p.fit.intercept + p.fit.slope * std::log(x)); };
    os << "<line x1=\"" << ax.map(*mn) << "\" y1=\"" << ay.map(line_y(*mn)) << "\" x2=\"" << ax.map(*mx)
       << "\" y2=\"" << ay.map(line_y(*mx)) << "\" stroke=\"#c33\" stroke-width=\"1.5\"/>\n";
  }
  for (std::size_t i = 0; i < p.x.size(); ++i)
    if (p.x[i] > 0 && p.y[i] > 0)
      os << "<circle cx=\"" << ax.map(p.x[i]) << "\" cy=\"" << ay.map(p.y[i])
         << "\" r=\"3.5\" fill=\"#248\"/>\n";
  os << "<text x=\"" << kLeft + 10 << "\" y=\"" << kTop + 18 << "\" fill=\"#c33\">slope "
     << fmt("%.4f", p.fit.slope) << " &#177; " << fmt("%.2g", p.fit.half_width) << ", expected "
     << fmt("%.4f", p.expected_slope) << "</text>\n";
  os << "</svg>\n";
  return os.str();
}

std::string summary_svg(const std::string& title, const std::vector<Row>& rows) {
  std::ostringstream os;
  const double line = 20, h = 60 + line * static_cast<double>(rows.size());
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"900\" height=\"" << h
     << "\" font-family=\"monospace\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"12\" y=\"24\" font-size=\"15\" font-family=\"sans-serif\">" << esc(title) << "</text>\n";
  os << "<text x=\"12\" y=\"46\" fill=\"#555\">result criterion check / measured / expected / tolerance</text>\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    const double y = 66 + line * static_cast<double>(i);
    os << "<text x=\"12\" y=\"" << y << "\" fill=\"" << (r.pass ? "#282" : "#c22") << "\">" << (r.pass ? "PASS" : "FAIL")
       << "   " << esc(r.criterion.empty() ? "-" : r.criterion) << "  " << esc(r.check) << " / "
       << fmt("%.6g", r.measured) << " / " << fmt("%.6g", r.expected) << " / " << fmt("%.3g", r.tolerance)
       << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace brlab::cli

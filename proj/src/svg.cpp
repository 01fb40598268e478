#include "fnls/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace fnls {
namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b"};

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  bool ok() const { return lo <= hi; }
  void pad() {
    if (lo == hi) {
      const double d = (lo == 0.0) ? 1.0 : std::abs(lo) * 0.1;
      lo -= d;
      hi += d;
    }
  }
};

}  // namespace

std::string svg_line_chart(const std::string& title, const std::string& xlabel,
                           const std::string& ylabel,
                           const std::vector<Series>& series, int width,
                           int height, bool logy) {
  const int ml = 64, mr = 16, mt = 28, mb = 44;
  const double pw = width - ml - mr, ph = height - mt - mb;
  if (pw <= 0 || ph <= 0) throw std::invalid_argument("svg_line_chart: canvas too small");

  Range rx, ry;
  for (const Series& sr : series) {
    if (sr.x.size() != sr.y.size()) {
      throw std::invalid_argument("svg_line_chart: series x/y size mismatch");
    }
    for (std::size_t i = 0; i < sr.x.size(); ++i) {
      double y = sr.y[i];
      if (logy) {
        if (!(y > 0.0)) continue;
        y = std::log10(y);
      }
      rx.add(sr.x[i]);
      ry.add(y);
    }
  }
  if (!rx.ok() || !ry.ok()) {
    throw std::invalid_argument("svg_line_chart: no drawable points");
  }
  rx.pad();
  ry.pad();

  auto X = [&](double v) { return ml + (v - rx.lo) / (rx.hi - rx.lo) * pw; };
  auto Y = [&](double v) { return mt + ph - (v - ry.lo) / (ry.hi - ry.lo) * ph; };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
     << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " "
     << height << "\">\n";
  os << "<rect width=\"" << width << "\" height=\"" << height
     << "\" fill=\"white\"/>\n";
  os << "<text x=\"" << width / 2 << "\" y=\"18\" text-anchor=\"middle\" "
        "font-family=\"sans-serif\" font-size=\"14\">"
     << escape(title) << "</text>\n";

  // Frame and ticks.
  os << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << fmt("%.1f", pw)
     << "\" height=\"" << fmt("%.1f", ph)
     << "\" fill=\"none\" stroke=\"#444\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    const double fxv = rx.lo + (rx.hi - rx.lo) * t / 4.0;
    const double fyv = ry.lo + (ry.hi - ry.lo) * t / 4.0;
    const double xx = X(fxv), yy = Y(fyv);
    os << "<line x1=\"" << fmt("%.1f", xx) << "\" y1=\"" << mt + ph
       << "\" x2=\"" << fmt("%.1f", xx) << "\" y2=\"" << fmt("%.1f", mt + ph + 5)
       << "\" stroke=\"#444\"/>\n";
    os << "<text x=\"" << fmt("%.1f", xx) << "\" y=\"" << fmt("%.1f", mt + ph + 18)
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
       << fmt("%.4g", fxv) << "</text>\n";
    os << "<line x1=\"" << fmt("%.1f", ml - 5.0) << "\" y1=\"" << fmt("%.1f", yy)
       << "\" x2=\"" << ml << "\" y2=\"" << fmt("%.1f", yy)
       << "\" stroke=\"#444\"/>\n";
    const std::string ylab =
        logy ? ("1e" + fmt("%.3g", fyv)) : fmt("%.4g", fyv);
    os << "<text x=\"" << fmt("%.1f", ml - 8.0) << "\" y=\"" << fmt("%.1f", yy + 4)
       << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
       << ylab << "</text>\n";
  }
  os << "<text x=\"" << ml + pw / 2 << "\" y=\"" << height - 8
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
     << escape(xlabel) << "</text>\n";
  os << "<text x=\"14\" y=\"" << mt + ph / 2
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
        "transform=\"rotate(-90 14 "
     << mt + ph / 2 << ")\">" << escape(ylabel) << "</text>\n";

  int ci = 0;
  for (const Series& sr : series) {
    const char* color = kPalette[ci % 6];
    std::ostringstream pts;
    bool open = false;
    for (std::size_t i = 0; i < sr.x.size(); ++i) {
      double y = sr.y[i];
      if (logy) {
        if (!(y > 0.0)) continue;
        y = std::log10(y);
      }
      if (!std::isfinite(sr.x[i]) || !std::isfinite(y)) continue;
      pts << (open ? " " : "") << fmt("%.2f", X(sr.x[i])) << ","
          << fmt("%.2f", Y(y));
      open = true;
    }
    if (open) {
      os << "<polyline fill=\"none\" stroke=\"" << color
         << "\" stroke-width=\"1.5\" points=\"" << pts.str() << "\"/>\n";
      os << "<text x=\"" << ml + 8 << "\" y=\"" << mt + 16 + 16 * ci
         << "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"" << color
         << "\">" << escape(sr.label) << "</text>\n";
    }
    ++ci;
  }
  os << "</svg>\n";
  return os.str();
}

std::string svg_heat_strip(const std::string& title,
                           const std::vector<double>& values, int nx, int ny,
                           int width, int height) {
  if (nx < 1 || ny < 1 || values.size() != static_cast<std::size_t>(nx) * ny) {
    throw std::invalid_argument("svg_heat_strip: values size must be nx*ny");
  }
  Range r;
  for (double v : values) r.add(v);
  if (!r.ok()) throw std::invalid_argument("svg_heat_strip: no finite values");
  r.pad();

  const int ml = 16, mr = 16, mt = 28, mb = 34;
  const double pw = width - ml - mr, ph = height - mt - mb;
  const double cw = pw / nx, ch = ph / ny;

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
     << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " "
     << height << "\">\n";
  os << "<rect width=\"" << width << "\" height=\"" << height
     << "\" fill=\"white\"/>\n";
  os << "<text x=\"" << width / 2 << "\" y=\"18\" text-anchor=\"middle\" "
        "font-family=\"sans-serif\" font-size=\"14\">"
     << escape(title) << "</text>\n";
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const double v = values[static_cast<std::size_t>(j) * nx + i];
      double t = (v - r.lo) / (r.hi - r.lo);
      t = std::clamp(t, 0.0, 1.0);
      // Cold-to-hot ramp: deep blue -> white -> deep red.
      int rr, gg, bb;
      if (t < 0.5) {
        const double u = t / 0.5;
        rr = static_cast<int>(33 + (255 - 33) * u);
        gg = static_cast<int>(102 + (255 - 102) * u);
        bb = static_cast<int>(172 + (255 - 172) * u);
      } else {
        const double u = (t - 0.5) / 0.5;
        rr = static_cast<int>(255 - (255 - 178) * u);
        gg = static_cast<int>(255 - (255 - 24) * u);
        bb = static_cast<int>(255 - (255 - 43) * u);
      }
      char color[8];
      std::snprintf(color, sizeof color, "#%02x%02x%02x", rr, gg, bb);
      os << "<rect x=\"" << fmt("%.2f", ml + i * cw) << "\" y=\""
         << fmt("%.2f", mt + j * ch) << "\" width=\"" << fmt("%.2f", cw + 0.5)
         << "\" height=\"" << fmt("%.2f", ch + 0.5) << "\" fill=\"" << color
         << "\"/>\n";
    }
  }
  os << "<text x=\"" << ml << "\" y=\"" << height - 10
     << "\" font-family=\"sans-serif\" font-size=\"11\">min "
     << fmt("%.6g", r.lo) << "</text>\n";
  os << "<text x=\"" << width - mr << "\" y=\"" << height - 10
     << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">max "
     << fmt("%.6g", r.hi) << "</text>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace fnls

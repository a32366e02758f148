#include "liminf/plot.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace liminf {

Task required_task(PlotKind kind) {
  switch (kind) {
    case PlotKind::count_vs_scale: return Task::enumerate;
    case PlotKind::bracket_vs_J: return Task::dimension;
    case PlotKind::cover_overlay: return Task::multiplicative;
  }
  return Task::analyze;
}

namespace {

constexpr double kW = 640, kH = 440, kLeft = 70, kRight = 20, kTop = 40, kBottom = 60;

double log10_of(const Rational& x) {
  long en = 0;
  long ed = 0;
  const double n = mpz_get_d_2exp(&en, x.get_num().get_mpz_t());
  const double d = mpz_get_d_2exp(&ed, x.get_den().get_mpz_t());
  return std::log10(n / d) + static_cast<double>(en - ed) * std::log10(2.0);
}

std::string num(double v) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(2) << v;
  return out.str();
}

std::string label(double v) {
  std::ostringstream out;
  out << std::setprecision(4) << v;
  return out.str();
}

struct Frame {
  double x0, x1, y0, y1;
  double px(double x) const { return kLeft + (x - x0) / (x1 - x0) * (kW - kLeft - kRight); }
  double py(double y) const { return kH - kBottom - (y - y0) / (y1 - y0) * (kH - kTop - kBottom); }
};

Frame frame_for(std::vector<double> xs, std::vector<double> ys) {
  auto span = [](std::vector<double>& v, double& lo, double& hi) {
    lo = *std::min_element(v.begin(), v.end());
    hi = *std::max_element(v.begin(), v.end());
    const double pad = hi > lo ? 0.05 * (hi - lo) : 0.5;
    lo -= pad;
    hi += pad;
  };
  Frame f{};
  span(xs, f.x0, f.x1);
  span(ys, f.y0, f.y1);
  return f;
}

class Svg {
 public:
  Svg(double w, double h, const std::string& title) {
    out_ << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(w) << "\" height=\"" << num(h)
         << "\" viewBox=\"0 0 " << num(w) << ' ' << num(h) << "\">\n"
         << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
         << "<text x=\"" << num(w / 2) << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         << "font-size=\"15\">" << title << "</text>\n";
  }
  std::ostringstream& raw() { return out_; }

  void line(double x1, double y1, double x2, double y2, const std::string& style) {
    out_ << "<line x1=\"" << num(x1) << "\" y1=\"" << num(y1) << "\" x2=\"" << num(x2) << "\" y2=\""
         << num(y2) << "\" " << style << "/>\n";
  }
  void text(double x, double y, const std::string& s, const std::string& anchor = "middle") {
    out_ << "<text x=\"" << num(x) << "\" y=\"" << num(y) << "\" text-anchor=\"" << anchor
         << "\" font-family=\"sans-serif\" font-size=\"11\">" << s << "</text>\n";
  }
  void polyline(const std::vector<std::pair<double, double>>& pts, const std::string& colour,
                const std::string& extra = "") {
    out_ << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"2\" " << extra << " points=\"";
    for (const auto& [x, y] : pts) out_ << num(x) << ',' << num(y) << ' ';
    out_ << "\"/>\n";
    for (const auto& [x, y] : pts) {
      out_ << "<circle cx=\"" << num(x) << "\" cy=\"" << num(y) << "\" r=\"3\" fill=\"" << colour << "\"/>\n";
    }
  }
  void axes(const Frame& f, const std::string& xlab, const std::string& ylab) {
    const std::string ax = "stroke=\"black\" stroke-width=\"1\"";
    line(kLeft, kH - kBottom, kW - kRight, kH - kBottom, ax);
    line(kLeft, kTop, kLeft, kH - kBottom, ax);
    for (int i = 0; i <= 5; ++i) {
      const double x = f.x0 + (f.x1 - f.x0) * i / 5;
      const double y = f.y0 + (f.y1 - f.y0) * i / 5;
      line(f.px(x), kH - kBottom, f.px(x), kH - kBottom + 5, ax);
      text(f.px(x), kH - kBottom + 18, label(x));
      line(kLeft - 5, f.py(y), kLeft, f.py(y), ax);
      text(kLeft - 8, f.py(y) + 4, label(y), "end");
    }
    text((kLeft + kW - kRight) / 2, kH - 16, xlab);
    out_ << "<text x=\"16\" y=\"" << num((kTop + kH - kBottom) / 2) << "\" text-anchor=\"middle\" "
         << "font-family=\"sans-serif\" font-size=\"11\" transform=\"rotate(-90 16 "
         << num((kTop + kH - kBottom) / 2) << ")\">" << ylab << "</text>\n";
  }
  void legend(const std::vector<std::pair<std::string, std::string>>& entries) {
    double y = kTop + 10;
    for (const auto& [name, colour] : entries) {
      line(kW - 190, y, kW - 165, y, "stroke=\"" + colour + "\" stroke-width=\"2\"");
      text(kW - 160, y + 4, name, "start");
      y += 16;
    }
  }
  std::string finish() {
    out_ << "</svg>\n";
    return out_.str();
  }

 private:
  std::ostringstream out_;
};

std::string count_vs_scale(const Report& r) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& l : r.enumerate->levels) {
    if (l.max_len <= 0 || l.count_max <= 0) continue;
    pts.emplace_back(-log10_of(l.max_len), log10_of(Rational(l.count_max)));
  }
  Svg svg(kW, kH, "component count vs scale");
  if (pts.empty()) return svg.finish();
  std::vector<double> xs, ys;
  for (const auto& [x, y] : pts) {
    xs.push_back(x);
    ys.push_back(y);
  }
  const Frame f = frame_for(xs, ys);
  svg.axes(f, "log10(1 / component length)", "log10(count)");
  for (auto& [x, y] : pts) {
    x = f.px(x);
    y = f.py(y);
  }
  svg.polyline(pts, "#1f77b4");
  return svg.finish();
}

std::string bracket_vs_J(const Report& r) {
  std::vector<std::pair<double, double>> up, lo;
  std::vector<double> xs, ys;
  for (const auto& row : r.dimension->rows) {
    const double J = static_cast<double>(row.J);
    up.emplace_back(J, row.upper.hi().to_double());
    if (row.lower) lo.emplace_back(J, row.lower->lo().to_double());
  }
  for (const auto* series : {&up, &lo}) {
    for (const auto& [x, y] : *series) {
      xs.push_back(x);
      ys.push_back(y);
    }
  }
  std::optional<double> theory;
  if (r.dimension->theoretical) {
    theory = r.dimension->theoretical->approx();
    ys.push_back(*theory);
  }
  Svg svg(kW, kH, "dimension bracket vs depth");
  const Frame f = frame_for(xs, ys);
  svg.axes(f, "depth J", "dimension estimate");
  if (theory) {
    svg.line(f.px(f.x0), f.py(*theory), f.px(f.x1), f.py(*theory),
             "stroke=\"#555\" stroke-width=\"1\" stroke-dasharray=\"6 4\"");
  }
  auto map = [&](std::vector<std::pair<double, double>> pts) {
    for (auto& [x, y] : pts) {
      x = f.px(x);
      y = f.py(y);
    }
    return pts;
  };
  svg.polyline(map(up), "#d62728");
  if (!lo.empty()) svg.polyline(map(lo), "#2ca02c");
  std::vector<std::pair<std::string, std::string>> legend{{"cover upper estimate", "#d62728"},
                                                          {"Cantor lower estimate", "#2ca02c"}};
  if (theory) legend.push_back({"formula at alpha_J", "#555"});
  svg.legend(legend);
  return svg.finish();
}

std::string cover_overlay(const Report& r) {
  const auto& m = *r.multiplicative;
  constexpr double side = 400, off = 40;
  Svg svg(side + 2 * off, side + 2 * off, "hyperbolic cover, gamma = 2^-" + std::to_string(m.K));
  auto& out = svg.raw();
  out << "<defs><clipPath id=\"unit\"><rect x=\"" << num(off) << "\" y=\"" << num(off) << "\" width=\""
      << num(side) << "\" height=\"" << num(side) << "\"/></clipPath></defs>\n";
  out << "<rect x=\"" << num(off) << "\" y=\"" << num(off) << "\" width=\"" << num(side) << "\" height=\""
      << num(side) << "\" fill=\"none\" stroke=\"black\"/>\n";
  const double unit = std::ldexp(1.0, -static_cast<int>(m.K));
  out << "<g clip-path=\"url(#unit)\">\n";
  for (const auto& sq : m.squares) {
    const double x = static_cast<double>(sq.x) * unit;
    const double y = static_cast<double>(sq.y) * unit;
    const double w = static_cast<double>(sq.side) * unit;
    out << "<rect x=\"" << num(off + x * side) << "\" y=\"" << num(off + (1 - y - w) * side) << "\" width=\""
        << num(w * side) << "\" height=\"" << num(w * side)
        << "\" fill=\"#1f77b4\" fill-opacity=\"0.15\" stroke=\"#1f77b4\" stroke-width=\"0.5\"/>\n";
  }
  out << "</g>\n";
  std::vector<std::pair<double, double>> curve;
  for (int i = 0; i <= 200; ++i) {
    const double x = unit + (1 - unit) * std::pow(static_cast<double>(i) / 200, 3);
    const double y = std::min(1.0, unit / x);
    curve.emplace_back(off + x * side, off + (1 - y) * side);
  }
  out << "<polyline fill=\"none\" stroke=\"#d62728\" stroke-width=\"1.5\" points=\"";
  for (const auto& [x, y] : curve) out << num(x) << ',' << num(y) << ' ';
  out << "\"/>\n";
  return svg.finish();
}

}  // namespace

std::string render_svg(const Report& report, PlotKind kind) {
  switch (kind) {
    case PlotKind::count_vs_scale:
      if (!report.enumerate) throw MissingSeries(kind, Task::enumerate);
      return count_vs_scale(report);
    case PlotKind::bracket_vs_J:
      if (!report.dimension || report.dimension->rows.empty()) throw MissingSeries(kind, Task::dimension);
      return bracket_vs_J(report);
    case PlotKind::cover_overlay:
      if (!report.multiplicative) throw MissingSeries(kind, Task::multiplicative);
      return cover_overlay(report);
  }
  throw PreconditionError("unknown plot kind");
}

void write_plot(const Report& report, PlotKind kind, const std::string& path) {
  const std::string svg = render_svg(report, kind);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << svg;
}

}  // namespace liminf

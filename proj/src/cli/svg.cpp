#include "velavg/cli/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace velavg {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 420.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 160.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

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

std::string num(double v) {
  std::ostringstream os;
  os << std::setprecision(6) << v;
  return os.str();
}

struct Axis {
  double lo = 0.0;
  double hi = 1.0;
  bool log = false;

  double fwd(double v) const { return log ? std::log10(v) : v; }
  double inv(double v) const { return log ? std::pow(10.0, v) : v; }
};

Axis make_axis(const std::vector<double>& values, bool log) {
  Axis a;
  a.log = log;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (double v : values) {
    if (!std::isfinite(v)) continue;
    if (log && !(v > 0.0)) throw std::invalid_argument("svg: log axis needs positive values");
    lo = std::min(lo, a.fwd(v));
    hi = std::max(hi, a.fwd(v));
  }
  if (!(hi >= lo)) {
    lo = 0.0;
    hi = 1.0;
  }
  if (hi - lo < 1e-12) {
    lo -= 0.5;
    hi += 0.5;
  }
  const double pad = 0.05 * (hi - lo);
  a.lo = lo - pad;
  a.hi = hi + pad;
  return a;
}

void header(std::ostringstream& os, const std::string& title) {
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kWidth
     << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\""
     << " font-size=\"15\">" << escape(title) << "</text>\n";
}

void frame(std::ostringstream& os, const Axis& ax, const Axis& ay, const std::string& xl,
           const std::string& yl) {
  const double x0 = kLeft;
  const double x1 = kWidth - kRight;
  const double y0 = kHeight - kBottom;
  const double y1 = kTop;
  os << "<g stroke=\"black\" fill=\"none\">\n"
     << "<rect x=\"" << x0 << "\" y=\"" << y1 << "\" width=\"" << x1 - x0 << "\" height=\""
     << y0 - y1 << "\"/>\n</g>\n";
  os << "<g font-family=\"sans-serif\" font-size=\"11\">\n";
  for (int i = 0; i <= 4; ++i) {
    const double fx = ax.lo + (ax.hi - ax.lo) * i / 4.0;
    const double px = x0 + (x1 - x0) * i / 4.0;
    os << "<line x1=\"" << num(px) << "\" y1=\"" << y0 << "\" x2=\"" << num(px) << "\" y2=\""
       << y0 + 5 << "\" stroke=\"black\"/>\n"
       << "<text x=\"" << num(px) << "\" y=\"" << y0 + 18 << "\" text-anchor=\"middle\">"
       << num(ax.inv(fx)) << "</text>\n";
    const double fy = ay.lo + (ay.hi - ay.lo) * i / 4.0;
    const double py = y0 - (y0 - y1) * i / 4.0;
    os << "<line x1=\"" << x0 - 5 << "\" y1=\"" << num(py) << "\" x2=\"" << x0 << "\" y2=\""
       << num(py) << "\" stroke=\"black\"/>\n"
       << "<text x=\"" << x0 - 8 << "\" y=\"" << num(py + 4) << "\" text-anchor=\"end\">"
       << num(ay.inv(fy)) << "</text>\n";
  }
  os << "<text x=\"" << (x0 + x1) / 2 << "\" y=\"" << kHeight - 18
     << "\" text-anchor=\"middle\">" << escape(xl) << (ax.log ? " (log)" : "") << "</text>\n"
     << "<text transform=\"translate(18," << (y0 + y1) / 2 << ") rotate(-90)\""
     << " text-anchor=\"middle\">" << escape(yl) << (ay.log ? " (log)" : "") << "</text>\n"
     << "</g>\n";
}

void write_file(const std::string& text, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("svg: cannot open '" + path + "' for writing");
  out << text;
  out.flush();
  if (!out) throw std::runtime_error("svg: write to '" + path + "' failed");
}

}  // namespace

std::string render_svg(const Plot& plot) {
  if (plot.series.empty()) throw std::invalid_argument("svg: need at least one series");
  std::vector<double> xs;
  std::vector<double> ys;
  for (const Series& s : plot.series) {
    if (s.x.empty() || s.x.size() != s.y.size()) {
      throw std::invalid_argument("svg: series '" + s.label + "' is empty or mismatched");
    }
    xs.insert(xs.end(), s.x.begin(), s.x.end());
    ys.insert(ys.end(), s.y.begin(), s.y.end());
  }
  const Axis ax = make_axis(xs, plot.log_x);
  // Reference lines widen the y range only within the data's x range.
  std::vector<double> ys_all = ys;
  for (const ReferenceLine& l : plot.lines) {
    for (double fx : {ax.lo, ax.hi}) {
      const double v = l.fn(ax.inv(fx));
      if (std::isfinite(v) && (!plot.log_y || v > 0.0)) ys_all.push_back(v);
    }
  }
  const Axis ay = make_axis(ys_all, plot.log_y);

  const double x0 = kLeft;
  const double x1 = kWidth - kRight;
  const double y0 = kHeight - kBottom;
  const double y1 = kTop;
  auto px = [&](double v) { return x0 + (x1 - x0) * (ax.fwd(v) - ax.lo) / (ax.hi - ax.lo); };
  auto py = [&](double v) { return y0 - (y0 - y1) * (ay.fwd(v) - ay.lo) / (ay.hi - ay.lo); };

  std::ostringstream os;
  header(os, plot.title);
  frame(os, ax, ay, plot.x_label, plot.y_label);
  os << "<defs><clipPath id=\"plot-area\"><rect x=\"" << x0 << "\" y=\"" << y1 << "\" width=\""
     << x1 - x0 << "\" height=\"" << y0 - y1 << "\"/></clipPath></defs>\n";
  os << "<g clip-path=\"url(#plot-area)\">\n";
  int legend = 0;
  std::ostringstream keys;
  auto key = [&](const std::string& label, const char* color, bool dashed) {
    const double ly = kTop + 14.0 + 18.0 * legend++;
    keys << "<line x1=\"" << x1 + 10 << "\" y1=\"" << ly << "\" x2=\"" << x1 + 30 << "\" y2=\""
         << ly << "\" stroke=\"" << color << "\" stroke-width=\"2\""
         << (dashed ? " stroke-dasharray=\"5,3\"" : "") << "/>\n"
         << "<text x=\"" << x1 + 35 << "\" y=\"" << ly + 4 << "\">" << escape(label)
         << "</text>\n";
  };
  for (std::size_t i = 0; i < plot.lines.size(); ++i) {
    const ReferenceLine& l = plot.lines[i];
    const char* color = "#555555";
    os << "<polyline fill=\"none\" stroke=\"" << color
       << "\" stroke-width=\"1.5\" stroke-dasharray=\"5,3\" points=\"";
    for (int k = 0; k <= 64; ++k) {
      const double fx = ax.lo + (ax.hi - ax.lo) * k / 64.0;
      const double v = l.fn(ax.inv(fx));
      if (!std::isfinite(v) || (plot.log_y && !(v > 0.0))) continue;
      os << num(px(ax.inv(fx))) << ',' << num(py(v)) << ' ';
    }
    os << "\"/>\n";
    key(l.label, color, true);
  }
  for (std::size_t i = 0; i < plot.series.size(); ++i) {
    const Series& s = plot.series[i];
    const char* color = kPalette[i % std::size(kPalette)];
    if (s.connect) {
      os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
      for (std::size_t k = 0; k < s.x.size(); ++k) {
        os << num(px(s.x[k])) << ',' << num(py(s.y[k])) << ' ';
      }
      os << "\"/>\n";
    }
    os << "<g fill=\"" << color << "\">\n";
    for (std::size_t k = 0; k < s.x.size(); ++k) {
      os << "<circle cx=\"" << num(px(s.x[k])) << "\" cy=\"" << num(py(s.y[k]))
         << "\" r=\"2.5\"/>\n";
    }
    os << "</g>\n";
    key(s.label, color, false);
  }
  os << "</g>\n<g font-family=\"sans-serif\" font-size=\"11\">\n" << keys.str() << "</g>\n";
  os << "</svg>\n";
  return os.str();
}

std::string render_svg(const BarChart& chart) {
  if (chart.values.empty() || chart.values.size() != chart.labels.size()) {
    throw std::invalid_argument("svg: bar chart needs matching nonempty labels and values");
  }
  const Axis ay = [&] {
    std::vector<double> v = chart.values;
    v.push_back(0.0);
    return make_axis(v, false);
  }();
  const double x0 = kLeft;
  const double x1 = kWidth - kRight;
  const double y0 = kHeight - kBottom;
  const double y1 = kTop;
  auto py = [&](double v) { return y0 - (y0 - y1) * (v - ay.lo) / (ay.hi - ay.lo); };
  Axis ax;
  ax.lo = 0.0;
  ax.hi = static_cast<double>(chart.values.size());

  std::ostringstream os;
  header(os, chart.title);
  frame(os, ax, ay, "check", chart.y_label);
  const double slot = (x1 - x0) / static_cast<double>(chart.values.size());
  os << "<line x1=\"" << x0 << "\" y1=\"" << num(py(0.0)) << "\" x2=\"" << x1 << "\" y2=\""
     << num(py(0.0)) << "\" stroke=\"#555555\"/>\n";
  os << "<g font-family=\"sans-serif\" font-size=\"9\">\n";
  for (std::size_t i = 0; i < chart.values.size(); ++i) {
    const double v = chart.values[i];
    const double top = py(std::max(v, 0.0));
    const double h = std::fabs(py(v) - py(0.0));
    const double bx = x0 + slot * (static_cast<double>(i) + 0.15);
    os << "<rect x=\"" << num(bx) << "\" y=\"" << num(top) << "\" width=\"" << num(0.7 * slot)
       << "\" height=\"" << num(h) << "\" fill=\"" << (v >= 0.0 ? "#2ca02c" : "#d62728")
       << "\"><title>" << escape(chart.labels[i]) << ": " << num(v) << "</title></rect>\n";
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

void emit_svg(const Plot& plot, const std::string& path) { write_file(render_svg(plot), path); }

void emit_svg(const BarChart& chart, const std::string& path) {
  write_file(render_svg(chart), path);
}

}  // namespace velavg

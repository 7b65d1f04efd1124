#include "macrocast/io/svg.hpp"

#include "macrocast/io/csv.hpp"

namespace macrocast::io {

namespace {

// chart geometry: fixed canvas, unit-square data area
constexpr double kWidth = 560, kHeight = 460;
constexpr double kLeft = 70, kRight = 20, kTop = 50, kBottom = 60;

double px(double x) { return kLeft + x * (kWidth - kLeft - kRight); }
double py(double y) { return kHeight - kBottom - y * (kHeight - kTop - kBottom); }

std::string num(double v) {
  // two decimals are plenty for pixel coordinates and keep files small
  const double r = static_cast<double>(static_cast<long long>(v * 100 + (v >= 0 ? 0.5 : -0.5)));
  return format_double(r / 100);
}

std::string escape(const std::string& s) {
  std::string out;
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

}  // namespace

std::string curve_svg(const eval::Curve& curve, const std::string& title,
                      const std::string& x_label, const std::string& y_label) {
  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" +
       num(kHeight) + "\" viewBox=\"0 0 " + num(kWidth) + " " + num(kHeight) + "\">\n";
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s += "<text x=\"" + num(kWidth / 2) + "\" y=\"28\" font-family=\"sans-serif\" font-size=\"16\""
       " text-anchor=\"middle\">" + escape(title) + "</text>\n";

  // axes with ticks every 0.2
  s += "<g stroke=\"black\" fill=\"none\" stroke-width=\"1\">\n";
  s += "<path d=\"M" + num(px(0)) + " " + num(py(0)) + " L" + num(px(1)) + " " + num(py(0)) +
       "\"/>\n";
  s += "<path d=\"M" + num(px(0)) + " " + num(py(0)) + " L" + num(px(0)) + " " + num(py(1)) +
       "\"/>\n";
  for (int i = 0; i <= 5; ++i) {
    const double v = i / 5.0;
    s += "<path d=\"M" + num(px(v)) + " " + num(py(0)) + " L" + num(px(v)) + " " +
         num(py(0) + 5) + "\"/>\n";
    s += "<path d=\"M" + num(px(0)) + " " + num(py(v)) + " L" + num(px(0) - 5) + " " +
         num(py(v)) + "\"/>\n";
  }
  s += "</g>\n";
  s += "<g font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">\n";
  for (int i = 0; i <= 5; ++i) {
    const double v = i / 5.0;
    s += "<text x=\"" + num(px(v)) + "\" y=\"" + num(py(0) + 20) + "\">" + format_double(v) +
         "</text>\n";
    s += "<text x=\"" + num(px(0) - 22) + "\" y=\"" + num(py(v) + 4) + "\">" + format_double(v) +
         "</text>\n";
  }
  s += "</g>\n";
  s += "<text x=\"" + num(px(0.5)) + "\" y=\"" + num(kHeight - 15) +
       "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">" +
       escape(x_label) + "</text>\n";
  s += "<text x=\"18\" y=\"" + num(py(0.5)) +
       "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 18 " +
       num(py(0.5)) + ")\">" + escape(y_label) + "</text>\n";

  if (!curve.points.empty()) {
    s += "<polyline fill=\"none\" stroke=\"#1f6fb2\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < curve.points.size(); ++i) {
      if (i) s += ' ';
      s += num(px(curve.points[i].x)) + "," + num(py(curve.points[i].y));
    }
    s += "\"/>\n";
  }
  s += "<text x=\"" + num(px(1) - 4) + "\" y=\"" + num(py(0) - 8) +
       "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"end\">area = " +
       format_double(curve.area) + "</text>\n";
  s += "</svg>\n";
  return s;
}

void write_curve_svg(const eval::Curve& curve, const std::string& title,
                     const std::string& x_label, const std::string& y_label,
                     const std::string& path) {
  write_text_file(path, curve_svg(curve, title, x_label, y_label));
}

}  // namespace macrocast::io

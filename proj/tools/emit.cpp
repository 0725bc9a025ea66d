#include "emit.hpp"

#include <algorithm>
#include <cmath>

namespace emit {

namespace {
std::string f1(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.1f", v);
  return buf;
}
}  // namespace

std::string plunge_svg(const std::vector<double>& lambdas, double window_lo,
                       double window_hi, bool log_y) {
  const double width = 720, height = 480;
  const double ml = 64, mr = 16, mt = 16, mb = 44;
  const double pw = width - ml - mr, ph = height - mt - mb;
  const double floor_log = 1e-16;

  double n = static_cast<double>(std::max<std::size_t>(lambdas.size(), 2));
  auto x_of = [&](double idx) { return ml + pw * (idx - 1.0) / (n - 1.0); };
  double y_lo = log_y ? std::log10(floor_log) : 0.0;
  double y_hi = log_y ? 0.05 : 1.05;
  auto y_of = [&](double lam) {
    double v = log_y ? std::log10(std::max(lam, floor_log)) : lam;
    return mt + ph * (1.0 - (v - y_lo) / (y_hi - y_lo));
  };

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
         f1(width) + "\" height=\"" + f1(height) + "\" viewBox=\"0 0 " + f1(width) +
         " " + f1(height) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // shaded index window
  double wl = std::max(1.0, window_lo), wh = std::min(n, window_hi);
  if (wh > wl) {
    svg += "<rect x=\"" + f1(x_of(wl)) + "\" y=\"" + f1(mt) + "\" width=\"" +
           f1(x_of(wh) - x_of(wl)) + "\" height=\"" + f1(ph) +
           "\" fill=\"#ffd98a\" fill-opacity=\"0.6\"/>\n";
  }

  // axes
  svg += "<line x1=\"" + f1(ml) + "\" y1=\"" + f1(mt + ph) + "\" x2=\"" + f1(ml + pw) +
         "\" y2=\"" + f1(mt + ph) + "\" stroke=\"black\"/>\n";
  svg += "<line x1=\"" + f1(ml) + "\" y1=\"" + f1(mt) + "\" x2=\"" + f1(ml) +
         "\" y2=\"" + f1(mt + ph) + "\" stroke=\"black\"/>\n";
  // half line
  svg += "<line x1=\"" + f1(ml) + "\" y1=\"" + f1(y_of(0.5)) + "\" x2=\"" + f1(ml + pw) +
         "\" y2=\"" + f1(y_of(0.5)) +
         "\" stroke=\"#999999\" stroke-dasharray=\"4,4\"/>\n";

  svg += "<polyline fill=\"none\" stroke=\"#1f6fb2\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    if (i) svg += " ";
    svg += f1(x_of(static_cast<double>(i + 1))) + "," + f1(y_of(lambdas[i]));
  }
  svg += "\"/>\n";

  svg += "<text x=\"" + f1(ml + pw / 2) + "\" y=\"" + f1(height - 10) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">"
         "eigenvalue index k</text>\n";
  svg += "<text x=\"16\" y=\"" + f1(mt + ph / 2) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\" "
         "transform=\"rotate(-90 16 " + f1(mt + ph / 2) + ")\">" +
         (log_y ? "log10 lambda_k" : "lambda_k") + "</text>\n";
  svg += "</svg>\n";
  return svg;
}

}  // namespace emit

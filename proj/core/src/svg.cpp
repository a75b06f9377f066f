// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <ostream>

#include "phononic/cli.hpp"

namespace phononic {

namespace {

constexpr double kWidth = 900.0;
constexpr double kHeight = 600.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 30.0;
constexpr double kTop = 30.0;
constexpr double kBottom = 50.0;

// A "nice" tick step (1, 2 or 5 times a power of ten) giving ~6 ticks.
double nice_step(double span) {
  const double raw = span / 6.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double norm = raw / mag;
  if (norm <= 1.5) return mag;
  if (norm <= 3.5) return 2.0 * mag;
  if (norm <= 7.5) return 5.0 * mag;
  return 10.0 * mag;
}

}  // namespace

void write_band_svg(std::ostream& os, const BandStructure& bands) {
  const double arc_max = bands.samples.empty() ? 1.0 : bands.samples.back().arc_param;
  double y_max = 0.0;
  for (const BandSample& s : bands.samples) {
    y_max = std::max(y_max, s.normalized.maxCoeff());
  }
  if (y_max <= 0.0) y_max = 1.0;
  y_max *= 1.05;

  auto px = [&](double arc) {
    return kLeft + (kWidth - kLeft - kRight) * (arc_max > 0.0 ? arc / arc_max : 0.0);
  };
  auto py = [&](double v) { return kHeight - kBottom - (kHeight - kTop - kBottom) * v / y_max; };

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << kWidth << " " << kHeight
     << "\" font-family=\"sans-serif\" font-size=\"14\">\n";
  os << "<rect width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";

  // axes
  os << "<line x1=\"" << kLeft << "\" y1=\"" << py(0.0) << "\" x2=\"" << kWidth - kRight
     << "\" y2=\"" << py(0.0) << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\""
     << py(0.0) << "\" stroke=\"black\"/>\n";

  const double step = nice_step(y_max);
  for (double v = 0.0; v <= y_max; v += step) {
    os << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << py(v) << "\" x2=\"" << kLeft << "\" y2=\""
       << py(v) << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << kLeft - 9 << "\" y=\"" << py(v) + 5
       << "\" text-anchor=\"end\">" << v << "</text>\n";
  }

  for (const auto& [arc, label] : bands.vertex_marks) {
    os << "<line x1=\"" << px(arc) << "\" y1=\"" << kTop << "\" x2=\"" << px(arc) << "\" y2=\""
       << py(0.0) << "\" stroke=\"#bbbbbb\" stroke-dasharray=\"4 4\"/>\n";
    os << "<text x=\"" << px(arc) << "\" y=\"" << kHeight - kBottom + 22
       << "\" text-anchor=\"middle\">" << label << "</text>\n";
  }
  os << "<text x=\"20\" y=\"" << (kTop + py(0.0)) / 2
     << "\" text-anchor=\"middle\" transform=\"rotate(-90 20 " << (kTop + py(0.0)) / 2
     << ")\">normalized frequency</text>\n";

  for (int b = 0; b < bands.band_count; ++b) {
    os << "<polyline fill=\"none\" stroke=\"#2166ac\" stroke-width=\"1.5\" points=\"";
    for (const BandSample& s : bands.samples) {
      os << px(s.arc_param) << "," << py(s.normalized[b]) << " ";
    }
    os << "\"/>\n";
  }
  os << "</svg>\n";
}

}  // namespace phononic

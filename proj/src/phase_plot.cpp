#include "centro/phase_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace centro {
namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

}  // namespace

std::string make_phase_plot(const CsvTable& table, const std::string& axis, double threshold,
                            PhasePlot& out) {
  std::string suffix;
  if (axis == "sagittal")
    suffix = "_x";
  else if (axis == "lateral")
    suffix = "_y";
  else
    return "axis must be 'sagittal' or 'lateral'";

  const int col_pos = column_index(table, "true_com" + suffix);
  const int col_vel = column_index(table, "true_vel" + suffix);
  const int col_ref_pos = column_index(table, "ref_com" + suffix);
  const int col_ref_vel = column_index(table, "ref_vel" + suffix);
  if (col_pos < 0 || col_vel < 0 || col_ref_pos < 0 || col_ref_vel < 0)
    return "log is missing phase-plot columns";
  double omega = 0.0;
  if (!comment_value(table, "omega", omega) || !(omega > 0.0))
    return "log is missing the omega header";
  if (table.rows.empty()) return "log has no rows";

  out = PhasePlot{};
  out.total = int(table.rows.size());

  double min_p = 1e300, max_p = -1e300, min_v = 1e300, max_v = -1e300;
  std::vector<bool> diverging(table.rows.size());
  std::ostringstream csv;
  csv << "position,velocity\n";
  for (size_t i = 0; i < table.rows.size(); ++i) {
    const std::vector<double>& row = table.rows[i];
    const double p = row[col_pos];
    const double v = row[col_vel];
    const double err = (p - row[col_ref_pos]) + (v - row[col_ref_vel]) / omega;
    diverging[i] = std::abs(err) > threshold;
    if (diverging[i]) ++out.diverging;
    min_p = std::min(min_p, p);
    max_p = std::max(max_p, p);
    min_v = std::min(min_v, v);
    max_v = std::max(max_v, v);
    csv << num(p) << ',' << num(v) << '\n';
  }
  out.csv = csv.str();

  const double pad_p = std::max(1e-6, 0.05 * (max_p - min_p));
  const double pad_v = std::max(1e-6, 0.05 * (max_v - min_v));
  min_p -= pad_p;
  max_p += pad_p;
  min_v -= pad_v;
  max_v += pad_v;

  const double width = 640.0, height = 480.0, margin = 48.0;
  const auto sx = [&](double p) {
    return margin + (p - min_p) / (max_p - min_p) * (width - 2.0 * margin);
  };
  const auto sy = [&](double v) {
    return height - margin - (v - min_v) / (max_v - min_v) * (height - 2.0 * margin);
  };

  std::ostringstream svg;
  svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << width << "' height='" << height
      << "' viewBox='0 0 " << width << ' ' << height << "'>\n";
  svg << "<rect width='100%' height='100%' fill='white'/>\n";
  svg << "<line x1='" << margin << "' y1='" << height - margin << "' x2='" << width - margin
      << "' y2='" << height - margin << "' stroke='black'/>\n";
  svg << "<line x1='" << margin << "' y1='" << margin << "' x2='" << margin << "' y2='"
      << height - margin << "' stroke='black'/>\n";
  svg << "<text x='" << width / 2 << "' y='" << height - 12
      << "' font-size='14' text-anchor='middle'>" << axis << " position [m]</text>\n";
  svg << "<text x='16' y='" << height / 2
      << "' font-size='14' text-anchor='middle' transform='rotate(-90 16 " << height / 2
      << ")'>velocity [m/s]</text>\n";
  svg << "<text x='" << margin << "' y='" << height - margin + 16 << "' font-size='11'>"
      << num(min_p) << "</text>\n";
  svg << "<text x='" << width - margin << "' y='" << height - margin + 16
      << "' font-size='11' text-anchor='end'>" << num(max_p) << "</text>\n";
  svg << "<text x='" << margin - 4 << "' y='" << height - margin
      << "' font-size='11' text-anchor='end'>" << num(min_v) << "</text>\n";
  svg << "<text x='" << margin - 4 << "' y='" << margin + 4
      << "' font-size='11' text-anchor='end'>" << num(max_v) << "</text>\n";

  svg << "<polyline fill='none' stroke='#bbbbbb' stroke-width='0.8' points='";
  for (size_t i = 0; i < table.rows.size(); ++i) {
    svg << num(sx(table.rows[i][col_pos])) << ',' << num(sy(table.rows[i][col_vel]));
    if (i + 1 < table.rows.size()) svg << ' ';
  }
  svg << "'/>\n";
  for (size_t i = 0; i < table.rows.size(); ++i) {
    svg << "<circle cx='" << num(sx(table.rows[i][col_pos])) << "' cy='"
        << num(sy(table.rows[i][col_vel])) << "' r='1.6' fill='"
        << (diverging[i] ? "#cc2222" : "#227722") << "'/>\n";
  }
  svg << "<text x='" << width - margin << "' y='" << margin - 8
      << "' font-size='12' text-anchor='end'>" << out.diverging << " / " << out.total
      << " diverging</text>\n";
  svg << "</svg>\n";
  out.svg = svg.str();
  return {};
}

}  // namespace centro

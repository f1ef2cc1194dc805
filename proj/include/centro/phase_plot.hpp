#pragma once

#include <string>

#include "centro/csv_io.hpp"

namespace centro {

struct PhasePlot {
  std::string svg;
  std::string csv;  // two columns: position, velocity
  int total = 0;
  int diverging = 0;
};

/// Builds a position-velocity phase portrait for one axis ("sagittal" maps to
/// x, "lateral" to y) from a run-log table. Points are classed by the
/// divergent pendulum component of the tracking error, |e + e_dot/omega|:
/// within `threshold` counts as on-orbit, beyond as diverging. omega is taken
/// from the log's comment header. Returns an empty string on success.
std::string make_phase_plot(const CsvTable& table, const std::string& axis, double threshold,
                            PhasePlot& out);

}  // namespace centro

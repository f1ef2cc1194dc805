#pragma once

#include "centro/sim.hpp"

namespace centro {

struct IseMetrics {
  double e_c = 0.0;  // CoM position tracking
  double e_z = 0.0;  // pivot tracking
  double e_v = 0.0;  // CoM velocity tracking
  bool normalized = true;  // false when v_ref = 0 (velocity normalization skipped)
};

/// Squared-error integrals of reference vs plant truth over the final `t_w`
/// seconds of the log (trapezoid on the tick grid), normalized by v_ref * t_w.
/// With v_ref = 0 the velocity normalization is undefined; the integrals are
/// then normalized by t_w alone and flagged.
IseMetrics ise_metrics(const RunLog& log, double v_ref, double t_w);

}  // namespace centro

#include "centro/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace centro {

IseMetrics ise_metrics(const RunLog& log, double v_ref, double t_w) {
  IseMetrics out;
  if (log.ticks.size() < 2 || !(t_w > 0.0)) return out;

  const double t_end = log.ticks.back().time;
  const double t_start = std::max(log.ticks.front().time, t_end - t_w);

  double sum_c = 0.0, sum_z = 0.0, sum_v = 0.0;
  for (size_t i = 0; i + 1 < log.ticks.size(); ++i) {
    const TickRecord& a = log.ticks[i];
    const TickRecord& b = log.ticks[i + 1];
    if (b.time <= t_start) continue;
    const double span = b.time - a.time;
    const double sq_c_a = (a.ref_com - a.true_com).squaredNorm();
    const double sq_c_b = (b.ref_com - b.true_com).squaredNorm();
    const double sq_z_a = (a.ref_zmp - a.true_zmp).squaredNorm();
    const double sq_z_b = (b.ref_zmp - b.true_zmp).squaredNorm();
    const double sq_v_a = (a.ref_vel - a.true_vel).squaredNorm();
    const double sq_v_b = (b.ref_vel - b.true_vel).squaredNorm();
    sum_c += 0.5 * (sq_c_a + sq_c_b) * span;
    sum_z += 0.5 * (sq_z_a + sq_z_b) * span;
    sum_v += 0.5 * (sq_v_a + sq_v_b) * span;
  }

  const double window = std::max(1e-12, std::min(t_w, t_end - log.ticks.front().time));
  double scale = 1.0 / window;
  if (v_ref > 0.0) {
    scale /= v_ref;
  } else {
    out.normalized = false;
  }
  out.e_c = sum_c * scale;
  out.e_z = sum_z * scale;
  out.e_v = sum_v * scale;
  return out;
}

}  // namespace centro

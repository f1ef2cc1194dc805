#pragma once

#include <cmath>

namespace centro {

/// Linear inverted pendulum constants. omega is kept equal to sqrt(g/h).
struct LipmParams {
  double com_height = 0.40;
  double gravity = 9.81;
  double omega = std::sqrt(9.81 / 0.40);

  static LipmParams from_height(double h, double g = 9.81) {
    LipmParams p;
    p.com_height = h;
    p.gravity = g;
    p.omega = std::sqrt(g / h);
    return p;
  }
};

struct LipmState {
  double pos = 0.0;
  double vel = 0.0;
};

/// Closed-form pendulum state at time t, coordinates relative to a constant
/// pivot: x(t) = x0 cosh(wt) + (v0/w) sinh(wt), v(t) = x0 w sinh(wt) + v0 cosh(wt).
LipmState lipm_state(double x0, double v0, const LipmParams& params, double t);

}  // namespace centro

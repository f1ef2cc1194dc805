#include "centro/lipm.hpp"

namespace centro {

LipmState lipm_state(double x0, double v0, const LipmParams& params, double t) {
  const double w = params.omega;
  const double c = std::cosh(w * t);
  const double s = std::sinh(w * t);
  return {x0 * c + v0 / w * s, x0 * w * s + v0 * c};
}

}  // namespace centro

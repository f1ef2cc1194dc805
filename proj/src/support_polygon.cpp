#include "centro/support_polygon.hpp"

#include <algorithm>
#include <cmath>

namespace centro {
namespace {

constexpr double kEdgeEps = 1e-12;

void append_corners(std::vector<Eigen::Vector2d>& points, const FootFrame& foot,
                    const FootGeometry& geometry) {
  const double c = std::cos(foot.yaw);
  const double s = std::sin(foot.yaw);
  const double l = geometry.half_length;
  const double w = geometry.half_width;
  const Eigen::Vector2d center = foot.position.head<2>();
  const double sx[4] = {+l, +l, -l, -l};
  const double sy[4] = {+w, -w, -w, +w};
  for (int i = 0; i < 4; ++i)
    points.emplace_back(center.x() + c * sx[i] - s * sy[i], center.y() + s * sx[i] + c * sy[i]);
}

double cross(const Eigen::Vector2d& o, const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
}

// Andrew monotone chain, counter-clockwise
std::vector<Eigen::Vector2d> convex_hull(std::vector<Eigen::Vector2d> points) {
  std::sort(points.begin(), points.end(), [](const auto& a, const auto& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  });
  points.erase(std::unique(points.begin(), points.end(),
                           [](const auto& a, const auto& b) { return a == b; }),
               points.end());
  const int n = static_cast<int>(points.size());
  if (n < 3) return points;

  std::vector<Eigen::Vector2d> hull(2 * n);
  int k = 0;
  for (int i = 0; i < n; ++i) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], points[i]) <= kEdgeEps) --k;
    hull[k++] = points[i];
  }
  for (int i = n - 2, lower = k + 1; i >= 0; --i) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], points[i]) <= kEdgeEps) --k;
    hull[k++] = points[i];
  }
  hull.resize(k - 1);
  return hull;
}

}  // namespace

SupportPolygon SupportPolygon::from_foot(const FootFrame& foot, const FootGeometry& geometry) {
  SupportPolygon polygon;
  std::vector<Eigen::Vector2d> points;
  append_corners(points, foot, geometry);
  polygon.hull_ = convex_hull(std::move(points));
  return polygon;
}

SupportPolygon SupportPolygon::from_feet(const FootFrame& a, const FootFrame& b,
                                         const FootGeometry& geometry) {
  SupportPolygon polygon;
  std::vector<Eigen::Vector2d> points;
  append_corners(points, a, geometry);
  append_corners(points, b, geometry);
  polygon.hull_ = convex_hull(std::move(points));
  return polygon;
}

bool SupportPolygon::contains(const Eigen::Vector2d& point) const {
  const int n = static_cast<int>(hull_.size());
  if (n < 3) return false;
  for (int i = 0; i < n; ++i) {
    if (cross(hull_[i], hull_[(i + 1) % n], point) < -kEdgeEps) return false;
  }
  return true;
}

Eigen::Vector2d SupportPolygon::clamp(const Eigen::Vector2d& point) const {
  const int n = static_cast<int>(hull_.size());
  if (n == 0) return point;
  if (n == 1) return hull_[0];
  if (contains(point)) return point;

  Eigen::Vector2d best = hull_[0];
  double best_dist = (point - best).squaredNorm();
  for (int i = 0; i < n; ++i) {
    const Eigen::Vector2d& a = hull_[i];
    const Eigen::Vector2d& b = hull_[(i + 1) % n];
    const Eigen::Vector2d ab = b - a;
    const double len2 = ab.squaredNorm();
    const double t = len2 > 0.0 ? std::clamp((point - a).dot(ab) / len2, 0.0, 1.0) : 0.0;
    const Eigen::Vector2d candidate = a + t * ab;
    const double dist = (point - candidate).squaredNorm();
    if (dist < best_dist) {
      best_dist = dist;
      best = candidate;
    }
  }
  return best;
}

}  // namespace centro

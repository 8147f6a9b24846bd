#include "colorvib/ellipse_atlas.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>

namespace colorvib {

namespace {

constexpr std::array<MacAdamEllipse, 25> kAtlas = {{
    {1, {0.1600, 0.0570}, 0.00085, 0.00035, 62.5},
    {2, {0.1870, 0.1180}, 0.00220, 0.00055, 77.0},
    {3, {0.2530, 0.1250}, 0.00250, 0.00050, 55.5},
    {4, {0.1500, 0.6800}, 0.00960, 0.00230, 105.0},
    {5, {0.1310, 0.5210}, 0.00470, 0.00200, 112.5},
    {6, {0.2120, 0.5500}, 0.00580, 0.00230, 100.0},
    {7, {0.2580, 0.4500}, 0.00500, 0.00200, 92.0},
    {8, {0.1520, 0.3650}, 0.00380, 0.00190, 110.0},
    {9, {0.2800, 0.3850}, 0.00400, 0.00150, 75.5},
    {10, {0.3800, 0.4980}, 0.00440, 0.00120, 70.0},
    {11, {0.1600, 0.2000}, 0.00210, 0.00095, 104.0},
    {12, {0.2280, 0.2500}, 0.00310, 0.00090, 72.0},
    {13, {0.3050, 0.3230}, 0.00230, 0.00090, 58.0},
    {14, {0.3850, 0.3930}, 0.00380, 0.00160, 65.5},
    {15, {0.4720, 0.3990}, 0.00320, 0.00140, 51.0},
    {16, {0.5270, 0.3500}, 0.00260, 0.00130, 20.0},
    {17, {0.4750, 0.3000}, 0.00290, 0.00110, 28.5},
    {18, {0.5100, 0.2360}, 0.00240, 0.00120, 29.5},
    {19, {0.5960, 0.2830}, 0.00260, 0.00130, 13.0},
    {20, {0.3440, 0.2840}, 0.00230, 0.00090, 60.0},
    {21, {0.3900, 0.2370}, 0.00250, 0.00100, 47.0},
    {22, {0.4410, 0.1980}, 0.00280, 0.00095, 34.5},
    {23, {0.2780, 0.2230}, 0.00240, 0.00055, 57.5},
    {24, {0.3000, 0.1630}, 0.00290, 0.00060, 54.0},
    {25, {0.3650, 0.1530}, 0.00360, 0.00095, 40.0},
}};

constexpr double kDegToRad = std::numbers::pi / 180.0;
constexpr double kCoincidentCenter = 1e-9;
constexpr double kInterpolationDelta = 1e-9;

}  // namespace

const std::array<MacAdamEllipse, 25>& builtin_atlas() noexcept { return kAtlas; }

const MacAdamEllipse& atlas_entry(int id) {
  if (id < 1 || id > static_cast<int>(kAtlas.size())) {
    throw Error(ErrorCode::kInvalidArgument, "no atlas ellipse with id " + std::to_string(id));
  }
  return kAtlas[static_cast<std::size_t>(id - 1)];
}

EndpointPair endpoints_unchecked(const MacAdamEllipse& e, double r) noexcept {
  const double theta = e.theta_deg * kDegToRad;
  const double dx = r * e.a * std::sin(theta);
  const double dy = r * e.a * std::cos(theta);
  return {{e.center.x + dx, e.center.y + dy}, {e.center.x - dx, e.center.y - dy}, e.id, r};
}

EndpointPair endpoints(const MacAdamEllipse& e, double r) {
  if (!(r >= 0.0) || !std::isfinite(r)) {
    throw Error(ErrorCode::kInvalidArgument, "amplitude ratio must be finite and >= 0");
  }
  const EndpointPair out = endpoints_unchecked(e, r);
  for (const auto& [name, p] : {std::pair{"plus", out.plus}, std::pair{"minus", out.minus}}) {
    if (!is_valid_chromaticity(p)) {
      std::ostringstream os;
      os << name << " endpoint (" << p.x << ", " << p.y << ") of ellipse " << e.id << " at r=" << r;
      throw Error(ErrorCode::kChromaticityOutOfDiagram, os.str());
    }
  }
  return out;
}

MetricMatrix metric_of(const EllipseShape& shape) noexcept {
  const double theta = shape.theta_deg * kDegToRad;
  // Major axis u = (sin, cos), minor axis v = (cos, -sin).
  const double ux = std::sin(theta), uy = std::cos(theta);
  const double vx = uy, vy = -ux;
  const double ka = 1.0 / (shape.a * shape.a);
  const double kb = 1.0 / (shape.b * shape.b);
  return {ka * ux * ux + kb * vx * vx, ka * ux * uy + kb * vx * vy, ka * uy * uy + kb * vy * vy};
}

EllipseShape shape_of(const MetricMatrix& m) noexcept {
  const double mean = 0.5 * (m.xx + m.yy);
  const double half_diff = 0.5 * (m.xx - m.yy);
  const double radius = std::hypot(half_diff, m.xy);
  const double small = mean - radius;  // along the major axis
  const double large = mean + radius;

  // phi is the standard-position angle of the large-eigenvalue (minor-axis)
  // direction; the major axis is perpendicular to it, and theta is measured
  // from the y axis, which works out to theta = -phi (mod 180).
  double theta_deg = 0.0;
  if (radius > 0.0) {
    const double phi = 0.5 * std::atan2(2.0 * m.xy, m.xx - m.yy);
    theta_deg = std::fmod(-phi / kDegToRad, 180.0);
    if (theta_deg < 0.0) theta_deg += 180.0;
    if (theta_deg >= 180.0) theta_deg -= 180.0;
  }
  return {1.0 / std::sqrt(small), 1.0 / std::sqrt(large), theta_deg};
}

MetricMatrix interpolate_metric(Chromaticity p, std::span<const MacAdamEllipse> atlas) {
  if (atlas.empty()) throw Error(ErrorCode::kInvalidArgument, "atlas must not be empty");
  MetricMatrix acc;
  double total = 0.0;
  for (const auto& e : atlas) {
    const double dx = p.x - e.center.x, dy = p.y - e.center.y;
    const double w = 1.0 / (dx * dx + dy * dy + kInterpolationDelta);
    const MetricMatrix m = metric_of({e.a, e.b, e.theta_deg});
    acc.xx += w * m.xx;
    acc.xy += w * m.xy;
    acc.yy += w * m.yy;
    total += w;
  }
  return {acc.xx / total, acc.xy / total, acc.yy / total};
}

MacAdamEllipse interpolate_ellipse(Chromaticity p, std::span<const MacAdamEllipse> atlas) {
  if (atlas.empty()) throw Error(ErrorCode::kInvalidArgument, "atlas must not be empty");
  if (!is_valid_chromaticity(p)) {
    throw Error(ErrorCode::kInvalidArgument, "interpolation point is not a valid chromaticity");
  }
  const MacAdamEllipse* nearest = nullptr;
  double nearest_dist = std::numeric_limits<double>::infinity();
  for (const auto& e : atlas) {
    const double d = std::hypot(p.x - e.center.x, p.y - e.center.y);
    if (d < nearest_dist) {
      nearest_dist = d;
      nearest = &e;
    }
  }
  if (nearest_dist <= kCoincidentCenter) {
    MacAdamEllipse out = *nearest;
    out.center = p;
    return out;
  }
  const EllipseShape s = shape_of(interpolate_metric(p, atlas));
  return {0, p, s.a, s.b, s.theta_deg};
}

void write_atlas_table(std::ostream& os, std::span<const MacAdamEllipse> atlas) {
  os << "id\tcx\tcy\ta\tb\ttheta_deg\n";
  char line[128];
  for (const auto& e : atlas) {
    std::snprintf(line, sizeof line, "%d\t%.4f\t%.4f\t%.5f\t%.5f\t%.1f\n", e.id, e.center.x,
                  e.center.y, e.a, e.b, e.theta_deg);
    os << line;
  }
}

}  // namespace colorvib

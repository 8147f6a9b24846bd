#pragma once

#include <array>
#include <iosfwd>
#include <span>

#include "colorvib/colorimetry.hpp"

namespace colorvib {

// One MacAdam discrimination ellipse on the xy diagram. Axis lengths are
// semi-axes in xy units; theta_deg is stored exactly as tabulated.
struct MacAdamEllipse {
  int id = 0;  // 1..25 for atlas entries, 0 for interpolated ellipses
  Chromaticity center;
  double a = 0.0;
  double b = 0.0;
  double theta_deg = 0.0;

  friend bool operator==(const MacAdamEllipse&, const MacAdamEllipse&) = default;
};

struct EndpointPair {
  Chromaticity plus;
  Chromaticity minus;
  int source_id = 0;
  double r = 0.0;
};

// Symmetric 2x2 matrix M with q^T M q = 1 on the ellipse boundary.
struct MetricMatrix {
  double xx = 0.0;
  double xy = 0.0;
  double yy = 0.0;
};

struct EllipseShape {
  double a = 0.0;
  double b = 0.0;
  double theta_deg = 0.0;
};

const std::array<MacAdamEllipse, 25>& builtin_atlas() noexcept;

// Looks up an atlas entry by id; throws kInvalidArgument for unknown ids.
const MacAdamEllipse& atlas_entry(int id);

// p+/- = center +/- r * a * (sin theta, cos theta). The major-axis direction
// puts sin on x and cos on y, i.e. theta is measured from the y axis.
EndpointPair endpoints(const MacAdamEllipse& e, double r);

// Same formula without the diagram check.
EndpointPair endpoints_unchecked(const MacAdamEllipse& e, double r) noexcept;

MetricMatrix metric_of(const EllipseShape& shape) noexcept;
EllipseShape shape_of(const MetricMatrix& m) noexcept;

// Inverse-distance-squared weighted average of the atlas metric matrices at p.
MetricMatrix interpolate_metric(Chromaticity p, std::span<const MacAdamEllipse> atlas);

// Synthetic ellipse centred at p. Within 1e-9 of an atlas centre the atlas
// ellipse is returned verbatim (re-centred on p).
MacAdamEllipse interpolate_ellipse(Chromaticity p, std::span<const MacAdamEllipse> atlas);

// Plain-text table: header line, then "id cx cy a b theta_deg" per row.
void write_atlas_table(std::ostream& os, std::span<const MacAdamEllipse> atlas);

}  // namespace colorvib

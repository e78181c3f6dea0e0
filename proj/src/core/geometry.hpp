#pragma once

#include <Eigen/Core>

#include "core/scenario.hpp"

namespace rispeb {

// Angles of a point seen from a panel, in the panel's own frame.
// elevation = angle from the normal e_z, in [0, pi]; azimuth measured in the
// panel plane from e_x towards e_y, in (0, 2pi]. When the point lies on the
// normal axis the azimuth is undefined; it is reported as 0 with the
// degeneracy flag set.
struct PathAngles {
  double elevation = 0.0;
  double azimuth = 0.0;
  double distance = 0.0;
  bool azimuth_degenerate = false;
};

PathAngles angles_from_panel(const RisPanel& panel, const Eigen::Vector3d& target);

// Departure angle at the AP: angle between the array axis and the direction
// to the target, in [0, pi].
double aod_at_ap(const ApConfig& ap, const Eigen::Vector3d& target);

// Jacobian of the per-panel channel parameters (elevation, azimuth, distance)
// with respect to the UE position. Row k holds the gradient of parameter k;
// rows 1-2 carry 1/meters, row 3 is the unit radial direction.
struct PositionJacobian {
  Eigen::Matrix3d rows;
};

// Throws DegenerateGeometry for points behind the panel, on the normal axis
// (boresight) or on the azimuth branch line (sin(azimuth) = 0).
PositionJacobian jacobian_xi(const RisPanel& panel, const Eigen::Vector3d& ue_position);

}  // namespace rispeb

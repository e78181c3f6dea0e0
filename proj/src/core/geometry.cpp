#include "core/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "core/errors.hpp"
#include "core/units.hpp"

namespace rispeb {

namespace {

double clamp_unit(double v) { return std::clamp(v, -1.0, 1.0); }

}  // namespace

PathAngles angles_from_panel(const RisPanel& panel, const Eigen::Vector3d& target) {
  const Eigen::Vector3d u = target - panel.position;
  const double d = u.norm();
  if (d == 0.0) throw DegenerateGeometry("coincident points");

  PathAngles a;
  a.distance = d;
  const double x = u.dot(panel.e_x);
  const double y = u.dot(panel.e_y);
  const double z = u.dot(panel.e_z);
  a.elevation = std::acos(clamp_unit(z / d));

  const double rho = std::hypot(x, y);
  if (rho == 0.0) {
    // On the normal axis the in-plane direction is undefined.
    a.azimuth = 0.0;
    a.azimuth_degenerate = true;
    return a;
  }
  // Branch reconstruction from the cosine, with sign(0) := +1 so that the
  // sin = 0, cos = 1 ray joins the upper half-plane continuously.
  const double base = std::acos(clamp_unit(x / rho));
  a.azimuth = (y >= 0.0) ? base : kTwoPi - base;
  if (a.azimuth <= 0.0) a.azimuth = kTwoPi;  // land in (0, 2pi]
  return a;
}

double aod_at_ap(const ApConfig& ap, const Eigen::Vector3d& target) {
  const Eigen::Vector3d u = target - ap.position;
  const double d = u.norm();
  if (d == 0.0) throw DegenerateGeometry("coincident points");
  return std::acos(clamp_unit(ap.array_axis.dot(u) / d));
}

PositionJacobian jacobian_xi(const RisPanel& panel, const Eigen::Vector3d& ue_position) {
  const Eigen::Vector3d u = ue_position - panel.position;
  const double d = u.norm();
  if (d == 0.0) throw DegenerateGeometry("coincident points");

  const double x = u.dot(panel.e_x);
  const double y = u.dot(panel.e_y);
  const double z = u.dot(panel.e_z);
  if (z <= 0.0) throw DegenerateGeometry("target not strictly in front of panel");

  const double rho_sq = x * x + y * y;
  const double rho = std::sqrt(rho_sq);
  if (rho == 0.0) throw DegenerateGeometry("boresight: elevation gradient is singular");
  if (y == 0.0) throw DegenerateGeometry("azimuth branch point: sin(azimuth) = 0");

  PositionJacobian jac;
  // d(elevation)/dp: gradient of acos((u.e_z)/|u|); note d^2 - z^2 = rho^2.
  jac.rows.row(0) = ((z / (d * d)) * u - panel.e_z).transpose() / rho;
  // d(azimuth)/dp: gradient of the in-plane polar angle.
  jac.rows.row(1) = (x * panel.e_y - y * panel.e_x).transpose() / rho_sq;
  // d(distance)/dp: unit radial direction.
  jac.rows.row(2) = u.transpose() / d;
  return jac;
}

}  // namespace rispeb

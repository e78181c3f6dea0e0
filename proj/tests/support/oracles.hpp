#pragma once

// Test-only numerical oracles: finite-difference derivatives and an
// independent score-based information-matrix construction. These live apart
// from the library so the analytic paths they certify cannot leak in.

#include <Eigen/Core>
#include <cmath>
#include <complex>

#include "core/channel.hpp"
#include "core/geometry.hpp"
#include "core/rng.hpp"
#include "core/scenario.hpp"
#include "core/schedule.hpp"

namespace rispeb::testing {

// Central finite differences of the panel angles w.r.t. the target point.
// Row k of the result is the gradient of (elevation, azimuth, distance).
inline Eigen::Matrix3d fd_angle_jacobian(const RisPanel& panel, const Eigen::Vector3d& p,
                                         double step = 1e-7) {
  Eigen::Matrix3d jac;
  for (int c = 0; c < 3; ++c) {
    Eigen::Vector3d hi = p, lo = p;
    hi(c) += step;
    lo(c) -= step;
    const PathAngles a_hi = angles_from_panel(panel, hi);
    const PathAngles a_lo = angles_from_panel(panel, lo);
    jac(0, c) = (a_hi.elevation - a_lo.elevation) / (2 * step);
    double daz = a_hi.azimuth - a_lo.azimuth;
    // The azimuth lives on a circle; differences near the wrap need folding.
    if (daz > kPi) daz -= kTwoPi;
    if (daz < -kPi) daz += kTwoPi;
    jac(1, c) = daz / (2 * step);
    jac(2, c) = (a_hi.distance - a_lo.distance) / (2 * step);
  }
  return jac;
}

// Mean measurement of panel i at an arbitrary UE position (full chain:
// angles, distances and path gain all move with the position).
inline std::complex<double> mean_at_position(Scenario s, int ris_index,
                                             const Eigen::Vector3d& ue,
                                             const Eigen::VectorXcd& g) {
  s.ue_position = ue;
  return mean_signal(s, ris_index, g);
}

// Score-based information matrix via central differences of the measurement
// means over the UE position: F(a,b) = (2/sigma^2) sum_{i,n} Re{d_a* d_b}.
inline Eigen::Matrix3d fd_position_fim(const Scenario& s, const PhaseSchedule& schedule,
                                       double step = 1e-6) {
  Eigen::Matrix3d fim = Eigen::Matrix3d::Zero();
  for (int i = 0; i < s.num_panels(); ++i) {
    const double sigma_sq = noise_plus_interference_mw(s, i);
    for (int n = 0; n < s.num_measurements; ++n) {
      const Eigen::VectorXcd g = schedule.blocks[i].col(n);
      Eigen::Vector3cd d;
      for (int c = 0; c < 3; ++c) {
        Eigen::Vector3d hi = s.ue_position, lo = s.ue_position;
        hi(c) += step;
        lo(c) -= step;
        d(c) = (mean_at_position(s, i, hi, g) - mean_at_position(s, i, lo, g)) / (2 * step);
      }
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
          fim(a, b) += 2.0 / sigma_sq * std::real(std::conj(d(a)) * d(b));
    }
  }
  return fim;
}

// Uniformly random orthonormal triad (right-handed) from a seeded stream.
inline void random_triad(RngStream& rng, Eigen::Vector3d& ex, Eigen::Vector3d& ey,
                         Eigen::Vector3d& ez) {
  for (;;) {
    const Eigen::Vector3d a{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
    const Eigen::Vector3d b{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
    if (a.norm() < 1e-3) continue;
    ez = a.normalized();
    Eigen::Vector3d t = b - b.dot(ez) * ez;
    if (t.norm() < 1e-3) continue;
    ex = t.normalized();
    ey = ez.cross(ex);
    return;
  }
}

// Random panel/point pair with the point strictly in front and away from
// the boresight and azimuth-branch degeneracies by at least `margin` rad.
struct RandomGeometry {
  RisPanel panel;
  Eigen::Vector3d point;
};

inline RandomGeometry random_geometry(RngStream& rng, double margin = 1e-3) {
  for (;;) {
    RandomGeometry g;
    g.panel.position = {rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(-5, 5)};
    random_triad(rng, g.panel.e_x, g.panel.e_y, g.panel.e_z);
    const double r = rng.uniform(0.5, 10.0);
    const Eigen::Vector3d dir{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
    if (dir.norm() < 1e-3) continue;
    g.point = g.panel.position + r * dir.normalized();
    const Eigen::Vector3d u = g.point - g.panel.position;
    if (u.dot(g.panel.e_z) <= 0.05 * u.norm()) continue;

    const PathAngles angles = angles_from_panel(g.panel, g.point);
    if (angles.azimuth_degenerate) continue;
    if (angles.elevation < margin || angles.elevation > kPi - margin) continue;
    const double sin_az = std::sin(angles.azimuth);
    if (std::abs(sin_az) < margin) continue;
    return g;
  }
}

}  // namespace rispeb::testing

#include <doctest.h>

#include <cmath>

#include "core/errors.hpp"
#include "core/geometry.hpp"
#include "core/units.hpp"
#include "support/oracles.hpp"

using namespace rispeb;

namespace {

RisPanel reference_panel_1() {
  RisPanel p;
  p.position = {0, 3, 2};
  p.e_x = {0, -1, 0};
  p.e_y = {0, 0, 1};
  p.e_z = {1, 0, 0};
  return p;
}

}  // namespace

TEST_CASE("angles along the panel normal") {
  const RisPanel p = reference_panel_1();
  const PathAngles a = angles_from_panel(p, p.position + p.e_z);
  CHECK(a.elevation == doctest::Approx(0.0));
  CHECK(a.distance == doctest::Approx(1.0));
  CHECK(a.azimuth_degenerate);
  CHECK(a.azimuth == 0.0);
}

TEST_CASE("angles for the reference geometry") {
  const RisPanel p = reference_panel_1();
  const PathAngles a = angles_from_panel(p, {4, 4, 1});
  CHECK(a.distance == doctest::Approx(std::sqrt(18.0)).epsilon(1e-12));
  CHECK(a.elevation == doctest::Approx(std::acos(4.0 / std::sqrt(18.0))).epsilon(1e-12));
  CHECK(a.elevation == doctest::Approx(0.33984).epsilon(1e-4));
  CHECK_FALSE(a.azimuth_degenerate);
}

TEST_CASE("azimuth lands on 2pi along the e_x ray") {
  const RisPanel p = reference_panel_1();
  const PathAngles a = angles_from_panel(p, p.position + 2.0 * p.e_x + 0.5 * p.e_z);
  CHECK(a.azimuth == doctest::Approx(kTwoPi));
}

TEST_CASE("angle ranges over random geometries") {
  RngStream rng = RngStream::derive(7, "geometry-qa");
  for (int k = 0; k < 500; ++k) {
    const auto g = testing::random_geometry(rng, 0.0);
    const PathAngles a = angles_from_panel(g.panel, g.point);
    CHECK(a.elevation > 0.0);
    CHECK(a.elevation <= kPi);
    CHECK(a.azimuth > 0.0);
    CHECK(a.azimuth <= kTwoPi);
  }
}

TEST_CASE("angles are invariant under rigid rotations") {
  RngStream rng = RngStream::derive(11, "geometry-qa");
  for (int k = 0; k < 50; ++k) {
    const auto g = testing::random_geometry(rng);
    Eigen::Vector3d rx, ry, rz;
    testing::random_triad(rng, rx, ry, rz);
    Eigen::Matrix3d rot;
    rot.col(0) = rx;
    rot.col(1) = ry;
    rot.col(2) = rz;

    RisPanel rotated = g.panel;
    rotated.position = rot * g.panel.position;
    rotated.e_x = rot * g.panel.e_x;
    rotated.e_y = rot * g.panel.e_y;
    rotated.e_z = rot * g.panel.e_z;

    const PathAngles a = angles_from_panel(g.panel, g.point);
    const PathAngles b = angles_from_panel(rotated, rot * g.point);
    CHECK(b.elevation == doctest::Approx(a.elevation).epsilon(1e-12));
    CHECK(b.azimuth == doctest::Approx(a.azimuth).epsilon(1e-12));
    CHECK(b.distance == doctest::Approx(a.distance).epsilon(1e-12));
  }
}

TEST_CASE("departure angle at the AP") {
  ApConfig ap;
  ap.position = {5, 1, 0};
  ap.array_axis = {0, 1, 0};
  CHECK(aod_at_ap(ap, ap.position + Eigen::Vector3d(0, 3, 0)) == doctest::Approx(0.0));
  CHECK(aod_at_ap(ap, ap.position + Eigen::Vector3d(2, 0, 1)) == doctest::Approx(kPi / 2));
  CHECK(aod_at_ap(ap, {0, 3, 2}) ==
        doctest::Approx(std::acos(2.0 / std::sqrt(33.0))).epsilon(1e-12));
  CHECK(aod_at_ap(ap, {0, 3, 2}) == doctest::Approx(1.2153).epsilon(1e-4));
  CHECK_THROWS_AS(aod_at_ap(ap, ap.position), DegenerateGeometry);
}

TEST_CASE("jacobian radial row is the unit direction") {
  const RisPanel p = reference_panel_1();
  const Eigen::Vector3d ue{4, 4, 1};
  const PositionJacobian jac = jacobian_xi(p, ue);
  CHECK(jac.rows.row(2).norm() == doctest::Approx(1.0).epsilon(1e-12));
  const Eigen::Vector3d expected = (ue - p.position).normalized();
  CHECK((jac.rows.row(2).transpose() - expected).norm() == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("jacobian matches finite differences on the reference geometry") {
  const RisPanel p = reference_panel_1();
  const Eigen::Vector3d ue{4, 4, 1};
  const PositionJacobian jac = jacobian_xi(p, ue);
  const Eigen::Matrix3d fd = testing::fd_angle_jacobian(p, ue);
  CHECK((jac.rows - fd).norm() / fd.norm() < 1e-6);
}

TEST_CASE("jacobian matches finite differences over 1000 seeded geometries") {
  RngStream rng = RngStream::derive(42, "geometry-qa");
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const auto g = testing::random_geometry(rng);
    const PositionJacobian jac = jacobian_xi(g.panel, g.point);
    const Eigen::Matrix3d fd = testing::fd_angle_jacobian(g.panel, g.point);
    worst = std::max(worst, (jac.rows - fd).norm() / fd.norm());
  }
  CHECK(worst < 1e-5);
}

TEST_CASE("jacobian degeneracies raise typed errors") {
  const RisPanel p = reference_panel_1();
  // Boresight: on the normal axis.
  CHECK_THROWS_AS(jacobian_xi(p, p.position + 2.0 * p.e_z), DegenerateGeometry);
  // Behind the panel.
  CHECK_THROWS_AS(jacobian_xi(p, p.position - 1.0 * p.e_z), DegenerateGeometry);
  // Azimuth branch line: u.e_y = 0 with nonzero in-plane component.
  CHECK_THROWS_AS(jacobian_xi(p, p.position + p.e_x + p.e_z), DegenerateGeometry);
  CHECK_THROWS_AS(jacobian_xi(p, p.position), DegenerateGeometry);
}

#include "core/baseline.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "core/channel.hpp"
#include "core/errors.hpp"
#include "core/geometry.hpp"
#include "core/units.hpp"

namespace rispeb {

SweepRegion room_interior_region(const RisPanel& panel, const Eigen::Vector3d& box_min,
                                 const Eigen::Vector3d& box_max) {
  std::vector<double> azimuths;
  for (int ix = 0; ix < 3; ++ix)
    for (int iy = 0; iy < 3; ++iy)
      for (int iz = 0; iz < 3; ++iz) {
        const Eigen::Vector3d p(box_min.x() + (box_max.x() - box_min.x()) * ix / 2.0,
                                box_min.y() + (box_max.y() - box_min.y()) * iy / 2.0,
                                box_min.z() + (box_max.z() - box_min.z()) * iz / 2.0);
        const Eigen::Vector3d u = p - panel.position;
        if (u.dot(panel.e_z) <= 1e-9 * std::max(1.0, u.norm())) continue;
        const double x = u.dot(panel.e_x);
        const double y = u.dot(panel.e_y);
        if (x == 0.0 && y == 0.0) continue;
        double az = std::atan2(y, x);
        if (az < 0.0) az += kTwoPi;
        azimuths.push_back(az);
      }
  SweepRegion region = SweepRegion::front_hemisphere();
  if (azimuths.size() < 2) return region;

  // Minimal covering arc: complement of the largest gap between sorted angles.
  std::sort(azimuths.begin(), azimuths.end());
  double best_gap = kTwoPi - azimuths.back() + azimuths.front();
  double arc_start = azimuths.front();
  for (std::size_t k = 1; k < azimuths.size(); ++k) {
    const double gap = azimuths[k] - azimuths[k - 1];
    if (gap > best_gap) {
      best_gap = gap;
      arc_start = azimuths[k];
    }
  }
  region.azimuth_lo = arc_start;
  region.azimuth_span = kTwoPi - best_gap;
  return region;
}

std::pair<double, double> sweep_direction(const SweepRegion& region, int num_slots, int slot) {
  if (region.empty()) throw InvalidArgument("empty sweep region");
  if (num_slots < 1 || slot < 0 || slot >= num_slots)
    throw InvalidArgument("sweep slot out of range");
  // Most-square grid with r*c >= N, r = floor(sqrt(N)); row-major over
  // (elevation, azimuth); cell midpoints.
  const int r = std::max(1, static_cast<int>(std::floor(std::sqrt(static_cast<double>(num_slots)))));
  const int c = (num_slots + r - 1) / r;
  const int row = slot / c;
  const int col = slot % c;
  const double el = region.elevation_lo +
                    (region.elevation_hi - region.elevation_lo) * (row + 0.5) / r;
  double az = region.azimuth_lo + region.azimuth_span * (col + 0.5) / c;
  az = std::fmod(az, kTwoPi);
  if (az <= 0.0) az += kTwoPi;
  return {el, az};
}

PhaseSchedule ebs_schedule(const Scenario& s, const SweepRegion& region) {
  return ebs_schedule(s, std::vector<SweepRegion>(s.ris.size(), region));
}

PhaseSchedule ebs_schedule(const Scenario& s, const std::vector<SweepRegion>& per_panel) {
  if (per_panel.size() != s.ris.size())
    throw DimensionMismatch("one sweep region per panel required");
  PhaseSchedule out;
  out.blocks.reserve(s.ris.size());
  const int n = s.num_measurements;
  for (int i = 0; i < s.num_panels(); ++i) {
    const RisPanel& panel = s.ris[i];
    if (per_panel[i].empty()) throw InvalidArgument("empty sweep region");
    const PathAngles to_ap = angles_from_panel(panel, s.ap.position);
    const Eigen::VectorXcd a_ap =
        ris_steering(panel, to_ap.elevation, to_ap.azimuth, s.wavelength_m);
    Eigen::MatrixXcd block(panel.element_count(), n);
    for (int slot = 0; slot < n; ++slot) {
      const auto [el, az] = sweep_direction(per_panel[i], n, slot);
      const Eigen::VectorXcd a_dir = ris_steering(panel, el, az, s.wavelength_m);
      block.col(slot) = a_dir.cwiseProduct(a_ap).conjugate();
    }
    out.blocks.push_back(std::move(block));
  }
  return out;
}

PhaseSchedule quantize_schedule(const PhaseSchedule& schedule, int bits) {
  if (bits < 1) throw InvalidArgument("quantization needs at least one bit");
  const int states = 1 << bits;
  const double step = kTwoPi / states;
  PhaseSchedule out;
  out.blocks.reserve(schedule.blocks.size());
  for (const auto& b : schedule.blocks) {
    Eigen::MatrixXcd q(b.rows(), b.cols());
    for (Eigen::Index col = 0; col < b.cols(); ++col)
      for (Eigen::Index row = 0; row < b.rows(); ++row) {
        double phase = std::arg(b(row, col));
        if (phase < 0.0) phase += kTwoPi;
        // Nearest state with ties toward the smaller one; 2 pi wraps to 0.
        long c = static_cast<long>(std::ceil(phase / step - 0.5));
        c = ((c % states) + states) % states;
        q(row, col) = std::polar(1.0, c * step);
      }
    out.blocks.push_back(std::move(q));
  }
  return out;
}

}  // namespace rispeb

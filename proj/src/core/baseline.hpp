#pragma once

#include <Eigen/Core>
#include <vector>

#include "core/scenario.hpp"
#include "core/schedule.hpp"

namespace rispeb {

// Angular rectangle swept by the beam-sweeping baseline, in a panel's frame.
// The azimuth interval is [azimuth_lo, azimuth_lo + azimuth_span] taken
// modulo 2 pi, so spans crossing the wrap are representable.
struct SweepRegion {
  double elevation_lo = 0.0;
  double elevation_hi = kPi / 2.0;
  double azimuth_lo = 0.0;
  double azimuth_span = kTwoPi;

  static SweepRegion front_hemisphere() { return SweepRegion{}; }
  bool empty() const { return elevation_hi < elevation_lo || azimuth_span < 0.0; }
};

// Default sweep cover for a room-mounted panel: full front elevations with
// the azimuth restricted to the smallest arc containing the room interior as
// seen from the panel (sampled on a 3x3x3 lattice of the bounding box).
// Falls back to the full front hemisphere when nothing of the box lies in
// front of the panel.
SweepRegion room_interior_region(const RisPanel& panel, const Eigen::Vector3d& box_min,
                                 const Eigen::Vector3d& box_max);

// Beam-sweeping schedule: slot n of panel i points a beam at the n-th
// direction of a near-square grid covering the region (row-major over
// elevation then azimuth, cell midpoints, surplus grid cells dropped).
// g_{i,n} = conj(a_I(dir_n) .* a_I(AP direction)).
PhaseSchedule ebs_schedule(const Scenario& s, const SweepRegion& region);
PhaseSchedule ebs_schedule(const Scenario& s, const std::vector<SweepRegion>& per_panel);

// The n-th sweep direction (elevation, azimuth) for an N-slot region grid;
// exposed for tests.
std::pair<double, double> sweep_direction(const SweepRegion& region, int num_slots, int slot);

// Nearest-state quantization to 2^bits uniform phase states, ties toward the
// smaller state, 2 pi identified with 0.
PhaseSchedule quantize_schedule(const PhaseSchedule& schedule, int bits);

}  // namespace rispeb

#pragma once

#include <Eigen/Core>
#include <vector>

#include "core/rng.hpp"
#include "core/scenario.hpp"

namespace rispeb {

// Phase-shift plan for all panels across the N measurement slots. Block i is
// the L_i x N complex matrix whose column n is the phase vector of panel i
// in slot n; every entry has unit modulus.
struct PhaseSchedule {
  std::vector<Eigen::MatrixXcd> blocks;

  int num_blocks() const { return static_cast<int>(blocks.size()); }
  int num_slots() const { return blocks.empty() ? 0 : static_cast<int>(blocks[0].cols()); }
  long total_rows() const;

  bool unit_modulus(double tol = 1e-12) const;

  // Per-block phase angles in (-pi, pi].
  std::vector<Eigen::MatrixXd> angles() const;

  static PhaseSchedule from_angles(const std::vector<Eigen::MatrixXd>& angles);

  // Entrywise uniform random phases.
  static PhaseSchedule random(const Scenario& s, RngStream& rng);

  // Matched-phase profile: every slot conjugates the cascaded steering
  // vector, attaining the coherent-gain maximum of the mean signal.
  static PhaseSchedule coherent_max(const Scenario& s);
};

// Checks block shapes against the scenario (throws DimensionMismatch).
void check_schedule_shape(const Scenario& s, const PhaseSchedule& schedule);

}  // namespace rispeb

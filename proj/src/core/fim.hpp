#pragma once

#include <Eigen/Core>
#include <optional>
#include <string>
#include <vector>

#include "core/geometry.hpp"
#include "core/scenario.hpp"
#include "core/schedule.hpp"

namespace rispeb {

// A position FIM whose condition number exceeds this is reported as
// uninformative (infinite error bound) instead of being inverted.
inline constexpr double kMaxFimCondition = 1e12;

// Phase-independent derivative data of one panel's measurement mean.
// kappa row k is (b_k .* a_cascade)^T where b_1, b_2 are the elevation and
// azimuth derivative vectors and b_3 is the constant distance derivative
// -1/d_IU + j 2 pi / wavelength.
struct DerivativeBundle {
  Eigen::MatrixXcd kappa;  // 3 x L_i
  double gain_sq = 0.0;    // |path gain|^2, zero when the geometry is blocked
  double prefactor = 0.0;  // 2 N_A P0 / sigma_eta_i^2
};

DerivativeBundle derivative_bundle(const Scenario& s, int ris_index);

// Per-panel parameter FIM: prefactor * gain_sq * Re{kappa G G^H kappa^H}.
Eigen::Matrix3d fim_per_ris(const DerivativeBundle& bundle, const Eigen::MatrixXcd& block);

// Closed-form symmetric 3x3 helpers used inside optimizer loops.
Eigen::Matrix3d sym3_adjugate(const Eigen::Matrix3d& m);
double sym3_determinant(const Eigen::Matrix3d& m);

struct PebDetail {
  double peb = 0.0;             // meters, +inf when uninformative
  double condition = 0.0;       // eigenvalue ratio, +inf when singular
  Eigen::Vector3d eigenvalues;  // ascending
  Eigen::Vector3d weak_direction;  // eigenvector of the smallest eigenvalue
  bool singular = false;
};

// Throws InvariantViolation if the input is asymmetric beyond tolerance.
PebDetail peb_detail(const Eigen::Matrix3d& fim);
double peb(const Eigen::Matrix3d& fim);

struct FimOptions {
  // When set, panels with degenerate geometry are dropped from the
  // assembly instead of raising; used for scans that sweep the UE across
  // positions where some panel is unavoidably behind or on-axis.
  bool allow_degenerate_panels = false;
};

struct FimBundle {
  std::vector<Eigen::Matrix3d> per_ris_fim;
  std::vector<PositionJacobian> jacobians;
  std::vector<bool> panel_active;  // false when dropped as degenerate/blocked
  Eigen::Matrix3d position_fim = Eigen::Matrix3d::Zero();
  double peb = 0.0;
  PebDetail detail;
};

// Assembles F_pU = sum_i R_i^T F_xi_i R_i (R_i rows are parameter gradients)
// and the associated error bound.
FimBundle position_fim(const Scenario& s, const PhaseSchedule& schedule, FimOptions opts = {});

// Precomputed phase-independent operator for the optimizers: per panel the
// 3 x L_i matrix B_i = R_i^T kappa_i and the folded weight
// w_i = prefactor_i * gain_sq_i, so that the position FIM of a schedule is
// sum_i w_i Re{B_i G_i G_i^H B_i^H}.
struct SceneTerm {
  Eigen::MatrixXcd b;  // 3 x L_i
  double weight = 0.0;
  bool active = false;
  DerivativeBundle bundle;
  PositionJacobian jacobian;
  std::string note;  // reason when inactive
};

struct SceneOperator {
  std::vector<SceneTerm> terms;
  int num_slots = 0;

  static SceneOperator build(const Scenario& s, FimOptions opts = {});

  Eigen::Matrix3d fim_blocks(const std::vector<Eigen::MatrixXcd>& blocks) const;
  Eigen::Matrix3d fim(const PhaseSchedule& schedule) const;
  // trace(F^-1), +inf when the FIM fails the conditioning gate.
  double trace_inverse(const PhaseSchedule& schedule) const;
  double peb(const PhaseSchedule& schedule) const;
  double peb_blocks(const std::vector<Eigen::MatrixXcd>& blocks) const;
  bool any_active() const;
};

}  // namespace rispeb

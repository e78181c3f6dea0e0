#include "core/fim.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>

#include "core/channel.hpp"
#include "core/errors.hpp"
#include "core/units.hpp"

namespace rispeb {

namespace {

const std::complex<double> kJ{0.0, 1.0};
constexpr double kInf = std::numeric_limits<double>::infinity();

Eigen::Matrix3d symmetrize(const Eigen::Matrix3d& m) { return 0.5 * (m + m.transpose()); }

}  // namespace

DerivativeBundle derivative_bundle(const Scenario& s, int ris_index) {
  const RisPanel& panel = s.ris.at(ris_index);
  const PathAngles to_ue = angles_from_panel(panel, s.ue_position);
  const PathAngles to_ap = angles_from_panel(panel, s.ap.position);
  if (to_ue.azimuth_degenerate)
    throw DegenerateGeometry("UE on panel normal axis: derivatives undefined");

  const int count = panel.element_count();
  const double lam = s.wavelength_m;
  const double el = to_ue.elevation;
  const double az = to_ue.azimuth;

  const ComplexVector cascade = cascade_steering(s, ris_index);
  DerivativeBundle out;
  out.kappa.resize(3, count);
  const std::complex<double> b_d = -1.0 / to_ue.distance + kJ * kTwoPi / lam;
  for (int l = 0; l < count; ++l) {
    const double mx = panel.col_offset(l) / lam;
    const double ny = panel.row_offset(l) / lam;
    const std::complex<double> b_el =
        -kJ * kTwoPi * (std::cos(el) * std::cos(az) * mx + std::cos(el) * std::sin(az) * ny);
    const std::complex<double> b_az =
        kJ * kTwoPi * (std::sin(el) * std::sin(az) * mx - std::sin(el) * std::cos(az) * ny);
    out.kappa(0, l) = b_el * cascade(l);
    out.kappa(1, l) = b_az * cascade(l);
    out.kappa(2, l) = b_d * cascade(l);
  }

  const PathGain gain =
      vlos_gain(panel, to_ap, to_ue, s.ap.antenna_gain, s.noise.ue_gain, s.wavelength_m);
  out.gain_sq = gain.magnitude * gain.magnitude;
  out.prefactor = 2.0 * s.ap.num_antennas * s.ap.transmit_power_mw /
                  noise_plus_interference_mw(s, ris_index);
  return out;
}

Eigen::Matrix3d fim_per_ris(const DerivativeBundle& bundle, const Eigen::MatrixXcd& block) {
  if (block.rows() != bundle.kappa.cols())
    throw DimensionMismatch("schedule block rows do not match derivative bundle");
  const Eigen::MatrixXcd s = bundle.kappa * block;  // 3 x N
  const Eigen::Matrix3d re = (s * s.adjoint()).real();
  return bundle.prefactor * bundle.gain_sq * symmetrize(re);
}

Eigen::Matrix3d sym3_adjugate(const Eigen::Matrix3d& m) {
  Eigen::Matrix3d adj;
  adj(0, 0) = m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1);
  adj(0, 1) = m(0, 2) * m(2, 1) - m(0, 1) * m(2, 2);
  adj(0, 2) = m(0, 1) * m(1, 2) - m(0, 2) * m(1, 1);
  adj(1, 0) = m(1, 2) * m(2, 0) - m(1, 0) * m(2, 2);
  adj(1, 1) = m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0);
  adj(1, 2) = m(0, 2) * m(1, 0) - m(0, 0) * m(1, 2);
  adj(2, 0) = m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0);
  adj(2, 1) = m(0, 1) * m(2, 0) - m(0, 0) * m(2, 1);
  adj(2, 2) = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  return adj;
}

double sym3_determinant(const Eigen::Matrix3d& m) {
  return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
         m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
         m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

PebDetail peb_detail(const Eigen::Matrix3d& fim) {
  const double scale = fim.cwiseAbs().maxCoeff();
  const double asym = (fim - fim.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-8 * std::max(1.0, scale))
    throw InvariantViolation("fim", "input matrix is not symmetric");

  PebDetail d;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es;
  es.computeDirect(symmetrize(fim));
  d.eigenvalues = es.eigenvalues();  // ascending
  d.weak_direction = es.eigenvectors().col(0);
  const double lo = d.eigenvalues(0);
  const double hi = d.eigenvalues(2);
  if (lo <= 0.0 || hi <= 0.0) {
    d.singular = true;
    d.condition = kInf;
    d.peb = kInf;
    return d;
  }
  d.condition = hi / lo;
  if (d.condition > kMaxFimCondition) {
    d.singular = true;
    d.peb = kInf;
    return d;
  }
  // Adjugate inversion: deterministic closed form for the optimizer loops.
  const Eigen::Matrix3d sym = symmetrize(fim);
  const double det = sym3_determinant(sym);
  const Eigen::Matrix3d adj = sym3_adjugate(sym);
  d.peb = std::sqrt((adj(0, 0) + adj(1, 1) + adj(2, 2)) / det);
  return d;
}

double peb(const Eigen::Matrix3d& fim) { return peb_detail(fim).peb; }

FimBundle position_fim(const Scenario& s, const PhaseSchedule& schedule, FimOptions opts) {
  check_schedule_shape(s, schedule);
  FimBundle out;
  out.per_ris_fim.resize(s.ris.size(), Eigen::Matrix3d::Zero());
  out.jacobians.resize(s.ris.size());
  out.panel_active.assign(s.ris.size(), false);

  for (int i = 0; i < s.num_panels(); ++i) {
    DerivativeBundle bundle;
    PositionJacobian jac;
    try {
      bundle = derivative_bundle(s, i);
      jac = jacobian_xi(s.ris[i], s.ue_position);
    } catch (const DegenerateGeometry&) {
      if (!opts.allow_degenerate_panels) throw;
      continue;
    }
    out.jacobians[i] = jac;
    out.per_ris_fim[i] = fim_per_ris(bundle, schedule.blocks[i]);
    out.panel_active[i] = true;
    out.position_fim += jac.rows.transpose() * out.per_ris_fim[i] * jac.rows;
  }

  out.position_fim = symmetrize(out.position_fim);
  out.detail = peb_detail(out.position_fim);
  out.peb = out.detail.peb;
  return out;
}

SceneOperator SceneOperator::build(const Scenario& s, FimOptions opts) {
  SceneOperator op;
  op.num_slots = s.num_measurements;
  op.terms.resize(s.ris.size());
  for (int i = 0; i < s.num_panels(); ++i) {
    SceneTerm& term = op.terms[i];
    try {
      term.bundle = derivative_bundle(s, i);
      term.jacobian = jacobian_xi(s.ris[i], s.ue_position);
    } catch (const DegenerateGeometry& e) {
      if (!opts.allow_degenerate_panels) throw;
      term.note = e.kind();
      continue;
    }
    term.weight = term.bundle.prefactor * term.bundle.gain_sq;
    term.b = term.jacobian.rows.transpose() * term.bundle.kappa;
    term.active = term.weight > 0.0;
    if (!term.active) term.note = "blocked path (zero gain)";
  }
  return op;
}

bool SceneOperator::any_active() const {
  for (const auto& t : terms)
    if (t.active) return true;
  return false;
}

Eigen::Matrix3d SceneOperator::fim_blocks(const std::vector<Eigen::MatrixXcd>& blocks) const {
  if (blocks.size() != terms.size())
    throw DimensionMismatch("schedule block count does not match scene");
  Eigen::Matrix3d a = Eigen::Matrix3d::Zero();
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (!terms[i].active) continue;
    const Eigen::MatrixXcd s = terms[i].b * blocks[i];  // 3 x N
    a += terms[i].weight * (s * s.adjoint()).real();
  }
  return symmetrize(a);
}

Eigen::Matrix3d SceneOperator::fim(const PhaseSchedule& schedule) const {
  return fim_blocks(schedule.blocks);
}

double SceneOperator::trace_inverse(const PhaseSchedule& schedule) const {
  const PebDetail d = peb_detail(fim(schedule));
  return d.singular ? kInf : d.peb * d.peb;
}

double SceneOperator::peb(const PhaseSchedule& schedule) const {
  return peb_detail(fim(schedule)).peb;
}

double SceneOperator::peb_blocks(const std::vector<Eigen::MatrixXcd>& blocks) const {
  return peb_detail(fim_blocks(blocks)).peb;
}

}  // namespace rispeb

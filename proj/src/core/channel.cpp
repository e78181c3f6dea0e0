#include "core/channel.hpp"

#include <cmath>

#include "core/errors.hpp"
#include "core/rng.hpp"
#include "core/units.hpp"

namespace rispeb {

namespace {

const std::complex<double> kJ{0.0, 1.0};

}  // namespace

ComplexVector ap_steering(const ApConfig& ap, double theta, double wavelength_m) {
  const int n_a = ap.num_antennas;
  const double cos_theta = std::cos(theta);
  const double spacing = ap.antenna_spacing_m / wavelength_m;
  ComplexVector a(n_a);
  for (int n = 1; n <= n_a; ++n) {
    const double alpha = ((n_a + 1) / 2.0 - n) * spacing;
    a(n - 1) = std::polar(1.0, kTwoPi * alpha * cos_theta);
  }
  return a;
}

ComplexVector ris_steering(const RisPanel& panel, double elevation, double azimuth,
                           double wavelength_m) {
  const double sx = std::sin(elevation) * std::cos(azimuth);
  const double sy = std::sin(elevation) * std::sin(azimuth);
  const int count = panel.element_count();
  ComplexVector a(count);
  for (int l = 0; l < count; ++l) {
    const double delta_d = -sx * panel.col_offset(l) - sy * panel.row_offset(l);
    a(l) = std::polar(1.0, kTwoPi * delta_d / wavelength_m);
  }
  return a;
}

double radiation_pattern(double elevation) {
  return elevation <= kPi / 2.0 ? 1.0 : 0.0;
}

PathGain vlos_gain(const RisPanel& panel, const PathAngles& ap_side, const PathAngles& ue_side,
                   double ap_gain, double ue_gain, double wavelength_m) {
  if (ap_side.distance <= 0.0 || ue_side.distance <= 0.0)
    throw DegenerateGeometry("nonpositive path distance");
  PathGain g;
  g.phase = kTwoPi * (ap_side.distance + ue_side.distance) / wavelength_m;
  const double pattern =
      radiation_pattern(ap_side.elevation) * radiation_pattern(ue_side.elevation);
  if (pattern == 0.0) {
    g.blocked = true;
    return g;
  }
  g.magnitude = std::sqrt(ap_gain * ue_gain * pattern) * panel.dx_m * panel.dy_m *
                panel.amplitude_gain / (4.0 * kPi * ap_side.distance * ue_side.distance);
  return g;
}

ComplexVector ap_beamformer(const ApConfig& ap, double theta_ai, double wavelength_m) {
  ComplexVector f = ap_steering(ap, theta_ai, wavelength_m).conjugate();
  f /= std::sqrt(static_cast<double>(ap.num_antennas));
  return f;
}

ComplexVector cascade_steering(const Scenario& s, int ris_index) {
  const RisPanel& panel = s.ris.at(ris_index);
  const PathAngles to_ue = angles_from_panel(panel, s.ue_position);
  const PathAngles to_ap = angles_from_panel(panel, s.ap.position);
  const ComplexVector a_ue = ris_steering(panel, to_ue.elevation, to_ue.azimuth, s.wavelength_m);
  const ComplexVector a_ap = ris_steering(panel, to_ap.elevation, to_ap.azimuth, s.wavelength_m);
  return a_ue.cwiseProduct(a_ap);
}

double noise_plus_interference_mw(const Scenario& s, int ris_index) {
  const NoiseModel& nm = s.noise;
  if (nm.num_nlos == 0) return nm.noise_power_mw;

  // NLoS gains scale with the LoS gain suppressed by the configured ratio.
  const double d_au = (s.ap.position - s.ue_position).norm();
  if (d_au == 0.0) throw DegenerateGeometry("coincident AP and UE");
  const double los_gain_sq = s.ap.antenna_gain * nm.ue_gain * s.wavelength_m * s.wavelength_m /
                             ((4.0 * kPi * d_au) * (4.0 * kPi * d_au));
  const double sigma_l_sq = los_gain_sq * db_to_linear(-nm.nlos_suppression_db);

  // Expected beamformed NLoS power factor. The deterministic default is the
  // diagonal term of E|a(theta)^T f|^2 over uniform departure angles, i.e. 1.
  double kappa_bf = 1.0;
  if (nm.kappa_bf_monte_carlo) {
    const double theta_ai = aod_at_ap(s.ap, s.ris.at(ris_index).position);
    const ComplexVector f = ap_beamformer(s.ap, theta_ai, s.wavelength_m);
    RngStream rng = RngStream::derive(s.rng_seed, "kappa-mc", static_cast<std::uint64_t>(ris_index));
    double acc = 0.0;
    for (int k = 0; k < nm.kappa_bf_draws; ++k) {
      const double theta = rng.uniform01() * kPi;
      const ComplexVector a = ap_steering(s.ap, theta, s.wavelength_m);
      acc += std::norm(a.transpose() * f);
    }
    kappa_bf = acc / nm.kappa_bf_draws;
  }

  const double sigma_v_sq =
      s.ap.transmit_power_mw * nm.num_nlos * sigma_l_sq * kappa_bf;
  return nm.noise_power_mw + sigma_v_sq;
}

double los_leakage(const Scenario& s, int ris_index) {
  const double theta_ai = aod_at_ap(s.ap, s.ris.at(ris_index).position);
  const double theta_au = aod_at_ap(s.ap, s.ue_position);
  const ComplexVector f = ap_beamformer(s.ap, theta_ai, s.wavelength_m);
  const ComplexVector a = ap_steering(s.ap, theta_au, s.wavelength_m);
  return std::abs((a.transpose() * f)(0, 0));
}

std::complex<double> mean_signal(const Scenario& s, int ris_index, const ComplexVector& g) {
  const RisPanel& panel = s.ris.at(ris_index);
  if (g.size() != panel.element_count())
    throw DimensionMismatch("phase vector has " + std::to_string(g.size()) + " entries, panel has " +
                            std::to_string(panel.element_count()) + " elements");
  const PathAngles to_ue = angles_from_panel(panel, s.ue_position);
  const PathAngles to_ap = angles_from_panel(panel, s.ap.position);
  const PathGain gain =
      vlos_gain(panel, to_ap, to_ue, s.ap.antenna_gain, s.noise.ue_gain, s.wavelength_m);
  if (gain.blocked) return {0.0, 0.0};
  const ComplexVector cascade = cascade_steering(s, ris_index);
  const std::complex<double> inner = (cascade.transpose() * g)(0, 0);
  return std::sqrt(s.ap.num_antennas * s.ap.transmit_power_mw) * gain.value() * inner;
}

}  // namespace rispeb

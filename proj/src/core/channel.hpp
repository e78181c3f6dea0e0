#pragma once

#include <Eigen/Core>
#include <complex>

#include "core/geometry.hpp"
#include "core/scenario.hpp"

namespace rispeb {

using ComplexVector = Eigen::VectorXcd;

// ULA steering vector: entry n = exp(j 2 pi alpha_n cos(theta)) with
// alpha_n = ((N_A + 1)/2 - n) * spacing / wavelength, n = 1..N_A.
ComplexVector ap_steering(const ApConfig& ap, double theta, double wavelength_m);

// Planar-panel steering vector for a wave at (elevation, azimuth); entries
// follow the panel's row-major element enumeration.
ComplexVector ris_steering(const RisPanel& panel, double elevation, double azimuth,
                           double wavelength_m);

// Front-side-only radiation pattern: 1 for elevation in [0, pi/2], else 0.
double radiation_pattern(double elevation);

// Cascaded per-element path gain of the reflective path. Blocked geometry
// (either side behind the panel) yields magnitude 0 with the flag set.
struct PathGain {
  double magnitude = 0.0;
  double phase = 0.0;  // carrier phase 2 pi (d_AI + d_IU) / wavelength
  bool blocked = false;

  std::complex<double> value() const {
    return std::polar(magnitude, phase);
  }
};

PathGain vlos_gain(const RisPanel& panel, const PathAngles& ap_side, const PathAngles& ue_side,
                   double ap_gain, double ue_gain, double wavelength_m);

// Directional beamformer pointed at theta_ai: conj(a_A(theta_ai)) / sqrt(N_A).
ComplexVector ap_beamformer(const ApConfig& ap, double theta_ai, double wavelength_m);

// Element-wise product a_I(UE side) .* a_I(AP side) for the given panel.
ComplexVector cascade_steering(const Scenario& s, int ris_index);

// Integrated interference-plus-noise power sigma_eta^2 (mW) for measurements
// through the given panel: receiver noise plus the beamformed NLoS aggregate.
// The beamforming factor is 1 by default (deterministic diagonal term) or a
// seeded Monte-Carlo estimate when the scenario requests it.
double noise_plus_interference_mw(const Scenario& s, int ris_index);

// |a_A(theta_AU)^T f_i|: residual LoS leakage through the beamformer, for
// checking that the LoS interference term is negligible.
double los_leakage(const Scenario& s, int ris_index);

// Noiseless mean of one measurement through panel i for phase vector g.
std::complex<double> mean_signal(const Scenario& s, int ris_index, const ComplexVector& g);

}  // namespace rispeb

#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

namespace rispeb {

// All quantities are stored in linear units: milliwatts, meters, radians,
// dimensionless gains. dB / dBm appear only in the config-file schema and
// are converted on load. The one exception is the NLoS suppression, which
// is a named dB ratio and is kept as such.

struct ApConfig {
  Eigen::Vector3d position{0, 0, 0};
  Eigen::Vector3d array_axis{0, 1, 0};  // ULA direction, unit norm
  int num_antennas = 16;
  double antenna_spacing_m = 0.0054;
  double antenna_gain = 1.0;      // linear
  double transmit_power_mw = 1.0; // linear
};

struct RisPanel {
  Eigen::Vector3d position{0, 0, 0};
  Eigen::Vector3d e_x{1, 0, 0};  // horizontal direction of the panel
  Eigen::Vector3d e_y{0, 1, 0};  // vertical direction
  Eigen::Vector3d e_z{0, 0, 1};  // normal direction
  int rows = 8;                  // N_I
  int cols = 8;                  // M_I
  double dx_m = 0.01;            // element length (along e_x)
  double dy_m = 0.01;            // element width (along e_y)
  double amplitude_gain = 1.0;   // in (0, 1]

  int element_count() const { return rows * cols; }

  // Elements are enumerated row-major: element l (0-based) sits in
  // column m = l % cols and row n = l / cols. Steering vectors, derivative
  // vectors and phase vectors all share this bijection.
  double col_offset(int l) const { return (static_cast<double>(l % cols) - (cols - 1) / 2.0) * dx_m; }
  double row_offset(int l) const { return (static_cast<double>(l / cols) - (rows - 1) / 2.0) * dy_m; }
};

struct NoiseModel {
  double noise_power_mw = 1e-9;       // sigma_w^2
  int num_nlos = 5;                   // L
  double nlos_suppression_db = 40.0;  // LoS-to-NLoS variance ratio
  double ue_gain = 1.0;               // linear
  bool kappa_bf_monte_carlo = false;  // estimate the beamformed NLoS factor by MC
  int kappa_bf_draws = 10000;
};

struct Scenario {
  ApConfig ap;
  std::vector<RisPanel> ris;
  Eigen::Vector3d ue_position{0, 0, 0};
  double wavelength_m = 0.0108;
  NoiseModel noise;
  int num_measurements = 50;  // N
  std::uint64_t rng_seed = 1;

  int num_panels() const { return static_cast<int>(ris.size()); }

  // True when the UE is not strictly in front of any panel; such a scene
  // carries no usable reflective path.
  bool degenerate() const;
};

// The reference indoor configuration: 8x5x4 m room, 16-antenna ULA AP at
// [5,1,0], single-antenna UE at [4,4,1], two 8x8 panels on opposite walls,
// 28 GHz carrier (wavelength 0.0108 m), 5 dBm transmit power, -90 dBm noise,
// five NLoS paths suppressed by 40 dB, N = 50 measurement slots.
Scenario default_scenario();

// Throws InvariantViolation naming the offending field.
void validate_scenario(const Scenario& s);

// Structured-text config ingestion. See README for the frozen schema.
Scenario parse_scenario_text(const std::string& text);
Scenario load_scenario(const std::string& path);

// Canonical serialization; load(save(s)) reproduces every floating field
// bit-identically (linear-unit keys are emitted with 17 significant digits).
std::string save_scenario(const Scenario& s);
void save_scenario_file(const Scenario& s, const std::string& path);

// Stable 16-hex-digit digest of the canonical serialization.
std::string scenario_fingerprint(const Scenario& s);

}  // namespace rispeb

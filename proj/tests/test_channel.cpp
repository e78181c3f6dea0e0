#include <doctest.h>

#include <cmath>
#include <complex>

#include "core/channel.hpp"
#include "core/errors.hpp"
#include "core/rng.hpp"
#include "core/units.hpp"

using namespace rispeb;

namespace {

const std::complex<double> kJ{0.0, 1.0};

Scenario reference() { return default_scenario(); }

}  // namespace

TEST_CASE("ap steering basics") {
  ApConfig ap;
  ap.num_antennas = 16;
  ap.antenna_spacing_m = 0.0054;
  const double lam = 0.0108;

  // Broadside: cos(theta) = 0 makes every entry 1.
  const ComplexVector broadside = ap_steering(ap, kPi / 2, lam);
  for (int n = 0; n < 16; ++n) CHECK(std::abs(broadside(n) - 1.0) < 1e-12);

  // Two antennas at half-wavelength spacing, endfire.
  ApConfig two;
  two.num_antennas = 2;
  two.antenna_spacing_m = lam / 2;
  const ComplexVector endfire = ap_steering(two, 0.0, lam);
  CHECK(std::abs(endfire(0) - kJ) < 1e-12);
  CHECK(std::abs(endfire(1) + kJ) < 1e-12);

  // Conjugate symmetry about the array center, any angle.
  const ComplexVector a = ap_steering(ap, 0.7, lam);
  for (int n = 0; n < 16; ++n) {
    CHECK(std::abs(a(n) - std::conj(a(15 - n))) < 1e-12);
    CHECK(std::abs(std::abs(a(n)) - 1.0) < 1e-12);
  }
}

TEST_CASE("ris steering basics") {
  RisPanel panel;
  panel.rows = 1;
  panel.cols = 2;
  const double lam = 0.0108;
  panel.dx_m = lam / 2;
  panel.dy_m = lam / 2;

  // Boresight: sin(elevation) = 0 makes every entry 1.
  RisPanel big;
  big.rows = 4;
  big.cols = 4;
  const ComplexVector bore = ris_steering(big, 0.0, 1.2, lam);
  for (int l = 0; l < 16; ++l) CHECK(std::abs(bore(l) - 1.0) < 1e-12);

  // 1x2 panel, grazing wave along e_x.
  const ComplexVector pair = ris_steering(panel, kPi / 2, kTwoPi, lam);
  CHECK(std::abs(pair(0) - std::polar(1.0, kPi / 2)) < 1e-12);
  CHECK(std::abs(pair(1) - std::polar(1.0, -kPi / 2)) < 1e-12);

  // Reversing the element order conjugates the vector.
  const ComplexVector v = ris_steering(big, 0.9, 2.3, lam);
  const int count = big.element_count();
  for (int l = 0; l < count; ++l) {
    CHECK(std::abs(v(l) - std::conj(v(count - 1 - l))) < 1e-12);
    CHECK(std::abs(std::abs(v(l)) - 1.0) < 1e-12);
  }
}

TEST_CASE("reflective path gain") {
  RisPanel panel;
  panel.dx_m = 0.01;
  panel.dy_m = 0.01;
  panel.amplitude_gain = 1.0;
  PathAngles front{0.5, 1.0, 1.0};
  PathAngles behind{2.0, 1.0, 1.0};

  // Hand value: 1e-4 / (4 pi).
  const PathGain g = vlos_gain(panel, front, front, 1.0, 1.0, 0.0108);
  CHECK_FALSE(g.blocked);
  CHECK(g.magnitude == doctest::Approx(7.9577471545947674e-6).epsilon(1e-12));
  CHECK(g.phase == doctest::Approx(kTwoPi * 2.0 / 0.0108));

  // Receiver behind the panel: blocked, zero magnitude.
  const PathGain blocked = vlos_gain(panel, front, behind, 1.0, 1.0, 0.0108);
  CHECK(blocked.blocked);
  CHECK(blocked.magnitude == 0.0);

  // Doubling one leg distance halves the magnitude.
  PathAngles far = front;
  far.distance = 2.0;
  const PathGain half = vlos_gain(panel, front, far, 1.0, 1.0, 0.0108);
  CHECK(half.magnitude == doctest::Approx(g.magnitude / 2));

  // Swapping the two front-side legs leaves the magnitude unchanged.
  PathAngles a{0.3, 2.0, 1.7};
  PathAngles b{1.2, 4.0, 3.9};
  CHECK(vlos_gain(panel, a, b, 2.0, 3.0, 0.0108).magnitude ==
        doctest::Approx(vlos_gain(panel, b, a, 3.0, 2.0, 0.0108).magnitude).epsilon(1e-12));
}

TEST_CASE("beamformer pointing and nulls") {
  const Scenario s = reference();
  const double theta_ai = aod_at_ap(s.ap, s.ris[0].position);
  const ComplexVector f = ap_beamformer(s.ap, theta_ai, s.wavelength_m);
  CHECK(f.norm() == doctest::Approx(1.0).epsilon(1e-12));

  const ComplexVector a = ap_steering(s.ap, theta_ai, s.wavelength_m);
  const std::complex<double> coherent = (a.transpose() * f)(0, 0);
  CHECK(std::abs(coherent - std::sqrt(16.0)) < 1e-12);

  // First null of the coherent-combining kernel:
  // cos(theta) off by 1 / (N_A * spacing / wavelength).
  const double null_cos = std::cos(theta_ai) + 1.0 / (16.0 * 0.5);
  const ComplexVector a_null = ap_steering(s.ap, std::acos(null_cos), s.wavelength_m);
  CHECK(std::abs((a_null.transpose() * f)(0, 0)) < 1e-10);
}

TEST_CASE("noise plus interference") {
  Scenario s = reference();

  SUBCASE("no nlos paths") {
    s.noise.num_nlos = 0;
    CHECK(noise_plus_interference_mw(s, 0) == doctest::Approx(1e-9));
  }

  SUBCASE("infinite suppression") {
    s.noise.nlos_suppression_db = 4000.0;
    CHECK(noise_plus_interference_mw(s, 0) == doctest::Approx(1e-9));
  }

  SUBCASE("reference chain value") {
    // sigma_v^2 = P0 * L * |los gain|^2 * 10^(-suppression/10), kappa = 1.
    const double d_au_sq = 11.0;
    const double los_gain_sq = s.ap.antenna_gain * 1.0 * s.wavelength_m * s.wavelength_m /
                               (16.0 * kPi * kPi * d_au_sq);
    const double expected =
        1e-9 + s.ap.transmit_power_mw * 5.0 * los_gain_sq * db_to_linear(-40.0);
    CHECK(noise_plus_interference_mw(s, 0) == doctest::Approx(expected).epsilon(1e-12));
  }

  SUBCASE("monte carlo beamforming factor stays in the same regime") {
    const double deterministic = noise_plus_interference_mw(s, 0);
    s.noise.kappa_bf_monte_carlo = true;
    s.noise.kappa_bf_draws = 10000;
    const double mc = noise_plus_interference_mw(s, 0);
    CHECK(std::abs(deterministic - mc) / mc < 0.2);
    // Same seed, same estimate.
    CHECK(noise_plus_interference_mw(s, 0) == doctest::Approx(mc));
  }
}

TEST_CASE("los leakage reporting") {
  const Scenario s = reference();
  // The default geometry separates the UE and panel departure angles well
  // beyond the 1/N_A spatial-filtering threshold.
  CHECK(los_leakage(s, 0) < 0.25 * std::sqrt(16.0));
}

TEST_CASE("mean signal") {
  const Scenario s = reference();
  const ComplexVector cascade = cascade_steering(s, 0);
  const int count = s.ris[0].element_count();

  const RisPanel& panel = s.ris[0];
  const PathAngles to_ue = angles_from_panel(panel, s.ue_position);
  const PathAngles to_ap = angles_from_panel(panel, s.ap.position);
  const PathGain gain =
      vlos_gain(panel, to_ap, to_ue, s.ap.antenna_gain, s.noise.ue_gain, s.wavelength_m);

  SUBCASE("coherent maximum attains the brute-force bound") {
    const ComplexVector g = cascade.conjugate();
    const std::complex<double> mu = mean_signal(s, 0, g);

    // Brute-force per-element sum.
    std::complex<double> inner = 0.0;
    for (int l = 0; l < count; ++l) inner += cascade(l) * g(l);
    const double expected =
        std::sqrt(16.0 * s.ap.transmit_power_mw) * gain.magnitude * std::abs(inner);
    CHECK(std::abs(mu) == doctest::Approx(expected).epsilon(1e-12));
    const double bound =
        std::sqrt(16.0 * s.ap.transmit_power_mw) * gain.magnitude * count;
    CHECK(std::abs(mu) == doctest::Approx(bound).epsilon(1e-9));
  }

  SUBCASE("triangle bound and global phase invariance") {
    RngStream rng(123);
    const double bound =
        std::sqrt(16.0 * s.ap.transmit_power_mw) * gain.magnitude * count + 1e-15;
    for (int k = 0; k < 20; ++k) {
      ComplexVector g(count);
      for (int l = 0; l < count; ++l) g(l) = std::polar(1.0, rng.uniform01() * kTwoPi);
      const double mag = std::abs(mean_signal(s, 0, g));
      CHECK(mag <= bound);
      const std::complex<double> rot = std::polar(1.0, rng.uniform01() * kTwoPi);
      CHECK(std::abs(mean_signal(s, 0, (g * rot).eval())) == doctest::Approx(mag).epsilon(1e-12));
    }
  }

  SUBCASE("ue behind the panel yields zero") {
    Scenario behind = s;
    behind.ue_position = {-2, 4, 1};  // behind the x = 0 wall panel
    const ComplexVector g = ComplexVector::Ones(count);
    CHECK(std::abs(mean_signal(behind, 0, g)) == 0.0);
  }

  SUBCASE("dimension mismatch") {
    CHECK_THROWS_AS(mean_signal(s, 0, ComplexVector::Ones(count + 1)), DimensionMismatch);
  }
}

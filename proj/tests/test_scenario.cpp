#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>

#include "core/errors.hpp"
#include "core/scenario.hpp"
#include "core/units.hpp"

using namespace rispeb;

TEST_CASE("db conversions") {
  CHECK(dbm_to_mw(5.0) == doctest::Approx(3.16227766017).epsilon(1e-10));
  CHECK(dbm_to_mw(-90.0) == doctest::Approx(1.0e-9).epsilon(1e-12));
  CHECK(db_to_linear(8.0) == doctest::Approx(6.30957344480).epsilon(1e-10));

  // linear(x) * linear(-x) = 1
  for (double db : {-90.0, -12.5, 0.0, 3.0, 8.0, 40.0})
    CHECK(db_to_linear(db) * db_to_linear(-db) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("default scenario carries the reference configuration") {
  const Scenario s = default_scenario();
  CHECK(s.num_measurements == 50);
  CHECK(s.ap.transmit_power_mw == doctest::Approx(3.16227766017).epsilon(1e-10));
  CHECK(s.ap.antenna_gain == doctest::Approx(db_to_linear(8.0)));
  CHECK(s.ap.num_antennas == 16);
  CHECK(s.ap.antenna_spacing_m == doctest::Approx(0.0054));
  CHECK(s.wavelength_m == doctest::Approx(0.0108));
  CHECK(s.noise.noise_power_mw == doctest::Approx(1e-9));
  CHECK(s.noise.num_nlos == 5);
  CHECK(s.noise.nlos_suppression_db == doctest::Approx(40.0));
  CHECK(s.noise.ue_gain == doctest::Approx(1.0));
  REQUIRE(s.num_panels() == 2);
  CHECK(s.ris[0].position == Eigen::Vector3d(0, 3, 2));
  CHECK(s.ris[0].e_x == Eigen::Vector3d(0, -1, 0));
  CHECK(s.ris[0].e_y == Eigen::Vector3d(0, 0, 1));
  CHECK(s.ris[0].e_z == Eigen::Vector3d(1, 0, 0));
  CHECK(s.ris[1].position == Eigen::Vector3d(8, 3, 3));
  CHECK(s.ris[1].e_z == Eigen::Vector3d(-1, 0, 0));
  CHECK(s.ris[0].rows == 8);
  CHECK(s.ris[0].cols == 8);
  CHECK(s.ris[0].dx_m == doctest::Approx(0.01));
  CHECK(s.ue_position == Eigen::Vector3d(4, 4, 1));
  CHECK_FALSE(s.degenerate());
  CHECK_NOTHROW(validate_scenario(s));
}

TEST_CASE("parsing applies db conversions and defaults") {
  const Scenario a = parse_scenario_text("ap.transmit_power_dbm = 5\n");
  CHECK(a.ap.transmit_power_mw == doctest::Approx(3.16227766017).epsilon(1e-10));

  const Scenario b = parse_scenario_text("noise_power_dbm = -90\n");
  CHECK(b.noise.noise_power_mw == doctest::Approx(1.0e-9).epsilon(1e-12));

  // Empty file: the full default scenario.
  const Scenario c = parse_scenario_text("");
  CHECK(c.num_measurements == 50);
  CHECK(c.num_panels() == 2);
  CHECK(c.ris[1].position == Eigen::Vector3d(8, 3, 3));

  // Comments and blank lines are ignored.
  const Scenario d = parse_scenario_text("# comment only\n\nmeasurements = 10 # trailing\n");
  CHECK(d.num_measurements == 10);
}

TEST_CASE("specifying any panel replaces the default panel set") {
  const std::string text =
      "ris[0].position_m = [0, 3, 2]\n"
      "ris[0].e_x = [0, -1, 0]\n"
      "ris[0].e_y = [0, 0, 1]\n"
      "ris[0].e_z = [1, 0, 0]\n"
      "ris[0].rows = 4\n"
      "ris[0].cols = 5\n";
  const Scenario s = parse_scenario_text(text);
  CHECK(s.num_panels() == 1);
  CHECK(s.ris[0].rows == 4);
  CHECK(s.ris[0].element_count() == 20);
}

TEST_CASE("parse and invariant errors are typed and named") {
  CHECK_THROWS_AS(parse_scenario_text("nonsense\n"), ParseError);
  CHECK_THROWS_AS(parse_scenario_text("unknown_key = 3\n"), ParseError);
  CHECK_THROWS_AS(parse_scenario_text("measurements = abc\n"), ParseError);
  CHECK_THROWS_AS(parse_scenario_text("ue.position_m = [1, 2]\n"), ParseError);
  CHECK_THROWS_AS(parse_scenario_text("ris[0].sides = 8\n"), ParseError);

  CHECK_THROWS_AS(parse_scenario_text("ap.array_axis = [0, 2, 0]\n"), InvariantViolation);
  CHECK_THROWS_AS(parse_scenario_text("ap.antenna_spacing_m = 0\n"), InvariantViolation);
  CHECK_THROWS_AS(parse_scenario_text("measurements = 0\n"), InvariantViolation);
  CHECK_THROWS_AS(parse_scenario_text("ris[0].amplitude_gain = 1.5\n"), InvariantViolation);
  CHECK_THROWS_AS(parse_scenario_text("ap.transmit_power_dbm = 5\nap.transmit_power_mw = -1\n"),
                  InvariantViolation);

  try {
    parse_scenario_text("ris[0].e_x = [1, 0, 0]\nris[0].e_y = [1, 0, 0]\n");
    FAIL("expected an invariant violation");
  } catch (const InvariantViolation& e) {
    CHECK(std::string(e.what()).find("ris[0]") != std::string::npos);
  }
}

TEST_CASE("round trip reproduces every floating field") {
  Scenario s = default_scenario();
  s.ap.transmit_power_mw = dbm_to_mw(-7.3);
  s.noise.noise_power_mw = dbm_to_mw(-88.21);
  s.noise.ue_gain = db_to_linear(1.7);
  s.ue_position = {3.1415926535897931, 4.25, 0.97};
  s.rng_seed = 0xDEADBEEFCAFEF00DULL;
  s.noise.kappa_bf_monte_carlo = true;

  const Scenario r = parse_scenario_text(save_scenario(s));
  CHECK(r.ap.transmit_power_mw == s.ap.transmit_power_mw);
  CHECK(r.noise.noise_power_mw == s.noise.noise_power_mw);
  CHECK(r.noise.ue_gain == s.noise.ue_gain);
  CHECK(r.ue_position == s.ue_position);
  CHECK(r.wavelength_m == s.wavelength_m);
  CHECK(r.rng_seed == s.rng_seed);
  CHECK(r.noise.kappa_bf_monte_carlo == s.noise.kappa_bf_monte_carlo);
  CHECK(r.ap.antenna_spacing_m == s.ap.antenna_spacing_m);
  for (int i = 0; i < s.num_panels(); ++i) {
    CHECK(r.ris[i].position == s.ris[i].position);
    CHECK(r.ris[i].e_x == s.ris[i].e_x);
    CHECK(r.ris[i].dx_m == s.ris[i].dx_m);
    CHECK(r.ris[i].amplitude_gain == s.ris[i].amplitude_gain);
  }
  CHECK(save_scenario(r) == save_scenario(s));
  CHECK(scenario_fingerprint(r) == scenario_fingerprint(s));
}

TEST_CASE("file io round trip") {
  const Scenario s = default_scenario();
  const std::string path = "test_scenario_roundtrip.cfg";
  save_scenario_file(s, path);
  const Scenario r = load_scenario(path);
  CHECK(save_scenario(r) == save_scenario(s));
  std::remove(path.c_str());

  CHECK_THROWS_AS(load_scenario("does_not_exist.cfg"), IoError);
}

TEST_CASE("degenerate flag when the UE is behind every panel") {
  Scenario s = default_scenario();
  s.ris.resize(1);
  s.ue_position = {-1, 3, 2};  // behind the x = 0 wall panel
  CHECK(s.degenerate());
}

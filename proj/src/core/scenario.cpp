#include "core/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "core/errors.hpp"
#include "core/rng.hpp"
#include "core/units.hpp"

namespace rispeb {

namespace {

constexpr double kUnitTol = 1e-12;
constexpr double kTriadTol = 1e-10;

bool in_front_of(const RisPanel& p, const Eigen::Vector3d& point) {
  return (point - p.position).dot(p.e_z) > 0.0;
}

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt_vec(const Eigen::Vector3d& v) {
  return "[" + fmt17(v.x()) + ", " + fmt17(v.y()) + ", " + fmt17(v.z()) + "]";
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

bool Scenario::degenerate() const {
  return std::none_of(ris.begin(), ris.end(),
                      [this](const RisPanel& p) { return in_front_of(p, ue_position); });
}

Scenario default_scenario() {
  Scenario s;
  s.ap.position = {5, 1, 0};
  s.ap.array_axis = {0, 1, 0};
  s.ap.num_antennas = 16;
  s.ap.antenna_spacing_m = 0.0054;
  s.ap.antenna_gain = db_to_linear(8.0);       // 8 dBi
  s.ap.transmit_power_mw = dbm_to_mw(5.0);     // 5 dBm

  RisPanel r1;
  r1.position = {0, 3, 2};
  r1.e_x = {0, -1, 0};
  r1.e_y = {0, 0, 1};
  r1.e_z = {1, 0, 0};
  RisPanel r2 = r1;
  r2.position = {8, 3, 3};
  r2.e_z = {-1, 0, 0};
  s.ris = {r1, r2};

  s.ue_position = {4, 4, 1};
  s.wavelength_m = 0.0108;
  s.noise = NoiseModel{};  // -90 dBm, 5 NLoS paths at 40 dB, 0 dBi UE
  s.num_measurements = 50;
  s.rng_seed = 1;
  return s;
}

void validate_scenario(const Scenario& s) {
  const auto check = [](bool ok, const std::string& field, const std::string& reason) {
    if (!ok) throw InvariantViolation(field, reason);
  };

  check(std::abs(s.ap.array_axis.norm() - 1.0) <= kUnitTol, "ap.array_axis", "must be unit norm");
  check(s.ap.num_antennas >= 1, "ap.num_antennas", "must be >= 1");
  check(s.ap.antenna_spacing_m > 0.0, "ap.antenna_spacing_m", "must be > 0");
  check(s.ap.antenna_gain > 0.0, "ap.gain", "must be > 0");
  check(s.ap.transmit_power_mw > 0.0, "ap.transmit_power", "must be > 0");

  check(!s.ris.empty(), "ris", "at least one panel is required");
  for (std::size_t k = 0; k < s.ris.size(); ++k) {
    const RisPanel& p = s.ris[k];
    const std::string name = "ris[" + std::to_string(k) + "]";
    check(std::abs(p.e_x.norm() - 1.0) <= kTriadTol, name + ".e_x", "must be unit norm");
    check(std::abs(p.e_y.norm() - 1.0) <= kTriadTol, name + ".e_y", "must be unit norm");
    check(std::abs(p.e_z.norm() - 1.0) <= kTriadTol, name + ".e_z", "must be unit norm");
    check(std::abs(p.e_x.dot(p.e_y)) <= kTriadTol, name, "e_x and e_y must be orthogonal");
    check(std::abs(p.e_x.dot(p.e_z)) <= kTriadTol, name, "e_x and e_z must be orthogonal");
    check(std::abs(p.e_y.dot(p.e_z)) <= kTriadTol, name, "e_y and e_z must be orthogonal");
    // Either handedness is accepted: the reference RIS 1 triad is
    // left-handed, and no formula depends on orientation sign.
    const double cross = (p.e_x.cross(p.e_y) - p.e_z).norm();
    const double anti = (p.e_x.cross(p.e_y) + p.e_z).norm();
    check(std::min(cross, anti) <= kTriadTol, name, "triad must satisfy e_x x e_y = +/- e_z");
    check(p.rows >= 1, name + ".rows", "must be >= 1");
    check(p.cols >= 1, name + ".cols", "must be >= 1");
    check(p.dx_m > 0.0, name + ".dx_m", "must be > 0");
    check(p.dy_m > 0.0, name + ".dy_m", "must be > 0");
    check(p.amplitude_gain > 0.0 && p.amplitude_gain <= 1.0, name + ".amplitude_gain",
          "must be in (0, 1]");
  }

  check(s.noise.noise_power_mw > 0.0, "noise_power", "must be > 0");
  check(s.noise.num_nlos >= 0, "nlos.count", "must be >= 0");
  check(std::isfinite(s.noise.nlos_suppression_db), "nlos.suppression_db", "must be finite");
  check(s.noise.ue_gain > 0.0, "ue.gain", "must be > 0");
  check(s.noise.kappa_bf_draws > 0, "nlos.kappa_bf_draws", "must be > 0");
  check(s.wavelength_m > 0.0, "wavelength_m", "must be > 0");
  check(s.num_measurements >= 1, "measurements", "must be >= 1");
}

namespace {

struct Parser {
  Scenario scenario = default_scenario();
  bool panels_touched = false;

  void ensure_panel(std::size_t k) {
    if (!panels_touched) {
      // The first ris[...] key replaces the default panel set.
      scenario.ris.clear();
      panels_touched = true;
    }
    if (scenario.ris.size() <= k) scenario.ris.resize(k + 1, RisPanel{});
  }

  static double to_double(const std::string& v, int line) {
    std::size_t pos = 0;
    double d;
    try {
      d = std::stod(v, &pos);
    } catch (const std::exception&) {
      throw ParseError("expected a number, got '" + v + "'", line);
    }
    if (pos != v.size()) throw ParseError("trailing characters after number '" + v + "'", line);
    return d;
  }

  static long long to_int(const std::string& v, int line) {
    std::size_t pos = 0;
    long long i;
    try {
      i = std::stoll(v, &pos);
    } catch (const std::exception&) {
      throw ParseError("expected an integer, got '" + v + "'", line);
    }
    if (pos != v.size()) throw ParseError("trailing characters after integer '" + v + "'", line);
    return i;
  }

  static std::uint64_t to_u64(const std::string& v, int line) {
    std::size_t pos = 0;
    unsigned long long i;
    try {
      i = std::stoull(v, &pos);
    } catch (const std::exception&) {
      throw ParseError("expected an unsigned integer, got '" + v + "'", line);
    }
    if (pos != v.size()) throw ParseError("trailing characters after integer '" + v + "'", line);
    return i;
  }

  static bool to_bool(const std::string& v, int line) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw ParseError("expected true/false, got '" + v + "'", line);
  }

  static Eigen::Vector3d to_vec(const std::string& v, int line) {
    if (v.size() < 2 || v.front() != '[' || v.back() != ']')
      throw ParseError("expected a 3-vector like [a, b, c], got '" + v + "'", line);
    std::string inner = v.substr(1, v.size() - 2);
    std::array<double, 3> out{};
    int count = 0;
    std::stringstream ss(inner);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (count >= 3) throw ParseError("3-vector has more than three components", line);
      out[count++] = to_double(trim(item), line);
    }
    if (count != 3) throw ParseError("3-vector needs exactly three components", line);
    return {out[0], out[1], out[2]};
  }

  void apply(const std::string& key, const std::string& value, int line) {
    Scenario& s = scenario;
    // Scalar / top-level keys.
    if (key == "wavelength_m") { s.wavelength_m = to_double(value, line); return; }
    if (key == "measurements") { s.num_measurements = static_cast<int>(to_int(value, line)); return; }
    if (key == "seed") { s.rng_seed = to_u64(value, line); return; }
    if (key == "noise_power_dbm") { s.noise.noise_power_mw = dbm_to_mw(to_double(value, line)); return; }
    if (key == "noise_power_mw") { s.noise.noise_power_mw = to_double(value, line); return; }
    if (key == "nlos.count") { s.noise.num_nlos = static_cast<int>(to_int(value, line)); return; }
    if (key == "nlos.suppression_db") { s.noise.nlos_suppression_db = to_double(value, line); return; }
    if (key == "nlos.kappa_bf_mc") { s.noise.kappa_bf_monte_carlo = to_bool(value, line); return; }
    if (key == "nlos.kappa_bf_draws") { s.noise.kappa_bf_draws = static_cast<int>(to_int(value, line)); return; }
    if (key == "ue.position_m") { s.ue_position = to_vec(value, line); return; }
    if (key == "ue.gain_dbi") { s.noise.ue_gain = db_to_linear(to_double(value, line)); return; }
    if (key == "ue.gain") { s.noise.ue_gain = to_double(value, line); return; }
    if (key == "ap.position_m") { s.ap.position = to_vec(value, line); return; }
    if (key == "ap.array_axis") { s.ap.array_axis = to_vec(value, line); return; }
    if (key == "ap.num_antennas") { s.ap.num_antennas = static_cast<int>(to_int(value, line)); return; }
    if (key == "ap.antenna_spacing_m") { s.ap.antenna_spacing_m = to_double(value, line); return; }
    if (key == "ap.gain_dbi") { s.ap.antenna_gain = db_to_linear(to_double(value, line)); return; }
    if (key == "ap.gain") { s.ap.antenna_gain = to_double(value, line); return; }
    if (key == "ap.transmit_power_dbm") { s.ap.transmit_power_mw = dbm_to_mw(to_double(value, line)); return; }
    if (key == "ap.transmit_power_mw") { s.ap.transmit_power_mw = to_double(value, line); return; }

    // ris[k].field keys.
    if (key.rfind("ris[", 0) == 0) {
      std::size_t close = key.find(']');
      if (close == std::string::npos || close + 1 >= key.size() || key[close + 1] != '.')
        throw ParseError("malformed panel key '" + key + "'", line);
      std::size_t idx;
      try {
        idx = static_cast<std::size_t>(std::stoul(key.substr(4, close - 4)));
      } catch (const std::exception&) {
        throw ParseError("malformed panel index in '" + key + "'", line);
      }
      if (idx > 255) throw ParseError("panel index out of range in '" + key + "'", line);
      ensure_panel(idx);
      RisPanel& p = scenario.ris[idx];
      const std::string f = key.substr(close + 2);
      if (f == "position_m") { p.position = to_vec(value, line); return; }
      if (f == "e_x") { p.e_x = to_vec(value, line); return; }
      if (f == "e_y") { p.e_y = to_vec(value, line); return; }
      if (f == "e_z") { p.e_z = to_vec(value, line); return; }
      if (f == "rows") { p.rows = static_cast<int>(to_int(value, line)); return; }
      if (f == "cols") { p.cols = static_cast<int>(to_int(value, line)); return; }
      if (f == "dx_m") { p.dx_m = to_double(value, line); return; }
      if (f == "dy_m") { p.dy_m = to_double(value, line); return; }
      if (f == "amplitude_gain") { p.amplitude_gain = to_double(value, line); return; }
      throw ParseError("unknown panel field '" + f + "'", line);
    }

    throw ParseError("unknown key '" + key + "'", line);
  }
};

}  // namespace

Scenario parse_scenario_text(const std::string& text) {
  Parser parser;
  std::stringstream ss(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(ss, raw)) {
    ++line_no;
    std::string line = raw;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("expected 'key = value'", line_no);
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ParseError("empty key", line_no);
    if (value.empty()) throw ParseError("empty value for key '" + key + "'", line_no);
    parser.apply(key, value, line_no);
  }
  validate_scenario(parser.scenario);
  return parser.scenario;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open scenario file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scenario_text(buf.str());
}

std::string save_scenario(const Scenario& s) {
  // Linear-unit keys are used so that reloading reproduces bit-identical
  // values; the dB forms remain available for hand-written configs.
  std::ostringstream out;
  out << "wavelength_m = " << fmt17(s.wavelength_m) << "\n";
  out << "measurements = " << s.num_measurements << "\n";
  out << "seed = " << s.rng_seed << "\n";
  out << "noise_power_mw = " << fmt17(s.noise.noise_power_mw) << "\n";
  out << "nlos.count = " << s.noise.num_nlos << "\n";
  out << "nlos.suppression_db = " << fmt17(s.noise.nlos_suppression_db) << "\n";
  out << "nlos.kappa_bf_mc = " << (s.noise.kappa_bf_monte_carlo ? "true" : "false") << "\n";
  out << "nlos.kappa_bf_draws = " << s.noise.kappa_bf_draws << "\n";
  out << "ue.position_m = " << fmt_vec(s.ue_position) << "\n";
  out << "ue.gain = " << fmt17(s.noise.ue_gain) << "\n";
  out << "ap.position_m = " << fmt_vec(s.ap.position) << "\n";
  out << "ap.array_axis = " << fmt_vec(s.ap.array_axis) << "\n";
  out << "ap.num_antennas = " << s.ap.num_antennas << "\n";
  out << "ap.antenna_spacing_m = " << fmt17(s.ap.antenna_spacing_m) << "\n";
  out << "ap.gain = " << fmt17(s.ap.antenna_gain) << "\n";
  out << "ap.transmit_power_mw = " << fmt17(s.ap.transmit_power_mw) << "\n";
  for (std::size_t k = 0; k < s.ris.size(); ++k) {
    const RisPanel& p = s.ris[k];
    const std::string pre = "ris[" + std::to_string(k) + "].";
    out << pre << "position_m = " << fmt_vec(p.position) << "\n";
    out << pre << "e_x = " << fmt_vec(p.e_x) << "\n";
    out << pre << "e_y = " << fmt_vec(p.e_y) << "\n";
    out << pre << "e_z = " << fmt_vec(p.e_z) << "\n";
    out << pre << "rows = " << p.rows << "\n";
    out << pre << "cols = " << p.cols << "\n";
    out << pre << "dx_m = " << fmt17(p.dx_m) << "\n";
    out << pre << "dy_m = " << fmt17(p.dy_m) << "\n";
    out << pre << "amplitude_gain = " << fmt17(p.amplitude_gain) << "\n";
  }
  return out.str();
}

void save_scenario_file(const Scenario& s, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write scenario file '" + path + "'");
  out << save_scenario(s);
  if (!out) throw IoError("failed writing scenario file '" + path + "'");
}

std::string scenario_fingerprint(const Scenario& s) {
  const std::uint64_t h = fnv1a64(save_scenario(s));
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace rispeb

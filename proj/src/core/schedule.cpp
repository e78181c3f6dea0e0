#include "core/schedule.hpp"

#include <cmath>
#include <complex>

#include "core/channel.hpp"
#include "core/errors.hpp"
#include "core/units.hpp"

namespace rispeb {

long PhaseSchedule::total_rows() const {
  long rows = 0;
  for (const auto& b : blocks) rows += static_cast<long>(b.rows());
  return rows;
}

bool PhaseSchedule::unit_modulus(double tol) const {
  for (const auto& b : blocks)
    for (Eigen::Index c = 0; c < b.cols(); ++c)
      for (Eigen::Index r = 0; r < b.rows(); ++r)
        if (std::abs(std::abs(b(r, c)) - 1.0) > tol) return false;
  return true;
}

std::vector<Eigen::MatrixXd> PhaseSchedule::angles() const {
  std::vector<Eigen::MatrixXd> out;
  out.reserve(blocks.size());
  for (const auto& b : blocks) out.push_back(b.array().arg().matrix());
  return out;
}

PhaseSchedule PhaseSchedule::from_angles(const std::vector<Eigen::MatrixXd>& angles) {
  PhaseSchedule s;
  s.blocks.reserve(angles.size());
  for (const auto& a : angles) {
    Eigen::MatrixXcd b(a.rows(), a.cols());
    for (Eigen::Index c = 0; c < a.cols(); ++c)
      for (Eigen::Index r = 0; r < a.rows(); ++r) b(r, c) = std::polar(1.0, a(r, c));
    s.blocks.push_back(std::move(b));
  }
  return s;
}

PhaseSchedule PhaseSchedule::random(const Scenario& s, RngStream& rng) {
  PhaseSchedule out;
  out.blocks.reserve(s.ris.size());
  for (const auto& panel : s.ris) {
    Eigen::MatrixXcd b(panel.element_count(), s.num_measurements);
    for (Eigen::Index c = 0; c < b.cols(); ++c)
      for (Eigen::Index r = 0; r < b.rows(); ++r)
        b(r, c) = std::polar(1.0, rng.uniform01() * kTwoPi);
    out.blocks.push_back(std::move(b));
  }
  return out;
}

PhaseSchedule PhaseSchedule::coherent_max(const Scenario& s) {
  PhaseSchedule out;
  out.blocks.reserve(s.ris.size());
  for (int i = 0; i < s.num_panels(); ++i) {
    const Eigen::VectorXcd g = cascade_steering(s, i).conjugate();
    out.blocks.push_back(g.replicate(1, s.num_measurements));
  }
  return out;
}

void check_schedule_shape(const Scenario& s, const PhaseSchedule& schedule) {
  if (schedule.num_blocks() != s.num_panels())
    throw DimensionMismatch("schedule has " + std::to_string(schedule.num_blocks()) +
                            " blocks for " + std::to_string(s.num_panels()) + " panels");
  for (int i = 0; i < s.num_panels(); ++i) {
    const auto& b = schedule.blocks[i];
    if (b.rows() != s.ris[i].element_count())
      throw DimensionMismatch("block " + std::to_string(i) + " has " + std::to_string(b.rows()) +
                              " rows, panel has " + std::to_string(s.ris[i].element_count()) +
                              " elements");
    if (b.cols() != s.num_measurements)
      throw DimensionMismatch("block " + std::to_string(i) + " has " + std::to_string(b.cols()) +
                              " slots, scenario has " + std::to_string(s.num_measurements));
  }
}

}  // namespace rispeb

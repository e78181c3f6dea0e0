#pragma once

#include <complex>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "core/fim.hpp"
#include "core/report.hpp"
#include "core/rng.hpp"
#include "core/scenario.hpp"

namespace rispeb::gwo {

// Population search over discrete phase schedules. A wolf position is a
// D-vector of phase angles, D = N * sum_i L_i, every entry one of the
// 2^bits states {c * 2pi / 2^bits}. Positions are stored as state indices;
// the continuous hunting arithmetic runs on the decoded angles.
struct Params {
  int bits = 2;
  int wolves = 100;      // M
  int iterations = 1000; // T
};

// Quantization retraction: (2pi/B) * round(mod(B x / 2pi, B)), with a
// rounded value of B wrapped to state 0.
double t_bit(double x, int bits);
// Same map, returning the state index in [0, 2^bits).
std::int32_t t_bit_index(double x, int num_states);

// One prey-encircling component: leader - A * |C * leader - self|.
double encircle_component(double leader, double self, double A, double C);

// Flat dimension index of (panel i, slot n, element l), all 0-based.
long dimension_index(const std::vector<int>& elements_per_panel, int num_slots, int panel,
                     int slot, int element);

// Decodes a position given as angles into a schedule via the flat index map.
PhaseSchedule decode_schedule(const Scenario& s, const std::vector<double>& position);
// Error-bound fitness of an angle vector (entries need not be quantized).
double decode_fitness(const Scenario& s, const std::vector<double>& position, FimOptions opts = {});

struct Wolf {
  std::vector<std::int32_t> state;
  double fitness = 0.0;
  int id = 0;
};

struct Pack {
  std::vector<Wolf> wolves;
  int alpha = 0, beta = 0, gamma = 0;  // indices of the three best
  int t = 0;
  int T = 1;
  int num_states = 4;
};

// Cached fitness evaluation over state-index vectors for one scene.
class FitnessEvaluator {
 public:
  FitnessEvaluator(const Scenario& s, int bits, FimOptions opts = {});
  double operator()(const std::vector<std::int32_t>& state);
  long dimension() const { return dimension_; }
  const std::vector<int>& elements_per_panel() const { return elements_; }
  int num_slots() const { return slots_; }
  int num_states() const { return num_states_; }

 private:
  SceneOperator op_;
  std::vector<int> elements_;
  int slots_;
  int num_states_;
  long dimension_;
  std::vector<std::complex<double>> state_table_;
  std::vector<Eigen::MatrixXcd> block_buffers_;
  std::unordered_map<std::uint64_t, double> cache_;
};

// Selects the three leaders (smallest fitness, ties by lower id).
void select_leaders(Pack& pack);

// Candidate pair for wolf m: the group-hunt point averaged over the three
// leader-encircling moves, and the neighborhood-learning point. Draw order
// per wolf: for each dimension d, (A_1, C_1, A_2, C_2, A_3, C_3); then one
// index for the neighbor, one for the random pack member, then one rand per
// dimension for the learning step.
struct CandidatePair {
  std::vector<std::int32_t> group;
  std::vector<std::int32_t> neighbor;
};
CandidatePair propose_candidates(const Pack& pack, int m, RngStream& rng);

// Keep-if-better rule: the better candidate (ties keep the neighborhood
// one) replaces the wolf unless the wolf is strictly better than it.
Wolf greedy_update(const Wolf& current, const std::vector<std::int32_t>& group,
                   double group_fitness, const std::vector<std::int32_t>& neighbor,
                   double neighbor_fitness);

OptimizerReport optimize(const Scenario& s, const Params& params, FimOptions opts = {});

}  // namespace rispeb::gwo

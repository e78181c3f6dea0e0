#include "core/gwo_opt.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <complex>

#include "core/errors.hpp"
#include "core/units.hpp"

namespace rispeb::gwo {

namespace {

std::uint64_t hash_state(const std::vector<std::int32_t>& state) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (std::int32_t v : state) {
    for (int b = 0; b < 4; ++b) {
      h ^= static_cast<unsigned char>(v >> (8 * b));
      h *= 0x100000001B3ULL;
    }
  }
  return h;
}

// Squared state-index distance between two positions (exact integer).
// Stops early once `limit` is exceeded; the return value is then only
// guaranteed to be > limit.
std::uint64_t index_dist_sq(const std::vector<std::int32_t>& a,
                            const std::vector<std::int32_t>& b,
                            std::uint64_t limit = UINT64_MAX) {
  std::uint64_t acc = 0;
  for (std::size_t d = 0; d < a.size(); ++d) {
    const std::int64_t diff = static_cast<std::int64_t>(a[d]) - b[d];
    acc += static_cast<std::uint64_t>(diff * diff);
    if (acc > limit) return acc;
  }
  return acc;
}

}  // namespace

std::int32_t t_bit_index(double x, int num_states) {
  const double scaled = std::fmod(num_states * x / kTwoPi, static_cast<double>(num_states));
  const double wrapped = scaled < 0.0 ? scaled + num_states : scaled;
  long c = std::lround(wrapped);
  if (c >= num_states) c = 0;  // a rounded value of B collapses onto state 0
  return static_cast<std::int32_t>(c);
}

double t_bit(double x, int bits) {
  if (bits < 1) throw InvalidArgument("t_bit needs at least one bit");
  const int states = 1 << bits;
  return t_bit_index(x, states) * kTwoPi / states;
}

double encircle_component(double leader, double self, double A, double C) {
  return leader - A * std::abs(C * leader - self);
}

long dimension_index(const std::vector<int>& elements_per_panel, int num_slots, int panel,
                     int slot, int element) {
  long base = 0;
  for (int i = 0; i < panel; ++i) base += static_cast<long>(num_slots) * elements_per_panel[i];
  return base + static_cast<long>(slot) * elements_per_panel[panel] + element;
}

PhaseSchedule decode_schedule(const Scenario& s, const std::vector<double>& position) {
  std::vector<int> elements;
  elements.reserve(s.ris.size());
  long dim = 0;
  for (const auto& p : s.ris) {
    elements.push_back(p.element_count());
    dim += static_cast<long>(s.num_measurements) * p.element_count();
  }
  if (static_cast<long>(position.size()) != dim)
    throw DimensionMismatch("position has " + std::to_string(position.size()) +
                            " entries, scene needs " + std::to_string(dim));
  PhaseSchedule sched;
  sched.blocks.reserve(s.ris.size());
  for (int i = 0; i < s.num_panels(); ++i) {
    Eigen::MatrixXcd block(elements[i], s.num_measurements);
    for (int n = 0; n < s.num_measurements; ++n)
      for (int l = 0; l < elements[i]; ++l)
        block(l, n) = std::polar(1.0, position[dimension_index(elements, s.num_measurements, i, n, l)]);
    sched.blocks.push_back(std::move(block));
  }
  return sched;
}

double decode_fitness(const Scenario& s, const std::vector<double>& position, FimOptions opts) {
  return position_fim(s, decode_schedule(s, position), opts).peb;
}

FitnessEvaluator::FitnessEvaluator(const Scenario& s, int bits, FimOptions opts)
    : op_(SceneOperator::build(s, opts)), slots_(s.num_measurements) {
  if (bits < 1) throw InvalidArgument("at least one phase bit required");
  num_states_ = 1 << bits;
  dimension_ = 0;
  for (const auto& p : s.ris) {
    elements_.push_back(p.element_count());
    dimension_ += static_cast<long>(slots_) * p.element_count();
    block_buffers_.emplace_back(p.element_count(), slots_);
  }
  state_table_.resize(num_states_);
  for (int c = 0; c < num_states_; ++c)
    state_table_[c] = std::polar(1.0, c * kTwoPi / num_states_);
}

double FitnessEvaluator::operator()(const std::vector<std::int32_t>& state) {
  if (static_cast<long>(state.size()) != dimension_)
    throw DimensionMismatch("wolf position has wrong dimension");
  const std::uint64_t key = hash_state(state);
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;

  long idx = 0;
  for (std::size_t i = 0; i < block_buffers_.size(); ++i) {
    auto& block = block_buffers_[i];
    for (int n = 0; n < slots_; ++n)
      for (int l = 0; l < elements_[i]; ++l) block(l, n) = state_table_[state[idx++]];
  }
  const double fitness = op_.peb_blocks(block_buffers_);

  if (cache_.size() >= (1u << 20)) cache_.clear();
  cache_.emplace(key, fitness);
  return fitness;
}

void select_leaders(Pack& pack) {
  const auto better = [&](int a, int b) {
    const Wolf& wa = pack.wolves[a];
    const Wolf& wb = pack.wolves[b];
    if (wa.fitness != wb.fitness) return wa.fitness < wb.fitness;
    return wa.id < wb.id;
  };
  std::vector<int> order(pack.wolves.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = static_cast<int>(k);
  std::partial_sort(order.begin(), order.begin() + 3, order.end(), better);
  pack.alpha = order[0];
  pack.beta = order[1];
  pack.gamma = order[2];
}

CandidatePair propose_candidates(const Pack& pack, int m, RngStream& rng) {
  const std::size_t dim = pack.wolves[m].state.size();
  const double step = kTwoPi / pack.num_states;
  const double a_g = 2.0 - 2.0 * (static_cast<double>(pack.t) / pack.T) *
                               (static_cast<double>(pack.t) / pack.T);
  const Wolf& self = pack.wolves[m];
  const std::array<const Wolf*, 3> leaders{&pack.wolves[pack.alpha], &pack.wolves[pack.beta],
                                           &pack.wolves[pack.gamma]};

  CandidatePair out;
  out.group.resize(dim);
  for (std::size_t d = 0; d < dim; ++d) {
    const double self_angle = self.state[d] * step;
    double acc = 0.0;
    for (int k = 0; k < 3; ++k) {
      const double a_coef = (2.0 * rng.uniform01() - 1.0) * a_g;
      const double c_coef = 2.0 * rng.uniform01();
      acc += encircle_component(leaders[k]->state[d] * step, self_angle, a_coef, c_coef);
    }
    out.group[d] = t_bit_index(acc / 3.0, pack.num_states);
  }

  // Neighborhood: wolves no farther from m than the group candidate is.
  // Distances compare exactly on integer state indices.
  const std::uint64_t radius_sq = index_dist_sq(self.state, out.group);
  std::vector<int> neighborhood;
  for (std::size_t n = 0; n < pack.wolves.size(); ++n)
    if (index_dist_sq(self.state, pack.wolves[n].state, radius_sq) <= radius_sq)
      neighborhood.push_back(static_cast<int>(n));
  // The wolf itself is always within radius, so the set is never empty.
  const Wolf& picked =
      pack.wolves[neighborhood[rng.uniform_int(neighborhood.size() - 1)]];
  const Wolf& random_wolf = pack.wolves[rng.uniform_int(pack.wolves.size() - 1)];

  out.neighbor.resize(dim);
  for (std::size_t d = 0; d < dim; ++d) {
    const double moved = self.state[d] * step +
                         rng.uniform01() * (picked.state[d] - random_wolf.state[d]) * step;
    out.neighbor[d] = t_bit_index(moved, pack.num_states);
  }
  return out;
}

Wolf greedy_update(const Wolf& current, const std::vector<std::int32_t>& group,
                   double group_fitness, const std::vector<std::int32_t>& neighbor,
                   double neighbor_fitness) {
  // Ties between the candidates keep the neighborhood one.
  const std::vector<std::int32_t>* chosen = &neighbor;
  double chosen_fitness = neighbor_fitness;
  if (group_fitness < neighbor_fitness) {
    chosen = &group;
    chosen_fitness = group_fitness;
  }
  Wolf next = current;
  if (!(current.fitness < chosen_fitness)) {
    next.state = *chosen;
    next.fitness = chosen_fitness;
  }
  return next;
}

OptimizerReport optimize(const Scenario& s, const Params& params, FimOptions opts) {
  if (params.wolves < 3) throw InvalidArgument("the pack needs at least three wolves");
  if (params.iterations < 1) throw InvalidArgument("at least one iteration required");

  const auto t0 = std::chrono::steady_clock::now();
  FitnessEvaluator fitness(s, params.bits, opts);
  RngStream rng = RngStream::derive(s.rng_seed, "gwo");

  Pack pack;
  pack.T = params.iterations;
  pack.num_states = fitness.num_states();
  pack.wolves.resize(params.wolves);
  for (int m = 0; m < params.wolves; ++m) {
    Wolf& w = pack.wolves[m];
    w.id = m;
    w.state.resize(fitness.dimension());
    for (long d = 0; d < fitness.dimension(); ++d)
      w.state[d] = static_cast<std::int32_t>(rng.uniform_int(pack.num_states) % pack.num_states);
    w.fitness = fitness(w.state);
  }

  OptimizerReport report;
  report.method = "DPSOA-I-GWO";
  report.seed = s.rng_seed;
  const auto best_index = [&pack]() {
    int best = 0;
    for (std::size_t m = 1; m < pack.wolves.size(); ++m)
      if (pack.wolves[m].fitness < pack.wolves[best].fitness) best = static_cast<int>(m);
    return best;
  };
  report.objective_trace.push_back(pack.wolves[best_index()].fitness);

  std::vector<Wolf> next(pack.wolves.size());
  for (int t = 1; t <= pack.T; ++t) {
    pack.t = t;
    select_leaders(pack);
    // Candidates for every wolf are formed against the same pack snapshot;
    // updates land after the full loop, in wolf-index order.
    for (int m = 0; m < params.wolves; ++m) {
      CandidatePair cand = propose_candidates(pack, m, rng);
      const double f_group = fitness(cand.group);
      const double f_neighbor = fitness(cand.neighbor);
      next[m] = greedy_update(pack.wolves[m], cand.group, f_group, cand.neighbor, f_neighbor);
    }
    pack.wolves = next;
    report.objective_trace.push_back(pack.wolves[best_index()].fitness);
  }

  const Wolf& best = pack.wolves[best_index()];
  report.final_peb = best.fitness;
  report.iterations = pack.T;
  report.converged = true;

  std::vector<double> angles(best.state.size());
  for (std::size_t d = 0; d < angles.size(); ++d)
    angles[d] = best.state[d] * kTwoPi / pack.num_states;
  report.schedule = decode_schedule(s, angles);
  report.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

}  // namespace rispeb::gwo

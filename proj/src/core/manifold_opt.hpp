#pragma once

#include <optional>
#include <vector>

#include "core/fim.hpp"
#include "core/report.hpp"
#include "core/scenario.hpp"
#include "core/schedule.hpp"

namespace rispeb::manifold {

// Conjugate-gradient descent on the complex circle manifold (entrywise
// unit-modulus schedule matrices). The optimizer minimizes trace(F^-1), the
// squared error bound; reported objective values are its square root.
struct Params {
  double epsilon = 1e-6;        // stop when the Riemannian gradient norm drops below
  int max_iterations = 2000;
  double armijo_alpha = 1e5;    // initial step
  double armijo_beta = 0.5;     // backtracking factor
  double armijo_sigma = 0.1;    // sufficient-decrease parameter
  int armijo_max_backtracks = 200;
  bool warm_start_ebs = false;  // start from the beam-sweeping schedule
};

using Blocks = std::vector<Eigen::MatrixXcd>;

// Error bound of a schedule (meters); +inf when the FIM is uninformative.
double objective_peb(const SceneOperator& op, const PhaseSchedule& schedule);
// The quantity actually minimized: trace(F^-1) in m^2.
double objective_trace_inverse(const SceneOperator& op, const PhaseSchedule& schedule);

// Gradient of trace(F^-1) with respect to the conjugated schedule entries
// (real-gradient convention): block i = -2 w_i B_i^H A^-2 B_i G_i.
Blocks euclidean_gradient(const SceneOperator& op, const PhaseSchedule& schedule);

// Orthogonal projection onto the tangent space at `point`:
// v - Re{v .* conj(point)} .* point. Also serves as the vector transport.
Blocks tangent_project(const Blocks& v, const PhaseSchedule& point);

// Entrywise renormalization of point + step back onto the manifold.
PhaseSchedule retract(const PhaseSchedule& point, const Blocks& step);

// Frobenius norm over all blocks and Re-trace inner product.
double blocks_norm(const Blocks& v);
double blocks_inner(const Blocks& a, const Blocks& b);

// Polak-Ribiere direction update with nonnegative clamping (restart rule).
// All inputs must live in the tangent space at the new point.
struct DirectionUpdate {
  Blocks direction;
  double alpha = 0.0;
};
DirectionUpdate conjugate_direction(const Blocks& new_grad, const Blocks& transported_prev_grad,
                                    const Blocks& transported_prev_direction);

struct LineSearchResult {
  double step = 0.0;
  PhaseSchedule point;
  double objective = 0.0;  // trace(F^-1) at the new point
  int backtracks = 0;
  bool exhausted = false;  // no sufficient decrease within the backtrack budget
};

// Armijo backtracking along a tangent direction; `direction` must satisfy
// blocks_inner(direction, riemannian_grad) < 0.
LineSearchResult line_search(const SceneOperator& op, const PhaseSchedule& point,
                             double objective_at_point, const Blocks& direction,
                             const Blocks& riemannian_grad, const Params& params);

OptimizerReport optimize(const Scenario& s, const Params& params,
                         std::optional<PhaseSchedule> init = std::nullopt,
                         FimOptions fim_opts = {});

}  // namespace rispeb::manifold

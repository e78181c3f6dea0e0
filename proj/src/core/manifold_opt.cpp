#include "core/manifold_opt.hpp"

#include <chrono>
#include <cmath>
#include <limits>

#include "core/baseline.hpp"
#include "core/errors.hpp"
#include "core/units.hpp"

namespace rispeb::manifold {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Eigen::Matrix3d inverse_squared(const Eigen::Matrix3d& a) {
  const double det = sym3_determinant(a);
  const Eigen::Matrix3d inv = sym3_adjugate(a) / det;
  return inv * inv;
}

}  // namespace

double objective_peb(const SceneOperator& op, const PhaseSchedule& schedule) {
  return op.peb(schedule);
}

double objective_trace_inverse(const SceneOperator& op, const PhaseSchedule& schedule) {
  return op.trace_inverse(schedule);
}

Blocks euclidean_gradient(const SceneOperator& op, const PhaseSchedule& schedule) {
  const Eigen::Matrix3d a = op.fim(schedule);
  const PebDetail d = peb_detail(a);
  if (d.singular) throw InvariantViolation("fim", "singular at gradient evaluation point");
  const Eigen::Matrix3d a_inv_sq = inverse_squared(a);

  Blocks grad(op.terms.size());
  for (std::size_t i = 0; i < op.terms.size(); ++i) {
    const SceneTerm& term = op.terms[i];
    if (!term.active) {
      grad[i] = Eigen::MatrixXcd::Zero(schedule.blocks[i].rows(), schedule.blocks[i].cols());
      continue;
    }
    const Eigen::MatrixXcd s = term.b * schedule.blocks[i];            // 3 x N
    grad[i] = -2.0 * term.weight * (term.b.adjoint() * (a_inv_sq * s));  // L_i x N
  }
  return grad;
}

Blocks tangent_project(const Blocks& v, const PhaseSchedule& point) {
  if (v.size() != point.blocks.size()) throw DimensionMismatch("tangent projection shapes");
  Blocks out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto& p = point.blocks[i];
    const Eigen::ArrayXXd radial = (v[i].array() * p.array().conjugate()).real();
    out[i] = v[i] - (radial * p.array()).matrix();
  }
  return out;
}

PhaseSchedule retract(const PhaseSchedule& point, const Blocks& step) {
  PhaseSchedule out;
  out.blocks.resize(point.blocks.size());
  for (std::size_t i = 0; i < point.blocks.size(); ++i) {
    const Eigen::MatrixXcd z = point.blocks[i] + step[i];
    // A tangent step cannot land on the origin exactly; guard anyway.
    out.blocks[i] = z.unaryExpr([](const std::complex<double>& c) {
      const double m = std::abs(c);
      return m > 0.0 ? c / m : std::complex<double>(1.0, 0.0);
    });
  }
  return out;
}

double blocks_norm(const Blocks& v) {
  double acc = 0.0;
  for (const auto& b : v) acc += b.squaredNorm();
  return std::sqrt(acc);
}

double blocks_inner(const Blocks& a, const Blocks& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    acc += (a[i].array().conjugate() * b[i].array()).real().sum();
  return acc;
}

DirectionUpdate conjugate_direction(const Blocks& new_grad, const Blocks& transported_prev_grad,
                                    const Blocks& transported_prev_direction) {
  DirectionUpdate out;
  const double denom = blocks_inner(transported_prev_grad, transported_prev_grad);
  double alpha = 0.0;
  if (denom > 0.0) {
    double num = blocks_inner(new_grad, new_grad) - blocks_inner(new_grad, transported_prev_grad);
    alpha = num / denom;
  }
  if (alpha < 0.0) alpha = 0.0;  // restart keeps the descent property
  out.alpha = alpha;
  out.direction.resize(new_grad.size());
  for (std::size_t i = 0; i < new_grad.size(); ++i)
    out.direction[i] = -new_grad[i] + alpha * transported_prev_direction[i];
  return out;
}

LineSearchResult line_search(const SceneOperator& op, const PhaseSchedule& point,
                             double objective_at_point, const Blocks& direction,
                             const Blocks& riemannian_grad, const Params& params) {
  const double slope = blocks_inner(direction, riemannian_grad);
  LineSearchResult best;
  best.exhausted = true;
  best.point = point;
  best.objective = objective_at_point;

  Blocks scaled(direction.size());
  for (int m = 0; m <= params.armijo_max_backtracks; ++m) {
    const double beta = params.armijo_alpha * std::pow(params.armijo_beta, m);
    for (std::size_t i = 0; i < direction.size(); ++i) scaled[i] = beta * direction[i];
    PhaseSchedule candidate = retract(point, scaled);
    const double f = op.trace_inverse(candidate);
    if (f - objective_at_point <= params.armijo_sigma * beta * slope) {
      best.step = beta;
      best.point = std::move(candidate);
      best.objective = f;
      best.backtracks = m;
      best.exhausted = false;
      return best;
    }
  }
  // Backtrack budget exhausted: keep the last (smallest) step only when it
  // does not increase the objective, so the descent trace stays monotone.
  const double beta = params.armijo_alpha * std::pow(params.armijo_beta, params.armijo_max_backtracks);
  for (std::size_t i = 0; i < direction.size(); ++i) scaled[i] = beta * direction[i];
  PhaseSchedule candidate = retract(point, scaled);
  const double f = op.trace_inverse(candidate);
  if (f <= objective_at_point) {
    best.step = beta;
    best.point = std::move(candidate);
    best.objective = f;
    best.backtracks = params.armijo_max_backtracks;
  }
  return best;
}

OptimizerReport optimize(const Scenario& s, const Params& params,
                         std::optional<PhaseSchedule> init, FimOptions fim_opts) {
  const auto t0 = std::chrono::steady_clock::now();
  const SceneOperator op = SceneOperator::build(s, fim_opts);
  if (!op.any_active())
    throw DegenerateGeometry("no panel provides a usable reflective path");

  OptimizerReport report;
  report.method = "CPSOA-RM";
  report.seed = s.rng_seed;

  PhaseSchedule point;
  if (init.has_value()) {
    point = std::move(*init);
    check_schedule_shape(s, point);
  } else if (params.warm_start_ebs) {
    point = ebs_schedule(s, SweepRegion::front_hemisphere());
  } else {
    RngStream rng = RngStream::derive(s.rng_seed, "manifold-init");
    point = PhaseSchedule::random(s, rng);
  }

  double f = op.trace_inverse(point);
  report.objective_trace.push_back(std::isinf(f) ? kInf : std::sqrt(f));

  Blocks grad = tangent_project(euclidean_gradient(op, point), point);
  Blocks direction(grad.size());
  for (std::size_t i = 0; i < grad.size(); ++i) direction[i] = -grad[i];

  int t = 0;
  while (t < params.max_iterations) {
    if (blocks_norm(grad) <= params.epsilon) {
      report.converged = true;
      break;
    }
    // Guard against non-descent conjugate directions.
    if (blocks_inner(direction, grad) >= 0.0)
      for (std::size_t i = 0; i < grad.size(); ++i) direction[i] = -grad[i];

    LineSearchResult ls = line_search(op, point, f, direction, grad, params);
    if (ls.exhausted) {
      report.line_search_warning = true;
      // Without strict progress the iteration cannot go anywhere new.
      if (!(ls.objective < f)) break;
    }
    point = std::move(ls.point);
    f = ls.objective;
    report.objective_trace.push_back(std::isinf(f) ? kInf : std::sqrt(f));
    ++t;

    Blocks new_grad = tangent_project(euclidean_gradient(op, point), point);
    const Blocks prev_grad_t = tangent_project(grad, point);
    const Blocks prev_dir_t = tangent_project(direction, point);
    DirectionUpdate update = conjugate_direction(new_grad, prev_grad_t, prev_dir_t);
    grad = std::move(new_grad);
    direction = std::move(update.direction);
  }

  report.iterations = t;
  report.schedule = std::move(point);
  report.final_peb = std::isinf(f) ? kInf : std::sqrt(f);
  report.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

}  // namespace rispeb::manifold

#include "gadmp/dmp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gadmp/errors.hpp"
#include "gadmp/kernels.hpp"

namespace gadmp::dmp {

using Eigen::VectorXd;
using manifolds::Descriptor;
using manifolds::Point;

DmpGains DmpGains::from_alpha(double alpha_z, double tau) {
  DmpGains g;
  g.alpha_z = alpha_z;
  g.beta_z = alpha_z / 4.0;
  g.alpha_g = alpha_z / 2.0;
  g.alpha_x = kDefaultAlphaX;
  g.tau = tau;
  return g;
}

void DmpGains::check() const {
  const auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!positive(alpha_z) || !positive(beta_z) || !positive(alpha_x) || !positive(alpha_g) ||
      !positive(tau)) {
    fail(ErrorCode::InvalidArgument, "gains must be finite and positive");
  }
}

BasisSet build_basis(int n, double alpha_x) {
  if (n < 2) fail(ErrorCode::InvalidN, "need at least 2 basis functions, got " + std::to_string(n));
  if (!(alpha_x > 0.0)) fail(ErrorCode::InvalidArgument, "alpha_x must be positive");
  BasisSet b;
  b.centers.resize(n);
  b.widths.resize(n);
  for (int i = 0; i < n; ++i) b.centers[i] = std::exp(-alpha_x * i / (n - 1));
  for (int i = 0; i + 1 < n; ++i) {
    const double gap = b.centers[i + 1] - b.centers[i];
    b.widths[i] = 1.0 / (gap * gap);
  }
  b.widths[n - 1] = b.widths[n - 2];
  return b;
}

void basis_activations(double x, const BasisSet& basis, std::span<double> out) {
  kernels::active().gaussian_activations(x, basis.centers.data(), basis.widths.data(), out.data(),
                                         basis.centers.size());
}

std::vector<double> basis_activations(double x, const BasisSet& basis) {
  std::vector<double> out(basis.centers.size());
  basis_activations(x, basis, out);
  return out;
}

double canonical_phase(double t, const DmpGains& gains) {
  return std::exp(-gains.alpha_x * t / gains.tau);
}

namespace {

// φ(x) = ψ(x) x / Σψ(x), the regressor shared by fitting and forcing.
void normalized_features(double x, const BasisSet& basis, std::vector<double>& phi) {
  phi.resize(basis.centers.size());
  basis_activations(x, basis, phi);
  const auto& k = kernels::active();
  const double scale = x / k.sum(phi.data(), phi.size());
  for (double& v : phi) v *= scale;
}

}  // namespace

VectorXd forcing(double x, const Model& model) {
  std::vector<double> phi;
  normalized_features(x, model.basis, phi);
  const auto& k = kernels::active();
  const auto n = model.weights.rows();
  VectorXd f(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    f(j) = model.scaling(j) * k.dot(model.weights.row(j).data(), phi.data(), phi.size());
  }
  return f;
}

Derivatives estimate_derivatives(const ManifoldTrajectory& traj) {
  const std::size_t n = traj.size();
  if (n < 3) fail(ErrorCode::TooShort, "need at least 3 samples, got " + std::to_string(n));
  const int dim = traj.descriptor.tangent_dim();
  Derivatives out;
  out.velocities.assign(n, VectorXd::Zero(dim));
  out.accelerations.assign(n, VectorXd::Zero(dim));
  for (std::size_t l = 1; l < n; ++l) {
    const double dt = traj.times[l] - traj.times[l - 1];
    if (!(dt > 0.0)) {
      fail(ErrorCode::NonMonotonicTime, "timestamps must increase strictly (sample " +
                                            std::to_string(l) + ")");
    }
    out.velocities[l] = manifolds::log_coords(traj.descriptor, traj.points[l - 1], traj.points[l]) / dt;
    out.accelerations[l] = (out.velocities[l] - out.velocities[l - 1]) / dt;
  }
  return out;
}

Scaling compute_scaling(const Point& start, const Point& goal) {
  Scaling s;
  s.d = manifolds::log_coords(start.descriptor, start.data, goal.data);
  s.mask.assign(s.d.size(), false);
  const double largest = s.d.size() ? s.d.cwiseAbs().maxCoeff() : 0.0;
  for (Eigen::Index j = 0; j < s.d.size(); ++j) {
    if (largest == 0.0 || std::abs(s.d(j)) < kScalingRelativeFloor * largest) {
      s.d(j) = 1.0;
      s.mask[j] = true;
    }
  }
  return s;
}

Model fit(const ManifoldTrajectory& demo, DmpGains gains, int n_basis, const FitOptions& options) {
  check_trajectory(demo);
  const Derivatives deriv = estimate_derivatives(demo);
  if (!(gains.tau > 0.0)) gains.tau = demo.duration();
  gains.check();

  Model model;
  model.descriptor = demo.descriptor;
  model.gains = gains;
  model.basis = build_basis(n_basis, gains.alpha_x);
  model.start = demo.point(0);
  model.goal = options.goal ? *options.goal : demo.point(demo.size() - 1);
  if (!(model.goal.descriptor == demo.descriptor)) {
    fail(ErrorCode::DescriptorMismatch, "goal is on " + model.goal.descriptor.to_string() +
                                            ", demonstration on " + demo.descriptor.to_string());
  }
  if (const auto r = manifolds::validate(model.goal); !r.valid) {
    fail(ErrorCode::InvalidPoint, "goal violates " + r.invariant);
  }
  Scaling s = compute_scaling(model.start, model.goal);
  model.scaling = s.d;
  model.scaling_mask = s.mask;

  const int dim = demo.descriptor.tangent_dim();
  const int n = n_basis;
  const double tau = gains.tau;
  const auto& k = kernels::active();

  RowMatrix gram = RowMatrix::Zero(n, n);
  RowMatrix rhs = RowMatrix::Zero(dim, n);
  // LWR accumulators: Σ ψ_i x f_j and Σ ψ_i x².
  RowMatrix lwr_num = RowMatrix::Zero(dim, n);
  VectorXd lwr_den = VectorXd::Zero(n);

  std::vector<double> phi;
  std::vector<double> psi(n);
  for (std::size_t l = 0; l < demo.size(); ++l) {
    const double x =
        std::max(canonical_phase(demo.times[l] - demo.times[0], gains), kPhaseFloor);
    const VectorXd to_goal =
        manifolds::log_coords(demo.descriptor, demo.points[l], model.goal.data);
    const VectorXd target =
        ((tau * tau) * deriv.accelerations[l] -
         gains.alpha_z * (gains.beta_z * to_goal - tau * deriv.velocities[l]))
            .cwiseQuotient(model.scaling);

    if (options.solver == Solver::Ridge) {
      normalized_features(x, model.basis, phi);
      for (int r = 0; r < n; ++r) k.axpy(phi[r], phi.data(), gram.row(r).data(), n);
      for (int j = 0; j < dim; ++j) k.axpy(target(j), phi.data(), rhs.row(j).data(), n);
    } else {
      basis_activations(x, model.basis, psi);
      for (int i = 0; i < n; ++i) {
        lwr_den(i) += psi[i] * x * x;
        for (int j = 0; j < dim; ++j) lwr_num(j, i) += psi[i] * x * target(j);
      }
    }
  }

  if (options.solver == Solver::Ridge) {
    gram.diagonal().array() += options.ridge;
    const Eigen::MatrixXd wt = gram.ldlt().solve(rhs.transpose());
    model.weights = wt.transpose();
  } else {
    model.weights.resize(dim, n);
    for (int i = 0; i < n; ++i) {
      model.weights.col(i) = lwr_num.col(i) / (lwr_den(i) + options.ridge);
    }
  }
  if (!model.weights.allFinite()) fail(ErrorCode::SingularScaling, "weight solve produced non-finite values");
  return model;
}

RolloutState initial_state(const Model& model, const Point& start) {
  if (!(start.descriptor == model.descriptor)) {
    fail(ErrorCode::DescriptorMismatch, "start is on " + start.descriptor.to_string() +
                                            ", model on " + model.descriptor.to_string());
  }
  if (const auto r = manifolds::validate(start); !r.valid) {
    fail(ErrorCode::InvalidPoint, "start violates " + r.invariant);
  }
  RolloutState s;
  s.y = start.data;
  s.z = VectorXd::Zero(model.descriptor.tangent_dim());
  s.x = 1.0;
  s.goal = model.goal.data;
  s.t = 0.0;
  return s;
}

RolloutState rollout_step(RolloutState state, const Model& model, double dt) {
  const DmpGains& g = model.gains;
  const Descriptor& d = model.descriptor;
  const VectorXd to_goal = manifolds::log_coords(d, state.y, state.goal);
  const VectorXd zdot = (g.alpha_z * (g.beta_z * to_goal - state.z) + forcing(state.x, model)) / g.tau;
  state.z += zdot * dt;
  manifolds::project_to_tangent(d, state.y, state.z);
  state.y = manifolds::exp_coords(d, state.y, state.z * dt / g.tau);
  state.x = std::max(state.x * std::exp(-g.alpha_x * dt / g.tau), kPhaseFloor);
  state.t += dt;
  return state;
}

VectorXd goal_switch_step(const Descriptor& d, const Eigen::Ref<const VectorXd>& current,
                          const Eigen::Ref<const VectorXd>& target, const DmpGains& gains,
                          double dt) {
  const VectorXd v = (gains.alpha_g / gains.tau) * manifolds::log_coords(d, current, target) * dt;
  return manifolds::exp_coords(d, current, v);
}

Point goal_switch_step(const Point& current, const Point& target, const DmpGains& gains,
                       double dt) {
  manifolds::log_map(current, target);  // validates both points
  return {current.descriptor,
          goal_switch_step(current.descriptor, current.data, target.data, gains, dt)};
}

double lyapunov_value(const RolloutState& state, const Model& model) {
  const double dist = manifolds::log_coords(model.descriptor, state.y, state.goal).norm();
  return dist * dist + state.z.squaredNorm() / (model.gains.alpha_z * model.gains.beta_z);
}

RolloutResult rollout(const Model& model, const Point& start, const RolloutOptions& options) {
  const double duration = options.duration > 0.0 ? options.duration : model.gains.tau;
  const double dt = options.dt;
  if (!(dt > 0.0) || !std::isfinite(duration)) {
    fail(ErrorCode::InvalidArgument, "rollout needs dt > 0 and a finite duration");
  }
  for (std::size_t i = 0; i < options.schedule.size(); ++i) {
    const auto& e = options.schedule[i];
    if (!(e.goal.descriptor == model.descriptor)) {
      fail(ErrorCode::DescriptorMismatch, "goal-switch target is on " + e.goal.descriptor.to_string());
    }
    if (const auto r = manifolds::validate(e.goal); !r.valid) {
      fail(ErrorCode::InvalidPoint, "goal-switch target violates " + r.invariant);
    }
    if (i > 0 && e.t < options.schedule[i - 1].t) {
      fail(ErrorCode::InvalidArgument, "goal-switch schedule must be sorted by time");
    }
  }

  const auto steps = static_cast<std::size_t>(std::ceil(duration / dt - 1e-9));
  RolloutState state = initial_state(model, start);
  RolloutResult out;
  out.trajectory.descriptor = model.descriptor;
  const auto record = [&] {
    out.trajectory.push_back(state.t, state.y);
    out.velocities.push_back(state.z / model.gains.tau);
    out.goals.push_back(state.goal);
    out.lyapunov.push_back(lyapunov_value(state, model));
  };
  record();

  std::size_t next = 0;
  std::optional<VectorXd> target;
  for (std::size_t k = 0; k < steps; ++k) {
    while (next < options.schedule.size() && options.schedule[next].t <= state.t + 1e-9 * dt) {
      target = options.schedule[next].goal.data;
      ++next;
    }
    state = rollout_step(std::move(state), model, dt);
    if (target) state.goal = goal_switch_step(model.descriptor, state.goal, *target, model.gains, dt);
    record();
  }
  return out;
}

ManifoldTrajectory reproduce(const Model& model, const ManifoldTrajectory& demo) {
  check_trajectory(demo);
  RolloutState state = initial_state(model, demo.point(0));
  ManifoldTrajectory out;
  out.descriptor = model.descriptor;
  out.push_back(demo.times[0], state.y);
  for (std::size_t l = 1; l < demo.size(); ++l) {
    state = rollout_step(std::move(state), model, demo.times[l] - demo.times[l - 1]);
    out.push_back(demo.times[l], state.y);
  }
  return out;
}

double rms_distance(const ManifoldTrajectory& a, const ManifoldTrajectory& b) {
  if (!(a.descriptor == b.descriptor)) {
    fail(ErrorCode::DescriptorMismatch, a.descriptor.to_string() + " vs " + b.descriptor.to_string());
  }
  if (a.size() != b.size() || a.empty()) {
    fail(ErrorCode::InvalidArgument, "trajectories must be non-empty and equally long");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    acc += manifolds::log_coords(a.descriptor, a.points[i], b.points[i]).squaredNorm();
  }
  return std::sqrt(acc / static_cast<double>(a.size()));
}

Model composite_model(const std::vector<Model>& parts) {
  if (parts.empty()) fail(ErrorCode::EmptyProduct, "composite of zero models");
  const Model& first = parts.front();
  std::vector<Descriptor> ds;
  std::vector<Point> starts, goals;
  Eigen::Index rows = 0;
  for (const Model& p : parts) {
    if (!(p.gains == first.gains)) fail(ErrorCode::GainMismatch, "composite parts need identical gains");
    if (!(p.basis == first.basis)) fail(ErrorCode::BasisMismatch, "composite parts need one shared basis");
    ds.push_back(p.descriptor);
    starts.push_back(p.start);
    goals.push_back(p.goal);
    rows += p.weights.rows();
  }
  Model m;
  m.descriptor = Descriptor::product(std::move(ds));
  m.gains = first.gains;
  m.basis = first.basis;
  m.start = manifolds::concatenate(starts);
  m.goal = manifolds::concatenate(goals);
  m.weights.resize(rows, first.basis.size());
  m.scaling.resize(rows);
  Eigen::Index r = 0;
  for (const Model& p : parts) {
    m.weights.middleRows(r, p.weights.rows()) = p.weights;
    m.scaling.segment(r, p.scaling.size()) = p.scaling;
    m.scaling_mask.insert(m.scaling_mask.end(), p.scaling_mask.begin(), p.scaling_mask.end());
    r += p.weights.rows();
  }
  return m;
}

}  // namespace gadmp::dmp

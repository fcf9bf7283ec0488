#include "gadmp/experiments.hpp"

#include "gadmp/datasets.hpp"
#include "gadmp/errors.hpp"
#include "gadmp/matrix_functions.hpp"

namespace gadmp::experiments {

using Eigen::Matrix2d;
using Eigen::Vector2d;
using Eigen::VectorXd;
using manifolds::Descriptor;

Matrix2d reference_stiffness() {
  Matrix2d k;
  k << 622.9934, 39.9577, 39.9577, 79.5444;
  return k;
}

namespace {

const Descriptor& composite_descriptor() {
  static const Descriptor d =
      Descriptor::product({Descriptor::euclidean(2), Descriptor::spd(2)});
  return d;
}

void require_composite(const ManifoldTrajectory& traj) {
  if (!(traj.descriptor == composite_descriptor())) {
    fail(ErrorCode::DescriptorMismatch, "expected " + composite_descriptor().to_string() + ", got " +
                                            traj.descriptor.to_string());
  }
}

VectorXd composite_point(const Vector2d& p, const Matrix2d& k) {
  VectorXd v(6);
  v << p, k(0, 0), k(0, 1), k(1, 0), k(1, 1);
  return v;
}

}  // namespace

PlanarTrajectory position_part(const ManifoldTrajectory& composite) {
  require_composite(composite);
  PlanarTrajectory out;
  out.times = composite.times;
  for (const auto& y : composite.points) out.positions.push_back(y.head<2>());
  return out;
}

ManifoldTrajectory spd_part(const ManifoldTrajectory& composite) {
  require_composite(composite);
  ManifoldTrajectory out;
  out.descriptor = Descriptor::spd(2);
  for (std::size_t l = 0; l < composite.size(); ++l) {
    out.push_back(composite.times[l], composite.points[l].tail<4>());
  }
  return out;
}

ManifoldTrajectory compose(const PlanarTrajectory& path, const ManifoldTrajectory& spd) {
  if (!(spd.descriptor == Descriptor::spd(2)) || spd.size() != path.size()) {
    fail(ErrorCode::InvalidArgument, "compose needs an SPD(2) profile as long as the path");
  }
  ManifoldTrajectory out;
  out.descriptor = composite_descriptor();
  for (std::size_t l = 0; l < path.size(); ++l) {
    VectorXd v(6);
    v << path.positions[l], spd.points[l];
    out.push_back(path.times[l], v);
  }
  return out;
}

MsdRun run_msd(const MsdConfig& cfg) {
  MsdRun run;
  run.dt = cfg.tau / (cfg.samples - 1);
  const PlanarTrajectory path = datasets::line_min_jerk(cfg.p_start, cfg.p_goal, cfg.samples, cfg.tau);
  const ManifoldTrajectory stiffness =
      datasets::rotating_stiffness_profile(cfg.k_start, cfg.total_angle, cfg.samples, run.dt);
  run.demo = compose(path, stiffness);
  run.model = dmp::fit(run.demo, dmp::DmpGains::from_alpha(cfg.alpha_z, cfg.tau), cfg.n_basis);

  dmp::RolloutOptions opts;
  opts.duration = cfg.duration;
  opts.dt = run.dt;
  Matrix2d k_goal = manifolds::as_matrix(manifolds::split(run.model.goal)[1]);
  if (cfg.stiffness_switch) {
    k_goal = cfg.stiffness_switch->second;
    opts.schedule.push_back(
        {cfg.stiffness_switch->first, {composite_descriptor(), composite_point(cfg.p_goal, k_goal)}});
  }
  run.rollout = dmp::rollout(run.model, run.model.start, opts);

  sim::MsdState state;
  state.p = cfg.p_start;
  state.mass = cfg.mass;
  const auto& traj = run.rollout.trajectory;
  for (std::size_t l = 0; l < traj.size(); ++l) {
    const Vector2d p_des = traj.points[l].head<2>();
    const Vector2d v_des = run.rollout.velocities[l].head<2>();
    const Matrix2d k = Eigen::Map<const Eigen::Matrix<double, 2, 2, Eigen::RowMajor>>(
        traj.points[l].tail<4>().data());
    const Matrix2d d = 2.0 * linalg::sym_sqrt(cfg.mass * k);
    const sim::MsdStep step = sim::msd_step(state, k, d, p_des, v_des, run.dt);
    run.positions.push_back(state.p);
    run.forces.push_back(step.spring_force);
    state = step.state;
  }
  run.final_error = (run.positions.back() - cfg.p_goal).norm();
  const Descriptor spd2 = Descriptor::spd(2);
  run.final_stiffness_distance =
      manifolds::distance({spd2, traj.points.back().tail<4>()}, manifolds::from_matrix(k_goal, spd2));
  return run;
}

ManipulabilityRun run_manipulability(const ManipulabilityConfig& cfg, const PlanarTrajectory& path,
                                     double alpha) {
  ManipulabilityRun run;
  const PlanarTrajectory workspace_path =
      datasets::fit_to_box(path, cfg.center, cfg.box, cfg.duration);
  const ManifoldTrajectory profile =
      datasets::manipulability_profile(cfg.arm, workspace_path, cfg.q_reference);
  run.demo = compose(workspace_path, profile);
  run.model = dmp::fit(run.demo, dmp::DmpGains::from_alpha(cfg.alpha_z, cfg.duration), cfg.n_basis);
  const ManifoldTrajectory reproduced = dmp::reproduce(run.model, run.demo);
  run.p_des = position_part(reproduced);
  run.ups_des = spd_part(reproduced);

  const VectorXd q0 = sim::inverse_kinematics(cfg.arm, run.p_des.positions[0], cfg.q_start_guess);
  sim::TrackingOptions opts;
  opts.alpha = alpha;
  run.tracking = sim::track_with_manipulability(cfg.arm, run.p_des, run.ups_des, q0, opts);
  return run;
}

}  // namespace gadmp::experiments

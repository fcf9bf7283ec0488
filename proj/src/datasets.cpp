#include "gadmp/datasets.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "gadmp/errors.hpp"
#include "gadmp/trajectory_io.hpp"

namespace gadmp::datasets {

using Eigen::Vector2d;
using Eigen::Vector3d;
using Eigen::VectorXd;
using manifolds::Descriptor;
using manifolds::Kind;
using manifolds::Point;

PlanarTrajectory read_planar(const std::filesystem::path& path) {
  const io::CsvTable table = io::read_csv(path);
  const auto& h = table.header;
  const std::size_t cols = h.size();
  if (cols < 3 || h[0] != "t" || h[1] != "x" || h[2] != "y" || (cols != 3 && cols != 5 && cols != 7)) {
    fail(ErrorCode::Parse, path.string() + ": expected columns t,x,y[,vx,vy[,ax,ay]]");
  }
  if (table.rows.empty()) fail(ErrorCode::Io, path.string() + " has no samples");
  PlanarTrajectory traj;
  for (const auto& r : table.rows) {
    if (!traj.times.empty() && !(r[0] > traj.times.back())) {
      fail(ErrorCode::NonMonotonicTime, path.string() + ": timestamps must increase strictly");
    }
    traj.times.push_back(r[0]);
    traj.positions.emplace_back(r[1], r[2]);
    if (cols >= 5) traj.velocities.emplace_back(r[3], r[4]);
    if (cols == 7) traj.accelerations.emplace_back(r[5], r[6]);
  }
  return traj;
}

std::vector<Vector3d> add_z_axis(const PlanarTrajectory& traj) {
  std::vector<Vector3d> out;
  out.reserve(traj.size());
  for (const auto& p : traj.positions) out.emplace_back(p.x(), p.y(), (p.x() + p.y()) / 2.0);
  return out;
}

namespace {

void require_lift_target(const Descriptor& d) {
  const bool ok = d.kind() == Kind::UnitQuaternion ||
                  (d.kind() == Kind::SpecialOrthogonal && d.dimension() == 3) ||
                  (d.kind() == Kind::Sphere && d.dimension() == 3);
  if (!ok) {
    fail(ErrorCode::InvalidArgument, "cannot lift 3-D samples onto " + d.to_string() +
                                         " (supported: quat, so:3, sphere:3)");
  }
}

// Tangent coordinates at `base` for a 3-vector. Sphere tangent vectors at the
// north pole are [v, 0]; other bases use the reflection taking the pole to base.
VectorXd tangent_of(const Point& base, const Vector3d& v) {
  if (base.descriptor.kind() != Kind::Sphere) return v;
  Eigen::Vector4d t(v.x(), v.y(), v.z(), 0.0);
  const Eigen::Vector4d u = Eigen::Vector4d::UnitW() - Eigen::Vector4d(base.data);
  const double nu2 = u.squaredNorm();
  if (nu2 > 1e-24) t -= (2.0 * u.dot(t) / nu2) * u;
  return t;
}

}  // namespace

LiftConfig default_lift(const Descriptor& target, const std::vector<Vector3d>& samples) {
  require_lift_target(target);
  double largest = 0.0;
  for (const auto& v : samples) largest = std::max(largest, v.norm());
  LiftConfig cfg;
  cfg.target = target;
  cfg.base = manifolds::identity(target);
  // Stay inside the hemisphere around the base: beyond it the goal attractor
  // is transversally unstable on spheres.
  const double radius = target.kind() == Kind::SpecialOrthogonal ? std::numbers::pi
                                                                  : std::numbers::pi / 2.0;
  cfg.scale = largest > 0.0 ? 0.9 * radius / largest : 1.0;
  return cfg;
}

ManifoldTrajectory lift_to_manifold(const std::vector<double>& times,
                                    const std::vector<Vector3d>& samples, const LiftConfig& cfg) {
  require_lift_target(cfg.target);
  if (!(cfg.base.descriptor == cfg.target)) {
    fail(ErrorCode::DescriptorMismatch, "lift base is not on " + cfg.target.to_string());
  }
  if (times.size() != samples.size()) {
    fail(ErrorCode::InvalidArgument, "lift needs one timestamp per sample");
  }
  if (!(cfg.scale > 0.0)) fail(ErrorCode::InvalidArgument, "lift scale must be positive");
  const double radius = manifolds::injectivity_radius(cfg.target);
  ManifoldTrajectory out;
  out.descriptor = cfg.target;
  for (std::size_t l = 0; l < samples.size(); ++l) {
    const VectorXd v = cfg.scale * tangent_of(cfg.base, samples[l]);
    if (!(v.norm() < radius)) {
      fail(ErrorCode::InjectivityExceeded,
           "sample " + std::to_string(l) + " scaled to norm " + std::to_string(v.norm()) +
               " exceeds the injectivity radius " + std::to_string(radius) + "; reduce the scale");
    }
    out.push_back(times[l], manifolds::exp_map(cfg.base, v).data);
  }
  check_trajectory(out);
  return out;
}

ManifoldTrajectory planar_to_euclidean(const PlanarTrajectory& traj, bool with_z) {
  ManifoldTrajectory out;
  out.descriptor = Descriptor::euclidean(with_z ? 3 : 2);
  if (with_z) {
    const auto pts = add_z_axis(traj);
    for (std::size_t l = 0; l < traj.size(); ++l) out.push_back(traj.times[l], pts[l]);
  } else {
    for (std::size_t l = 0; l < traj.size(); ++l) out.push_back(traj.times[l], traj.positions[l]);
  }
  return out;
}

ManifoldTrajectory rotating_stiffness_profile(const Eigen::Matrix2d& k_start, double total_angle,
                                              int samples, double dt) {
  const Descriptor spd2 = Descriptor::spd(2);
  if (const auto r = manifolds::validate(manifolds::from_matrix(k_start, spd2)); !r.valid) {
    fail(ErrorCode::InvalidPoint, "start stiffness violates " + r.invariant);
  }
  if (samples < 2 || !(dt > 0.0)) fail(ErrorCode::InvalidArgument, "need >= 2 samples and dt > 0");
  ManifoldTrajectory out;
  out.descriptor = spd2;
  for (int l = 0; l < samples; ++l) {
    const double theta = total_angle * l / (samples - 1);
    const double c = std::cos(theta), s = std::sin(theta);
    Eigen::Matrix2d r;
    r << c, -s, s, c;
    const Eigen::Matrix2d k = r.transpose() * k_start * r;
    out.push_back(l * dt, manifolds::from_matrix(0.5 * (k + k.transpose()), spd2).data);
  }
  return out;
}

ManifoldTrajectory manipulability_profile(const sim::PlanarArm& arm, const PlanarTrajectory& traj,
                                          const VectorXd& q_init) {
  arm.check();
  const Descriptor spd2 = Descriptor::spd(2);
  ManifoldTrajectory out;
  out.descriptor = spd2;
  VectorXd q = q_init;
  for (std::size_t l = 0; l < traj.size(); ++l) {
    q = sim::inverse_kinematics(arm, traj.positions[l], q);
    out.push_back(traj.times[l],
                  manifolds::from_matrix(sim::manipulability(sim::jacobian(arm, q)), spd2).data);
  }
  check_trajectory(out);
  return out;
}

double min_jerk(double s) {
  s = std::clamp(s, 0.0, 1.0);
  const double s3 = s * s * s;
  return s3 * (10.0 - 15.0 * s + 6.0 * s * s);
}

ManifoldTrajectory geodesic_min_jerk(const Point& from, const Point& to, int samples,
                                     double duration) {
  if (samples < 2 || !(duration > 0.0)) {
    fail(ErrorCode::InvalidArgument, "need >= 2 samples and a positive duration");
  }
  const manifolds::TangentVector v = manifolds::log_map(from, to);
  ManifoldTrajectory out;
  out.descriptor = from.descriptor;
  for (int l = 0; l < samples; ++l) {
    const double t = duration * l / (samples - 1);
    const double s = min_jerk(static_cast<double>(l) / (samples - 1));
    out.push_back(t, manifolds::exp_coords(from.descriptor, from.data, s * v.coords));
  }
  return out;
}

PlanarTrajectory line_min_jerk(const Vector2d& from, const Vector2d& to, int samples,
                               double duration) {
  if (samples < 2 || !(duration > 0.0)) {
    fail(ErrorCode::InvalidArgument, "need >= 2 samples and a positive duration");
  }
  PlanarTrajectory out;
  for (int l = 0; l < samples; ++l) {
    const double t = duration * l / (samples - 1);
    out.times.push_back(t);
    out.positions.push_back(from + min_jerk(t / duration) * (to - from));
  }
  return out;
}

PlanarTrajectory fit_to_box(const PlanarTrajectory& traj, const Vector2d& center, double size,
                            double duration) {
  if (traj.size() < 2 || !(size > 0.0) || !(duration > 0.0)) {
    fail(ErrorCode::InvalidArgument, "fit_to_box needs >= 2 samples, size > 0 and duration > 0");
  }
  Vector2d lo = traj.positions[0], hi = traj.positions[0];
  for (const auto& p : traj.positions) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  const double extent = (hi - lo).maxCoeff();
  const double scale = extent > 0.0 ? size / extent : 1.0;
  const Vector2d mid = 0.5 * (lo + hi);
  const double t0 = traj.times.front();
  const double time_scale = duration / (traj.times.back() - t0);
  PlanarTrajectory out;
  for (std::size_t l = 0; l < traj.size(); ++l) {
    out.times.push_back((traj.times[l] - t0) * time_scale);
    out.positions.push_back(center + scale * (traj.positions[l] - mid));
  }
  return out;
}

Benchmark benchmark(const PlanarTrajectory& planar, const Descriptor& target,
                    std::optional<double> scale) {
  Benchmark out;
  if (target == Descriptor::euclidean(2) || target == Descriptor::euclidean(3)) {
    out.trajectory = planar_to_euclidean(planar, target.dimension() == 3);
  } else if (target == Descriptor::spd(2)) {
    const sim::PlanarArm arm{{1.0, 1.0, 1.0}, {}};
    const PlanarTrajectory path =
        fit_to_box(planar, {1.5, 0.5}, 1.0, planar.times.back() - planar.times.front());
    out.trajectory = manipulability_profile(arm, path, Eigen::Vector3d(0.3, 0.6, 0.6));
  } else {
    const auto samples = add_z_axis(planar);
    LiftConfig cfg = default_lift(target, samples);
    if (scale) cfg.scale = *scale;
    out.trajectory = lift_to_manifold(planar.times, samples, cfg);
    out.scale = cfg.scale;
  }
  return out;
}

ManifoldTrajectory midpoint(const ManifoldTrajectory& a, const ManifoldTrajectory& b) {
  if (!(a.descriptor == b.descriptor) || a.size() != b.size()) {
    fail(ErrorCode::InvalidArgument, "midpoint needs aligned trajectories on one manifold");
  }
  ManifoldTrajectory out;
  out.descriptor = a.descriptor;
  for (std::size_t l = 0; l < a.size(); ++l) {
    out.push_back(a.times[l], manifolds::geodesic_interpolate(a.point(l), b.point(l), 0.5).data);
  }
  return out;
}

}  // namespace gadmp::datasets

#pragma once

// Riemannian benchmark data built from planar handwriting-style paths, plus
// designed SPD profiles for the simulations.

#include <Eigen/Dense>
#include <filesystem>
#include <optional>
#include <vector>

#include "gadmp/manifolds.hpp"
#include "gadmp/sim.hpp"
#include "gadmp/trajectory.hpp"

namespace gadmp::datasets {

/// Columns t,x,y with optional vx,vy and ax,ay. Throws Io / Parse / NonMonotonicTime.
PlanarTrajectory read_planar(const std::filesystem::path& path);

/// [x, y, (x + y)/2] per sample.
std::vector<Eigen::Vector3d> add_z_axis(const PlanarTrajectory& traj);

struct LiftConfig {
  manifolds::Point base;
  double scale = 1.0;
  manifolds::Descriptor target;
};

/// Identity / north-pole base and scale 0.9·r / max‖v‖, with r = π for so:3
/// and π/2 (one hemisphere) for quat and sphere:3.
LiftConfig default_lift(const manifolds::Descriptor& target,
                        const std::vector<Eigen::Vector3d>& samples);

/// Y_l = Exp_base(scale · v_l). Throws InjectivityExceeded when a scaled
/// sample leaves the injectivity radius.
ManifoldTrajectory lift_to_manifold(const std::vector<double>& times,
                                    const std::vector<Eigen::Vector3d>& samples,
                                    const LiftConfig& cfg);

/// Planar path as a Euclidean(2) trajectory, or Euclidean(3) after add_z_axis.
ManifoldTrajectory planar_to_euclidean(const PlanarTrajectory& traj, bool with_z = false);

/// K_l = R(θ_l)ᵀ K R(θ_l), θ_l linear in [0, total_angle], t_l = l·dt.
ManifoldTrajectory rotating_stiffness_profile(const Eigen::Matrix2d& k_start, double total_angle,
                                              int samples, double dt);

/// Υ_l = manipulability(J(q_l)) along an IK-tracked path. Each IK solve starts
/// from the previous solution (the first from q_init).
ManifoldTrajectory manipulability_profile(const sim::PlanarArm& arm, const PlanarTrajectory& traj,
                                          const Eigen::VectorXd& q_init);

/// 10s³ − 15s⁴ + 6s⁵ for s in [0, 1].
double min_jerk(double s);

/// Geodesic from `from` to `to` with minimum-jerk timing, `samples` points over `duration`.
ManifoldTrajectory geodesic_min_jerk(const manifolds::Point& from, const manifolds::Point& to,
                                     int samples, double duration);

/// Straight planar segment with minimum-jerk timing.
PlanarTrajectory line_min_jerk(const Eigen::Vector2d& from, const Eigen::Vector2d& to, int samples,
                               double duration);

/// Affine map of a planar path so its bounding box fits a square of side
/// `size` centred at `center`; timestamps are rescaled to `duration`.
PlanarTrajectory fit_to_box(const PlanarTrajectory& traj, const Eigen::Vector2d& center,
                            double size, double duration);

struct Benchmark {
  ManifoldTrajectory trajectory;
  double scale = 1.0;  // lift scale; 1 for targets that are not lifted
};

/// A planar fixture turned into a trajectory on `target`: euclidean:2/3 use the
/// path directly (3 adds the z axis), spd:2 is the manipulability profile of a
/// 3-link unit arm following the path scaled into its workspace, and quat,
/// so:3 and sphere:3 are lifts of the 3-D samples (default scale unless given).
Benchmark benchmark(const PlanarTrajectory& planar, const manifolds::Descriptor& target,
                    std::optional<double> scale = std::nullopt);

/// Pointwise geodesic midpoint of two aligned trajectories (same descriptor and length).
ManifoldTrajectory midpoint(const ManifoldTrajectory& a, const ManifoldTrajectory& b);

}  // namespace gadmp::datasets

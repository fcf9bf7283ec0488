#pragma once

// Geometry-aware dynamic movement primitives.
//
// Transformation system, integrated with semi-implicit Euler:
//   τ ż = α_z (β_z Log_Y(G) − z) + F(x)
//   Y  ← Exp_Y(z δt / τ)
//   x  ← x · exp(−α_x δt / τ)
// with F(x) = diag(d) (W ψ(x) / Σψ(x)) x and d = Log_{Y₁}(G).
// z is a plain coordinate array carried between tangent spaces without
// transport; on sphere parts it is projected onto the current tangent space.

#include <Eigen/Dense>
#include <optional>
#include <span>
#include <vector>

#include "gadmp/manifolds.hpp"
#include "gadmp/trajectory.hpp"

namespace gadmp::dmp {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

inline constexpr double kDefaultAlphaZ = 60.0;
inline constexpr double kDefaultAlphaX = 4.6052;
inline constexpr double kDefaultDt = 1e-3;
inline constexpr int kDefaultBasisCount = 60;
inline constexpr double kRidge = 1e-8;
inline constexpr double kPhaseFloor = 1e-10;
/// Scaling entries below this fraction of the largest |d_k| are replaced by 1.
inline constexpr double kScalingRelativeFloor = 1e-6;

struct DmpGains {
  double alpha_z = kDefaultAlphaZ;
  double beta_z = kDefaultAlphaZ / 4.0;
  double alpha_x = kDefaultAlphaX;
  double alpha_g = kDefaultAlphaZ / 2.0;
  double tau = 1.0;

  /// beta_z = alpha_z/4, alpha_g = alpha_z/2, alpha_x default.
  static DmpGains from_alpha(double alpha_z, double tau);

  /// Throws InvalidArgument unless every gain is finite and > 0.
  void check() const;

  friend bool operator==(const DmpGains&, const DmpGains&) = default;
};

struct BasisSet {
  std::vector<double> centers;
  std::vector<double> widths;

  int size() const { return static_cast<int>(centers.size()); }
  friend bool operator==(const BasisSet&, const BasisSet&) = default;
};

/// c_i = exp(−α_x (i−1)/(N−1)), h_i = 1/(c_{i+1}−c_i)², h_N = h_{N−1}. InvalidN for N < 2.
BasisSet build_basis(int n, double alpha_x);

void basis_activations(double x, const BasisSet& basis, std::span<double> out);
std::vector<double> basis_activations(double x, const BasisSet& basis);

/// exp(−α_x t / τ).
double canonical_phase(double t, const DmpGains& gains);

struct Model {
  manifolds::Descriptor descriptor;
  DmpGains gains;
  BasisSet basis;
  RowMatrix weights;  // tangent_dim × N
  manifolds::Point start;
  manifolds::Point goal;
  Eigen::VectorXd scaling;
  std::vector<bool> scaling_mask;  // true where d was replaced by 1
};

/// diag(d) (W ψ(x) / Σψ(x)) x.
Eigen::VectorXd forcing(double x, const Model& model);

struct Derivatives {
  std::vector<Eigen::VectorXd> velocities;
  std::vector<Eigen::VectorXd> accelerations;
};

/// Backward differences ẏ_l = Log_{Y_{l−1}}(Y_l)/δt_l and ÿ_l = (ẏ_l − ẏ_{l−1})/δt_l
/// with ẏ₁ = ÿ₁ = 0. Throws TooShort (T < 3) or NonMonotonicTime.
Derivatives estimate_derivatives(const ManifoldTrajectory& traj);

enum class Solver { Ridge, Lwr };

struct FitOptions {
  std::optional<manifolds::Point> goal;  // default: last sample
  Solver solver = Solver::Ridge;
  double ridge = kRidge;
};

/// Learns the weights from one demonstration. gains.tau <= 0 means the demo duration.
Model fit(const ManifoldTrajectory& demo, DmpGains gains, int n_basis,
          const FitOptions& options = {});

struct Scaling {
  Eigen::VectorXd d;
  std::vector<bool> mask;
};

/// d = Log_{Y₁}(G) with degenerate entries replaced by 1 and flagged.
Scaling compute_scaling(const manifolds::Point& start, const manifolds::Point& goal);

struct RolloutState {
  Eigen::VectorXd y;     // ambient point
  Eigen::VectorXd z;     // tangent coordinates
  double x = 1.0;
  Eigen::VectorXd goal;  // live goal, ambient
  double t = 0.0;
};

RolloutState initial_state(const Model& model, const manifolds::Point& start);

/// One integration step against the live goal in `state`.
RolloutState rollout_step(RolloutState state, const Model& model, double dt);

/// G ← Exp_G((α_g/τ) Log_G(G_new) δt).
Eigen::VectorXd goal_switch_step(const manifolds::Descriptor& d,
                                 const Eigen::Ref<const Eigen::VectorXd>& current,
                                 const Eigen::Ref<const Eigen::VectorXd>& target,
                                 const DmpGains& gains, double dt);
manifolds::Point goal_switch_step(const manifolds::Point& current, const manifolds::Point& target,
                                  const DmpGains& gains, double dt);

/// dist²(Y, G) + ‖z‖² / (α_z β_z) against the live goal.
double lyapunov_value(const RolloutState& state, const Model& model);

struct GoalSwitch {
  double t;
  manifolds::Point goal;
};

struct RolloutOptions {
  double duration = 0.0;  // <= 0 means tau
  double dt = kDefaultDt;
  std::vector<GoalSwitch> schedule;
};

struct RolloutResult {
  ManifoldTrajectory trajectory;
  std::vector<Eigen::VectorXd> velocities;  // z / τ per sample
  std::vector<Eigen::VectorXd> goals;       // live goal per sample
  std::vector<double> lyapunov;             // V per sample
};

/// ⌈duration/dt⌉ + 1 samples starting at `start`. Schedule entries activate at
/// the first step whose time reaches them.
RolloutResult rollout(const Model& model, const manifolds::Point& start,
                      const RolloutOptions& options);

/// Steps through the demo's own timestamps starting at its first sample.
ManifoldTrajectory reproduce(const Model& model, const ManifoldTrajectory& demo);

/// RMS of the per-sample geodesic distance between two equally long trajectories.
double rms_distance(const ManifoldTrajectory& a, const ManifoldTrajectory& b);

/// Product-manifold model from parts sharing gains and basis.
/// Throws GainMismatch / BasisMismatch.
Model composite_model(const std::vector<Model>& parts);

}  // namespace gadmp::dmp

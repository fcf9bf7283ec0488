#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

#include "gadmp/manifolds.hpp"

namespace gadmp {

/// Time-stamped samples sharing one descriptor. Points are stored as ambient arrays.
struct ManifoldTrajectory {
  manifolds::Descriptor descriptor;
  std::vector<double> times;
  std::vector<Eigen::VectorXd> points;

  std::size_t size() const { return times.size(); }
  bool empty() const { return times.empty(); }
  manifolds::Point point(std::size_t i) const { return {descriptor, points[i]}; }
  double duration() const { return times.empty() ? 0.0 : times.back() - times.front(); }

  void push_back(double t, Eigen::VectorXd p) {
    times.push_back(t);
    points.push_back(std::move(p));
  }
};

/// Planar samples; velocities and accelerations are either empty or one per sample.
struct PlanarTrajectory {
  std::vector<double> times;
  std::vector<Eigen::Vector2d> positions;
  std::vector<Eigen::Vector2d> velocities;
  std::vector<Eigen::Vector2d> accelerations;

  std::size_t size() const { return times.size(); }
};

/// Throws NonMonotonicTime, InvalidPoint or InvalidArgument (size mismatch).
void check_trajectory(const ManifoldTrajectory& traj);

/// Sum of geodesic distances between consecutive samples.
double geodesic_length(const ManifoldTrajectory& traj);

}  // namespace gadmp

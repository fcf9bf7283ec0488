#include "gadmp/trajectory.hpp"

#include <string>

#include "gadmp/errors.hpp"

namespace gadmp {

void check_trajectory(const ManifoldTrajectory& traj) {
  if (traj.times.size() != traj.points.size()) {
    fail(ErrorCode::InvalidArgument, "trajectory has mismatched time and point counts");
  }
  for (std::size_t i = 0; i < traj.size(); ++i) {
    if (i > 0 && !(traj.times[i] > traj.times[i - 1])) {
      fail(ErrorCode::NonMonotonicTime,
           "timestamps must increase strictly (sample " + std::to_string(i) + ")");
    }
    const auto r = manifolds::validate(traj.point(i));
    if (!r.valid) {
      fail(ErrorCode::InvalidPoint, "sample " + std::to_string(i) + " violates " + r.invariant +
                                        " (residual " + std::to_string(r.residual) + ")");
    }
  }
}

double geodesic_length(const ManifoldTrajectory& traj) {
  double length = 0.0;
  for (std::size_t i = 1; i < traj.size(); ++i) {
    length += manifolds::log_coords(traj.descriptor, traj.points[i - 1], traj.points[i]).norm();
  }
  return length;
}

}  // namespace gadmp

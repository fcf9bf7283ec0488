#pragma once

// CSV trajectories: header `t,<c0>,<c1>,...`, one row per sample, LF line
// endings, 17 significant digits. The descriptor lives in a sidecar
// `<stem>.meta.json` holding {kind, m, descriptor, columns}.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "gadmp/trajectory.hpp"

namespace gadmp::io {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

/// Throws Io for unreadable or empty files and Parse for malformed contents.
CsvTable read_csv(const std::filesystem::path& path);
void write_csv(const std::filesystem::path& path, const CsvTable& table);
std::string to_csv(const CsvTable& table);

/// Default coordinate column names for a descriptor.
std::vector<std::string> column_names(const manifolds::Descriptor& d);

std::filesystem::path meta_path(const std::filesystem::path& csv);

/// Writes the CSV and its sidecar. Throws InvalidPoint before writing anything
/// if a sample fails validation.
void write_trajectory(const std::filesystem::path& path, const ManifoldTrajectory& traj);

/// Reads a trajectory. Without an explicit descriptor the sidecar must exist.
ManifoldTrajectory read_trajectory(const std::filesystem::path& path,
                                   std::optional<manifolds::Descriptor> descriptor = std::nullopt);

}  // namespace gadmp::io

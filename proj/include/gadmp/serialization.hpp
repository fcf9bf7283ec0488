#pragma once

// Model files are JSON documents:
//   { "format_version": 1, "descriptor": "<spec>",
//     "gains": {alpha_z, beta_z, alpha_x, alpha_g, tau},
//     "basis": {N, centers, widths},
//     "weights": [row-major], "weights_shape": [rows, cols],
//     "start": [...], "goal": [...], "scaling": [...], "scaling_mask": [...] }
// Numbers carry 17 significant digits so a save/load cycle is bit-exact.

#include <filesystem>
#include <string>
#include <string_view>

#include "gadmp/dmp.hpp"

namespace gadmp::serialization {

inline constexpr int kFormatVersion = 1;

std::string to_json(const dmp::Model& model);
/// Throws Parse on malformed documents and InvalidPoint on invalid start/goal.
dmp::Model from_json(std::string_view text);

void save_model(const std::filesystem::path& path, const dmp::Model& model);
dmp::Model load_model(const std::filesystem::path& path);

/// Whole-file helpers that throw Io.
std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, std::string_view text);

}  // namespace gadmp::serialization

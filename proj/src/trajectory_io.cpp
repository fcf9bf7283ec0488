#include "gadmp/trajectory_io.hpp"

#include <charconv>
#include <json.hpp>
#include <sstream>

#include "gadmp/errors.hpp"
#include "gadmp/format.hpp"
#include "gadmp/serialization.hpp"

namespace gadmp::io {

using manifolds::Descriptor;
using manifolds::Kind;

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& field, std::size_t line_no) {
  const std::string f = trim(field);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
  if (f.empty() || ec != std::errc() || ptr != f.data() + f.size()) {
    fail(ErrorCode::Parse, "line " + std::to_string(line_no) + ": '" + f + "' is not a number");
  }
  return v;
}

void append_names(const Descriptor& d, const std::string& prefix, std::vector<std::string>& out) {
  const int m = d.dimension();
  switch (d.kind()) {
    case Kind::Euclidean:
      for (int i = 0; i < m; ++i) out.push_back(prefix + "x" + std::to_string(i));
      break;
    case Kind::Sphere:
      for (int i = 0; i <= m; ++i) out.push_back(prefix + "s" + std::to_string(i));
      break;
    case Kind::UnitQuaternion:
      for (const char* c : {"qw", "qx", "qy", "qz"}) out.push_back(prefix + c);
      break;
    case Kind::SpecialOrthogonal:
    case Kind::Spd: {
      const char* letter = d.kind() == Kind::Spd ? "k" : "r";
      for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
          out.push_back(prefix + letter + std::to_string(i) + "_" + std::to_string(j));
        }
      }
      break;
    }
    case Kind::Product:
      for (std::size_t i = 0; i < d.parts().size(); ++i) {
        append_names(d.parts()[i], prefix + "p" + std::to_string(i) + ".", out);
      }
      break;
  }
}

}  // namespace

CsvTable read_csv(const std::filesystem::path& path) {
  const std::string text = serialization::read_text(path);
  if (text.empty()) fail(ErrorCode::Io, path.string() + " is empty");
  std::istringstream is(text);
  std::string line;
  CsvTable table;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    if (table.header.empty()) {
      for (auto& f : split_fields(line)) table.header.push_back(trim(f));
      continue;
    }
    const auto fields = split_fields(line);
    if (fields.size() != table.header.size()) {
      fail(ErrorCode::Parse, path.string() + " line " + std::to_string(line_no) + ": expected " +
                                 std::to_string(table.header.size()) + " fields, got " +
                                 std::to_string(fields.size()));
    }
    std::vector<double> row;
    row.reserve(fields.size());
    for (const auto& f : fields) row.push_back(parse_number(f, line_no));
    table.rows.push_back(std::move(row));
  }
  if (table.header.empty()) fail(ErrorCode::Io, path.string() + " has no content");
  return table;
}

std::string to_csv(const CsvTable& table) {
  std::string s;
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (i) s += ',';
    s += table.header[i];
  }
  s += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) s += ',';
      s += format_number(row[i]);
    }
    s += '\n';
  }
  return s;
}

void write_csv(const std::filesystem::path& path, const CsvTable& table) {
  serialization::write_text(path, to_csv(table));
}

std::vector<std::string> column_names(const Descriptor& d) {
  std::vector<std::string> out;
  append_names(d, "", out);
  return out;
}

std::filesystem::path meta_path(const std::filesystem::path& csv) {
  std::filesystem::path p = csv;
  p.replace_extension(".meta.json");
  return p;
}

void write_trajectory(const std::filesystem::path& path, const ManifoldTrajectory& traj) {
  check_trajectory(traj);
  CsvTable table;
  table.header.push_back("t");
  const auto names = column_names(traj.descriptor);
  table.header.insert(table.header.end(), names.begin(), names.end());
  for (std::size_t i = 0; i < traj.size(); ++i) {
    std::vector<double> row{traj.times[i]};
    row.insert(row.end(), traj.points[i].data(), traj.points[i].data() + traj.points[i].size());
    table.rows.push_back(std::move(row));
  }
  nlohmann::ordered_json meta;
  meta["kind"] = std::string(traj.descriptor.kind_name());
  meta["m"] = traj.descriptor.dimension();
  meta["descriptor"] = traj.descriptor.to_string();
  meta["columns"] = names;
  write_csv(path, table);
  serialization::write_text(meta_path(path), meta.dump(2) + "\n");
}

ManifoldTrajectory read_trajectory(const std::filesystem::path& path,
                                   std::optional<Descriptor> descriptor) {
  if (!descriptor) {
    const auto meta_file = meta_path(path);
    if (!std::filesystem::exists(meta_file)) {
      fail(ErrorCode::Io, "no descriptor given and " + meta_file.string() + " is missing");
    }
    try {
      const auto meta = nlohmann::json::parse(serialization::read_text(meta_file));
      descriptor = Descriptor::parse(meta.at("descriptor").get<std::string>());
    } catch (const nlohmann::json::exception& e) {
      fail(ErrorCode::Parse, meta_file.string() + ": " + e.what());
    }
  }
  const CsvTable table = read_csv(path);
  const auto expected = static_cast<std::size_t>(descriptor->ambient_dim()) + 1;
  if (table.header.size() != expected) {
    fail(ErrorCode::Parse, path.string() + " has " + std::to_string(table.header.size()) +
                               " columns; " + descriptor->to_string() + " needs " +
                               std::to_string(expected));
  }
  if (table.rows.empty()) fail(ErrorCode::Io, path.string() + " has no samples");
  ManifoldTrajectory traj;
  traj.descriptor = *descriptor;
  for (const auto& row : table.rows) {
    traj.push_back(row[0], Eigen::Map<const Eigen::VectorXd>(row.data() + 1,
                                                             static_cast<Eigen::Index>(row.size() - 1)));
  }
  check_trajectory(traj);
  return traj;
}

}  // namespace gadmp::io

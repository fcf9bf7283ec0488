#include "gadmp/serialization.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "gadmp/errors.hpp"
#include "gadmp/format.hpp"

namespace gadmp::serialization {

using nlohmann::json;

namespace {

template <typename Range>
std::string number_array(const Range& values) {
  std::string s = "[";
  bool first = true;
  for (double v : values) {
    if (!first) s += ", ";
    s += format_number(v);
    first = false;
  }
  return s + "]";
}

std::string number_array(const Eigen::VectorXd& v) {
  return number_array(std::vector<double>(v.data(), v.data() + v.size()));
}

std::string quoted(const std::string& s) { return json(s).dump(); }

Eigen::VectorXd vector_field(const json& doc, const char* key, Eigen::Index expected) {
  const auto& arr = doc.at(key);
  if (!arr.is_array() || static_cast<Eigen::Index>(arr.size()) != expected) {
    fail(ErrorCode::Parse, std::string("field '") + key + "' must be an array of " +
                               std::to_string(expected) + " numbers");
  }
  Eigen::VectorXd v(expected);
  for (Eigen::Index i = 0; i < expected; ++i) v(i) = arr[i].get<double>();
  return v;
}

}  // namespace

std::string to_json(const dmp::Model& m) {
  const auto& g = m.gains;
  std::ostringstream os;
  os << "{\n";
  os << "  \"format_version\": " << kFormatVersion << ",\n";
  os << "  \"descriptor\": " << quoted(m.descriptor.to_string()) << ",\n";
  os << "  \"gains\": {\"alpha_z\": " << format_number(g.alpha_z)
     << ", \"beta_z\": " << format_number(g.beta_z) << ", \"alpha_x\": " << format_number(g.alpha_x)
     << ", \"alpha_g\": " << format_number(g.alpha_g) << ", \"tau\": " << format_number(g.tau)
     << "},\n";
  os << "  \"basis\": {\"N\": " << m.basis.size()
     << ", \"centers\": " << number_array(m.basis.centers)
     << ", \"widths\": " << number_array(m.basis.widths) << "},\n";
  os << "  \"weights_shape\": [" << m.weights.rows() << ", " << m.weights.cols() << "],\n";
  os << "  \"weights\": "
     << number_array(std::vector<double>(m.weights.data(), m.weights.data() + m.weights.size()))
     << ",\n";
  os << "  \"start\": " << number_array(m.start.data) << ",\n";
  os << "  \"goal\": " << number_array(m.goal.data) << ",\n";
  os << "  \"scaling\": " << number_array(m.scaling) << ",\n";
  os << "  \"scaling_mask\": [";
  for (std::size_t i = 0; i < m.scaling_mask.size(); ++i) {
    os << (i ? ", " : "") << (m.scaling_mask[i] ? "true" : "false");
  }
  os << "]\n}\n";
  return os.str();
}

dmp::Model from_json(std::string_view text) {
  dmp::Model m;
  try {
    const json doc = json::parse(text);
    const int version = doc.at("format_version").get<int>();
    if (version != kFormatVersion) {
      fail(ErrorCode::Parse, "unsupported model format_version " + std::to_string(version));
    }
    m.descriptor = manifolds::Descriptor::parse(doc.at("descriptor").get<std::string>());
    const auto& g = doc.at("gains");
    m.gains.alpha_z = g.at("alpha_z").get<double>();
    m.gains.beta_z = g.at("beta_z").get<double>();
    m.gains.alpha_x = g.at("alpha_x").get<double>();
    m.gains.alpha_g = g.at("alpha_g").get<double>();
    m.gains.tau = g.at("tau").get<double>();

    const auto& b = doc.at("basis");
    const int n = b.at("N").get<int>();
    if (n < 2) fail(ErrorCode::InvalidN, "model basis needs N >= 2");
    m.basis.centers = b.at("centers").get<std::vector<double>>();
    m.basis.widths = b.at("widths").get<std::vector<double>>();
    if (m.basis.size() != n || static_cast<int>(m.basis.widths.size()) != n) {
      fail(ErrorCode::Parse, "basis arrays do not match N");
    }

    const auto shape = doc.at("weights_shape").get<std::vector<long>>();
    const int dim = m.descriptor.tangent_dim();
    if (shape.size() != 2 || shape[0] != dim || shape[1] != n) {
      fail(ErrorCode::Parse, "weights_shape must be [tangent_dim, N]");
    }
    const Eigen::VectorXd w = vector_field(doc, "weights", static_cast<Eigen::Index>(dim) * n);
    m.weights = Eigen::Map<const dmp::RowMatrix>(w.data(), dim, n);

    const int ambient = m.descriptor.ambient_dim();
    m.start = {m.descriptor, vector_field(doc, "start", ambient)};
    m.goal = {m.descriptor, vector_field(doc, "goal", ambient)};
    m.scaling = vector_field(doc, "scaling", dim);
    m.scaling_mask = doc.at("scaling_mask").get<std::vector<bool>>();
    if (static_cast<int>(m.scaling_mask.size()) != dim) {
      fail(ErrorCode::Parse, "scaling_mask must have tangent_dim entries");
    }
  } catch (const json::exception& e) {
    fail(ErrorCode::Parse, std::string("model document: ") + e.what());
  }
  m.gains.check();
  for (const auto* p : {&m.start, &m.goal}) {
    if (const auto r = manifolds::validate(*p); !r.valid) {
      fail(ErrorCode::InvalidPoint, "model point violates " + r.invariant);
    }
  }
  return m;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::Io, "cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  if (in.bad()) fail(ErrorCode::Io, "cannot read " + path.string());
  return os.str();
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::Io, "cannot create " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) fail(ErrorCode::Io, "cannot write " + path.string());
}

void save_model(const std::filesystem::path& path, const dmp::Model& model) {
  write_text(path, to_json(model));
}

dmp::Model load_model(const std::filesystem::path& path) {
  const std::string text = read_text(path);
  if (text.empty()) fail(ErrorCode::Io, path.string() + " is empty");
  return from_json(text);
}

}  // namespace gadmp::serialization

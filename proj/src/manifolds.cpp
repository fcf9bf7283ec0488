#include "gadmp/manifolds.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numbers>
#include <unsupported/Eigen/MatrixFunctions>

#include "gadmp/errors.hpp"
#include "gadmp/matrix_functions.hpp"

namespace gadmp::manifolds {

using Eigen::MatrixXd;
using Eigen::VectorXd;
using RowMajorMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ConstVec = Eigen::Ref<const VectorXd>;

namespace {
constexpr double kPi = std::numbers::pi;
// Below this norm of Q - (PᵀQ)P the sphere log treats Q as P (or its antipode).
constexpr double kSphereLogGuard = 1e-12;
}  // namespace

// ---------------------------------------------------------------------------
// Descriptor

struct Descriptor::Node {
  Kind kind = Kind::Euclidean;
  int m = 0;
  std::vector<Descriptor> parts;
  int ambient = 0;
  int tangent = 0;
  std::vector<int> ambient_offsets;
  std::vector<int> tangent_offsets;
};

namespace {

void require_dimension(int m, int min, const char* what) {
  if (m < min) {
    fail(ErrorCode::InvalidArgument,
         std::string(what) + " dimension must be >= " + std::to_string(min) + ", got " +
             std::to_string(m));
  }
}

}  // namespace

Descriptor::Descriptor() : node_([] {
  static const auto node = std::make_shared<const Node>();
  return node;
}()) {}

Descriptor::Descriptor(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Descriptor Descriptor::euclidean(int m) {
  require_dimension(m, 1, "euclidean");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Euclidean;
  n->m = m;
  n->ambient = n->tangent = m;
  return Descriptor(std::move(n));
}

Descriptor Descriptor::sphere(int m) {
  require_dimension(m, 1, "sphere");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Sphere;
  n->m = m;
  n->ambient = n->tangent = m + 1;
  return Descriptor(std::move(n));
}

Descriptor Descriptor::unit_quaternion() {
  auto n = std::make_shared<Node>();
  n->kind = Kind::UnitQuaternion;
  n->m = 3;
  n->ambient = 4;
  n->tangent = 3;
  return Descriptor(std::move(n));
}

Descriptor Descriptor::special_orthogonal(int m) {
  require_dimension(m, 2, "so");
  auto n = std::make_shared<Node>();
  n->kind = Kind::SpecialOrthogonal;
  n->m = m;
  n->ambient = m * m;
  n->tangent = m * (m - 1) / 2;
  return Descriptor(std::move(n));
}

Descriptor Descriptor::spd(int m) {
  require_dimension(m, 1, "spd");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Spd;
  n->m = m;
  n->ambient = m * m;
  n->tangent = m * (m + 1) / 2;
  return Descriptor(std::move(n));
}

Descriptor Descriptor::product(std::vector<Descriptor> parts) {
  if (parts.empty()) fail(ErrorCode::EmptyProduct, "product of zero manifolds");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Product;
  for (const auto& p : parts) {
    n->ambient_offsets.push_back(n->ambient);
    n->tangent_offsets.push_back(n->tangent);
    n->ambient += p.ambient_dim();
    n->tangent += p.tangent_dim();
  }
  n->parts = std::move(parts);
  return Descriptor(std::move(n));
}

Kind Descriptor::kind() const { return node_->kind; }
int Descriptor::dimension() const { return node_->m; }
int Descriptor::ambient_dim() const { return node_->ambient; }
int Descriptor::tangent_dim() const { return node_->tangent; }
std::span<const Descriptor> Descriptor::parts() const { return node_->parts; }
std::span<const int> Descriptor::ambient_offsets() const { return node_->ambient_offsets; }
std::span<const int> Descriptor::tangent_offsets() const { return node_->tangent_offsets; }

std::string_view Descriptor::kind_name() const {
  switch (kind()) {
    case Kind::Euclidean: return "euclidean";
    case Kind::Sphere: return "sphere";
    case Kind::UnitQuaternion: return "quat";
    case Kind::SpecialOrthogonal: return "so";
    case Kind::Spd: return "spd";
    case Kind::Product: return "product";
  }
  return "unknown";
}

std::string Descriptor::to_string() const {
  switch (kind()) {
    case Kind::UnitQuaternion:
      return "quat";
    case Kind::Product: {
      std::string s = "product(";
      for (std::size_t i = 0; i < parts().size(); ++i) {
        if (i) s += ',';
        s += parts()[i].to_string();
      }
      return s + ')';
    }
    default:
      return std::string(kind_name()) + ':' + std::to_string(dimension());
  }
}

bool operator==(const Descriptor& a, const Descriptor& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind() || a.dimension() != b.dimension()) return false;
  if (a.parts().size() != b.parts().size()) return false;
  return std::equal(a.parts().begin(), a.parts().end(), b.parts().begin());
}

namespace {

class DescriptorParser {
 public:
  explicit DescriptorParser(std::string_view text) : text_(text) {}

  Descriptor parse_all() {
    Descriptor d = parse_one();
    skip_space();
    if (pos_ != text_.size()) error("unexpected trailing input");
    return d;
  }

 private:
  Descriptor parse_one() {
    skip_space();
    const std::string word = identifier();
    if (word == "product") {
      expect('(');
      std::vector<Descriptor> parts;
      skip_space();
      if (peek() == ')') error("product needs at least one part");
      parts.push_back(parse_one());
      skip_space();
      while (peek() == ',') {
        ++pos_;
        parts.push_back(parse_one());
        skip_space();
      }
      expect(')');
      return Descriptor::product(std::move(parts));
    }
    if (word == "quat") return Descriptor::unit_quaternion();
    if (word != "euclidean" && word != "sphere" && word != "so" && word != "spd") {
      error("unknown manifold '" + word + "'");
    }
    expect(':');
    const int m = integer();
    if (word == "euclidean") return Descriptor::euclidean(m);
    if (word == "sphere") return Descriptor::sphere(m);
    if (word == "so") return Descriptor::special_orthogonal(m);
    return Descriptor::spd(m);
  }

  std::string identifier() {
    std::string out;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) {
      out += text_[pos_++];
    }
    if (out.empty()) error("expected a manifold name");
    return out;
  }

  int integer() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_ || pos_ - start > 6) error("expected a dimension");
    return std::stoi(std::string(text_.substr(start, pos_ - start)));
  }

  void expect(char c) {
    skip_space();
    if (peek() != c) error(std::string("expected '") + c + "'");
    ++pos_;
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void error(const std::string& what) const {
    fail(ErrorCode::Parse, "manifold spec '" + std::string(text_) + "': " + what +
                               " at offset " + std::to_string(pos_));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Descriptor Descriptor::parse(std::string_view text) {
  try {
    return DescriptorParser(text).parse_all();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::InvalidArgument) fail(ErrorCode::Parse, e.what());
    throw;
  }
}

Descriptor product_descriptor(std::vector<Descriptor> parts) {
  return Descriptor::product(std::move(parts));
}

// ---------------------------------------------------------------------------
// Per-kind maps

namespace {

MatrixXd square(const ConstVec& v, int m) {
  return Eigen::Map<const RowMajorMatrix>(v.data(), m, m);
}

VectorXd flatten(const MatrixXd& a) {
  RowMajorMatrix r = a;
  return Eigen::Map<const VectorXd>(r.data(), r.size());
}

struct SpdRoots {
  MatrixXd sqrt;
  MatrixXd inv_sqrt;
};

SpdRoots spd_roots(const MatrixXd& p) {
  const MatrixXd s = 0.5 * (p + p.transpose());
  Eigen::SelfAdjointEigenSolver<MatrixXd> eig(s);
  const VectorXd root = eig.eigenvalues().cwiseSqrt();
  const MatrixXd& v = eig.eigenvectors();
  return {v * root.asDiagonal() * v.transpose(),
          v * root.cwiseInverse().asDiagonal() * v.transpose()};
}

// --- sphere

VectorXd sphere_log(const ConstVec& p, const ConstVec& q) {
  const double c = std::clamp(p.dot(q), -1.0, 1.0);
  const VectorXd w = q - c * p;
  const double nw = w.norm();
  if (nw < kSphereLogGuard) {
    if (c < 0.0) fail(ErrorCode::InjectivityExceeded, "sphere log at the antipode");
    return VectorXd::Zero(p.size());
  }
  return std::atan2(nw, c) / nw * w;
}

void check_radius(double norm, double radius, const char* what) {
  if (!(norm < radius)) {
    fail(ErrorCode::InjectivityExceeded,
         std::string(what) + " exp: tangent norm " + std::to_string(norm) +
             " is not below the injectivity radius " + std::to_string(radius));
  }
}

VectorXd sphere_exp(const ConstVec& p, const ConstVec& v) {
  const double nv = v.norm();
  check_radius(nv, kPi, "sphere");
  if (nv == 0.0) return p;
  return std::cos(nv) * p + (std::sin(nv) / nv) * v;
}

// --- unit quaternion

VectorXd quat_log(const ConstVec& p, const ConstVec& q) {
  const Eigen::Vector4d pp = p;
  Eigen::Vector4d qq = q;
  if (pp.dot(qq) < 0.0) qq = -qq;
  const Eigen::Vector4d r = linalg::quat_mul(qq, linalg::quat_conj(pp));
  const Eigen::Vector3d u = r.tail<3>();
  const double nu = u.norm();
  if (nu == 0.0) return VectorXd::Zero(3);
  return std::atan2(nu, r[0]) / nu * u;
}

VectorXd quat_exp(const ConstVec& p, const ConstVec& v) {
  const double nv = v.norm();
  check_radius(nv, kPi, "quaternion");
  if (nv == 0.0) return p;
  Eigen::Vector4d r;
  r[0] = std::cos(nv);
  r.tail<3>() = (std::sin(nv) / nv) * v;
  return linalg::quat_mul(r, p);
}

// --- rotations

constexpr double kAxisNoise = 1e-14;

Eigen::Vector3d so3_log(const Eigen::Matrix3d& r) {
  const Eigen::Vector3d a(0.5 * (r(2, 1) - r(1, 2)), 0.5 * (r(0, 2) - r(2, 0)),
                          0.5 * (r(1, 0) - r(0, 1)));
  const double c = std::clamp(0.5 * (r.trace() - 1.0), -1.0, 1.0);
  const double s = a.norm();
  const double theta = std::atan2(s, c);
  if (s == 0.0 && c > 0.0) return Eigen::Vector3d::Zero();
  if (c < 0.0 && s < 1e-4) {
    // Near θ = π the antisymmetric part vanishes; read the axis from the
    // symmetric part R + Rᵀ = 2cI + 2(1-c)nnᵀ (the eigenvector for eigenvalue 1).
    const Eigen::Matrix3d b = 0.5 * (r + r.transpose()) - c * Eigen::Matrix3d::Identity();
    Eigen::Index k;
    b.diagonal().maxCoeff(&k);
    Eigen::Vector3d n = b.col(k).normalized();
    // Below kAxisNoise the antisymmetric part is rounding noise and cannot fix the sign.
    if (s > kAxisNoise) {
      if (n.dot(a) < 0.0) n = -n;
    } else {
      Eigen::Index big;
      n.cwiseAbs().maxCoeff(&big);
      if (n[big] < 0.0) n = -n;
    }
    return theta * n;
  }
  return (theta / s) * a;
}

Eigen::Matrix3d so3_exp(const Eigen::Vector3d& w) {
  const double theta = w.norm();
  double sa, sb;  // sinθ/θ and (1-cosθ)/θ²
  if (theta < 1e-6) {
    const double t2 = theta * theta;
    sa = 1.0 - t2 / 6.0;
    sb = 0.5 - t2 / 24.0;
  } else {
    sa = std::sin(theta) / theta;
    sb = (1.0 - std::cos(theta)) / (theta * theta);
  }
  const Eigen::Matrix3d k = linalg::hat(w);
  return Eigen::Matrix3d::Identity() + sa * k + sb * k * k;
}

VectorXd so_log(int m, const ConstVec& p, const ConstVec& q) {
  const MatrixXd r = square(q, m) * square(p, m).transpose();
  if (m == 2) return VectorXd::Constant(1, std::atan2(r(1, 0), r(0, 0)));
  if (m == 3) return so3_log(r);
  const MatrixXd l = r.log();
  const MatrixXd a = 0.5 * (l - l.transpose());
  VectorXd out(m * (m - 1) / 2);
  Eigen::Index k = 0;
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) out(k++) = a(j, i);
  }
  return out;
}

VectorXd so_exp(int m, const ConstVec& p, const ConstVec& v) {
  const MatrixXd r1 = square(p, m);
  if (m == 2) {
    const double c = std::cos(v(0)), s = std::sin(v(0));
    Eigen::Matrix2d rot;
    rot << c, -s, s, c;
    return flatten(rot * r1);
  }
  if (m == 3) {
    return flatten(so3_exp(v) * r1);
  }
  MatrixXd a = MatrixXd::Zero(m, m);
  Eigen::Index k = 0;
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      a(j, i) = v(k);
      a(i, j) = -v(k);
      ++k;
    }
  }
  return flatten(a.exp() * r1);
}

// --- SPD

VectorXd spd_log(int m, const ConstVec& p, const ConstVec& q) {
  const SpdRoots roots = spd_roots(square(p, m));
  const MatrixXd s = roots.inv_sqrt * square(q, m) * roots.inv_sqrt;
  return linalg::to_mandel(linalg::sym_log(s));
}

VectorXd spd_exp(int m, const ConstVec& p, const ConstVec& v) {
  const SpdRoots roots = spd_roots(square(p, m));
  const MatrixXd e = linalg::sym_exp(linalg::from_mandel(v, m));
  const MatrixXd out = roots.sqrt * e * roots.sqrt;
  return flatten(0.5 * (out + out.transpose()));
}

}  // namespace

VectorXd log_coords(const Descriptor& d, const ConstVec& p, const ConstVec& q) {
  if (d.kind() != Kind::Product && p == q) return VectorXd::Zero(d.tangent_dim());
  switch (d.kind()) {
    case Kind::Euclidean: return q - p;
    case Kind::Sphere: return sphere_log(p, q);
    case Kind::UnitQuaternion: return quat_log(p, q);
    case Kind::SpecialOrthogonal: return so_log(d.dimension(), p, q);
    case Kind::Spd: return spd_log(d.dimension(), p, q);
    case Kind::Product: {
      VectorXd out(d.tangent_dim());
      for (std::size_t i = 0; i < d.parts().size(); ++i) {
        const auto& part = d.parts()[i];
        const int a = d.ambient_offsets()[i];
        out.segment(d.tangent_offsets()[i], part.tangent_dim()) =
            log_coords(part, p.segment(a, part.ambient_dim()), q.segment(a, part.ambient_dim()));
      }
      return out;
    }
  }
  return {};
}

VectorXd exp_coords(const Descriptor& d, const ConstVec& p, const ConstVec& v) {
  if (d.kind() != Kind::Product && (v.array() == 0.0).all()) return p;
  switch (d.kind()) {
    case Kind::Euclidean: return p + v;
    case Kind::Sphere: return sphere_exp(p, v);
    case Kind::UnitQuaternion: return quat_exp(p, v);
    case Kind::SpecialOrthogonal: return so_exp(d.dimension(), p, v);
    case Kind::Spd: return spd_exp(d.dimension(), p, v);
    case Kind::Product: {
      VectorXd out(d.ambient_dim());
      for (std::size_t i = 0; i < d.parts().size(); ++i) {
        const auto& part = d.parts()[i];
        const int a = d.ambient_offsets()[i];
        out.segment(a, part.ambient_dim()) =
            exp_coords(part, p.segment(a, part.ambient_dim()),
                       v.segment(d.tangent_offsets()[i], part.tangent_dim()));
      }
      return out;
    }
  }
  return {};
}

void project_to_tangent(const Descriptor& d, const ConstVec& p, Eigen::Ref<VectorXd> v) {
  if (d.kind() == Kind::Sphere) {
    v -= p.dot(v) * p;
  } else if (d.kind() == Kind::Product) {
    for (std::size_t i = 0; i < d.parts().size(); ++i) {
      const auto& part = d.parts()[i];
      if (part.kind() != Kind::Sphere && part.kind() != Kind::Product) continue;
      project_to_tangent(part, p.segment(d.ambient_offsets()[i], part.ambient_dim()),
                         v.segment(d.tangent_offsets()[i], part.tangent_dim()));
    }
  }
}

double injectivity_radius(const Descriptor& d) {
  switch (d.kind()) {
    case Kind::Sphere:
    case Kind::SpecialOrthogonal:
      return kPi;
    case Kind::UnitQuaternion:
      return kPi / 2.0;
    case Kind::Product: {
      double r = std::numeric_limits<double>::infinity();
      for (const auto& part : d.parts()) r = std::min(r, injectivity_radius(part));
      return r;
    }
    default:
      return std::numeric_limits<double>::infinity();
  }
}

Point identity(const Descriptor& d) {
  VectorXd data = VectorXd::Zero(d.ambient_dim());
  switch (d.kind()) {
    case Kind::Euclidean:
      break;
    case Kind::Sphere:
      data(d.ambient_dim() - 1) = 1.0;
      break;
    case Kind::UnitQuaternion:
      data(0) = 1.0;
      break;
    case Kind::SpecialOrthogonal:
    case Kind::Spd:
      for (int i = 0; i < d.dimension(); ++i) data(i * d.dimension() + i) = 1.0;
      break;
    case Kind::Product:
      for (std::size_t i = 0; i < d.parts().size(); ++i) {
        const auto& part = d.parts()[i];
        data.segment(d.ambient_offsets()[i], part.ambient_dim()) = identity(part).data;
      }
      break;
  }
  return {d, data};
}

MatrixXd as_matrix(const Point& p) {
  const auto k = p.descriptor.kind();
  if (k != Kind::Spd && k != Kind::SpecialOrthogonal) {
    fail(ErrorCode::DescriptorMismatch, "as_matrix needs an SPD or SO point");
  }
  return square(p.data, p.descriptor.dimension());
}

Point from_matrix(const MatrixXd& m, const Descriptor& d) {
  if ((d.kind() != Kind::Spd && d.kind() != Kind::SpecialOrthogonal) ||
      m.rows() != d.dimension() || m.cols() != d.dimension()) {
    fail(ErrorCode::DescriptorMismatch, "from_matrix: matrix does not fit " + d.to_string());
  }
  return {d, flatten(m)};
}

// ---------------------------------------------------------------------------
// Validation and projection

ValidationReport validate(const Point& p, double tol) {
  const Descriptor& d = p.descriptor;
  if (p.data.size() != d.ambient_dim()) {
    return {false, "ambient_dim", static_cast<double>(p.data.size() - d.ambient_dim())};
  }
  if (!p.data.allFinite()) return {false, "finite", std::numeric_limits<double>::quiet_NaN()};
  switch (d.kind()) {
    case Kind::Euclidean:
      return {};
    case Kind::Sphere:
    case Kind::UnitQuaternion: {
      const double r = p.data.norm() - 1.0;
      if (std::abs(r) > tol) return {false, "unit_norm", r};
      return {};
    }
    case Kind::SpecialOrthogonal: {
      const MatrixXd r = square(p.data, d.dimension());
      const double ortho =
          (r.transpose() * r - MatrixXd::Identity(d.dimension(), d.dimension())).cwiseAbs().maxCoeff();
      if (ortho > tol) return {false, "orthogonality", ortho};
      const double det = r.determinant() - 1.0;
      if (std::abs(det) > tol) return {false, "determinant", det};
      return {};
    }
    case Kind::Spd: {
      const MatrixXd a = square(p.data, d.dimension());
      const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
      const double asym = (a - a.transpose()).cwiseAbs().maxCoeff() / scale;
      if (asym > tol) return {false, "symmetry", asym};
      const double lmin = linalg::min_eigenvalue(a);
      if (!(lmin > 0.0)) return {false, "positive_definite", lmin};
      return {};
    }
    case Kind::Product: {
      for (std::size_t i = 0; i < d.parts().size(); ++i) {
        const auto& part = d.parts()[i];
        Point sub{part, p.data.segment(d.ambient_offsets()[i], part.ambient_dim())};
        ValidationReport r = validate(sub, tol);
        if (!r.valid) {
          r.invariant = "part " + std::to_string(i) + ": " + r.invariant;
          return r;
        }
      }
      return {};
    }
  }
  return {};
}

namespace {

VectorXd project_raw(const Descriptor& d, const ConstVec& raw) {
  switch (d.kind()) {
    case Kind::Euclidean:
      return raw;
    case Kind::Sphere:
    case Kind::UnitQuaternion: {
      const double n = raw.norm();
      if (!(n >= 1e-12)) fail(ErrorCode::DegenerateInput, "cannot normalize a near-zero vector");
      return raw / n;
    }
    case Kind::SpecialOrthogonal: {
      const int m = d.dimension();
      Eigen::JacobiSVD<MatrixXd> svd(square(raw, m), Eigen::ComputeFullU | Eigen::ComputeFullV);
      if (!(svd.singularValues()(m - 1) >= 1e-12)) {
        fail(ErrorCode::DegenerateInput, "rotation candidate is singular");
      }
      MatrixXd u = svd.matrixU();
      if ((u * svd.matrixV().transpose()).determinant() < 0.0) u.col(m - 1) *= -1.0;
      return flatten(u * svd.matrixV().transpose());
    }
    case Kind::Spd: {
      const MatrixXd a = square(raw, d.dimension());
      return flatten(
          linalg::sym_apply(a, [](double v) { return std::max(v, kSpdEigenFloor); }));
    }
    case Kind::Product: {
      VectorXd out(d.ambient_dim());
      for (std::size_t i = 0; i < d.parts().size(); ++i) {
        const auto& part = d.parts()[i];
        const int a = d.ambient_offsets()[i];
        out.segment(a, part.ambient_dim()) = project_raw(part, raw.segment(a, part.ambient_dim()));
      }
      return out;
    }
  }
  return {};
}

void require_same(const Point& p, const Point& q) {
  if (!(p.descriptor == q.descriptor)) {
    fail(ErrorCode::DescriptorMismatch,
         p.descriptor.to_string() + " vs " + q.descriptor.to_string());
  }
}

void require_valid(const Point& p) {
  const ValidationReport r = validate(p);
  if (!r.valid) {
    fail(ErrorCode::InvalidPoint, p.descriptor.to_string() + " point violates " + r.invariant +
                                      " (residual " + std::to_string(r.residual) + ")");
  }
}

void require_tangent(const Descriptor& d, const ConstVec& p, const ConstVec& v) {
  if (d.kind() == Kind::Sphere) {
    const double along = p.dot(v);
    if (std::abs(along) > kValidationTol * std::max(1.0, v.norm())) {
      fail(ErrorCode::InvalidTangent,
           "sphere tangent vector has normal component " + std::to_string(along));
    }
  } else if (d.kind() == Kind::Product) {
    for (std::size_t i = 0; i < d.parts().size(); ++i) {
      const auto& part = d.parts()[i];
      require_tangent(part, p.segment(d.ambient_offsets()[i], part.ambient_dim()),
                      v.segment(d.tangent_offsets()[i], part.tangent_dim()));
    }
  }
}

}  // namespace

Point project(std::span<const double> raw, const Descriptor& d) {
  if (static_cast<int>(raw.size()) != d.ambient_dim()) {
    fail(ErrorCode::InvalidArgument, "project: expected " + std::to_string(d.ambient_dim()) +
                                         " values for " + d.to_string() + ", got " +
                                         std::to_string(raw.size()));
  }
  const Eigen::Map<const VectorXd> v(raw.data(), static_cast<Eigen::Index>(raw.size()));
  return {d, project_raw(d, v)};
}

// ---------------------------------------------------------------------------
// Checked API

TangentVector log_map(const Point& p, const Point& q) {
  require_same(p, q);
  require_valid(p);
  require_valid(q);
  return {p, log_coords(p.descriptor, p.data, q.data)};
}

Point exp_map(const Point& p, const VectorXd& v) {
  require_valid(p);
  if (v.size() != p.descriptor.tangent_dim()) {
    fail(ErrorCode::DescriptorMismatch, "tangent vector of length " + std::to_string(v.size()) +
                                            " for " + p.descriptor.to_string());
  }
  require_tangent(p.descriptor, p.data, v);
  return {p.descriptor, exp_coords(p.descriptor, p.data, v)};
}

Point exp_map(const TangentVector& v) { return exp_map(v.base, v.coords); }

double distance(const Point& p, const Point& q) { return log_map(p, q).norm(); }

Point geodesic_interpolate(const Point& p, const Point& q, double t) {
  if (!(t >= 0.0 && t <= 1.0)) {
    fail(ErrorCode::InvalidArgument, "interpolation parameter must lie in [0, 1]");
  }
  const TangentVector v = log_map(p, q);
  return {p.descriptor, exp_coords(p.descriptor, p.data, t * v.coords)};
}

std::vector<Point> split(const Point& p) {
  const Descriptor& d = p.descriptor;
  if (d.kind() != Kind::Product) return {p};
  std::vector<Point> out;
  for (std::size_t i = 0; i < d.parts().size(); ++i) {
    const auto& part = d.parts()[i];
    out.push_back({part, p.data.segment(d.ambient_offsets()[i], part.ambient_dim())});
  }
  return out;
}

Point concatenate(const std::vector<Point>& parts) {
  std::vector<Descriptor> ds;
  for (const auto& p : parts) ds.push_back(p.descriptor);
  Descriptor d = Descriptor::product(std::move(ds));
  VectorXd data(d.ambient_dim());
  for (std::size_t i = 0; i < parts.size(); ++i) {
    data.segment(d.ambient_offsets()[i], parts[i].data.size()) = parts[i].data;
  }
  return {d, data};
}

}  // namespace gadmp::manifolds

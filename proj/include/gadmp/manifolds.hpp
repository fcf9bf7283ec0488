#pragma once

// Riemannian manifolds used by geometry-aware movement primitives: exp/log
// maps, geodesic distance and interpolation, validation, projection, and
// Cartesian products.
//
// Points are flat arrays whose layout is fixed by the descriptor:
//   Euclidean(m)          ambient m,    tangent m
//   Sphere(m)             ambient m+1,  tangent m+1 (ambient vectors ⟂ base)
//   UnitQuaternion        ambient 4 [w x y z], tangent 3
//   SpecialOrthogonal(m)  ambient m² (row-major), tangent m(m-1)/2
//   Spd(m)                ambient m² (row-major), tangent m(m+1)/2 (Mandel)
//   Product[...]          concatenation of the parts
//
// Tangent coordinates are orthonormal for the metric, so the Euclidean norm of
// Log_P(Q) is the geodesic distance:
//   * UnitQuaternion: Log_P(Q) = log(Q * conj(P)) after flipping Q into P's
//     hemisphere; the norm is half the rotation angle.
//   * SpecialOrthogonal(3): ω with [ω]× = log(R₂R₁ᵀ); norm is the rotation angle.
//     SO(2) uses the angle, SO(m≥4) the entries a(j,i), i<j, of log(R₂R₁ᵀ).
//   * Spd(m): Mandel coordinates of logm(P^-½ Q P^-½), i.e. Log_P(Q) of the
//     affine-invariant metric expressed in the frame whitened by P^½.

#include <Eigen/Dense>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gadmp::manifolds {

enum class Kind { Euclidean, Sphere, UnitQuaternion, SpecialOrthogonal, Spd, Product };

inline constexpr double kValidationTol = 1e-9;
inline constexpr double kSpdEigenFloor = 1e-10;

class Descriptor {
 public:
  /// Euclidean(0); only useful as a placeholder.
  Descriptor();

  static Descriptor euclidean(int m);
  static Descriptor sphere(int m);
  static Descriptor unit_quaternion();
  static Descriptor special_orthogonal(int m);
  static Descriptor spd(int m);
  /// Throws EmptyProduct for an empty list.
  static Descriptor product(std::vector<Descriptor> parts);

  /// Parses `euclidean:m | sphere:m | quat | so:m | spd:m | product(a,b,...)`.
  static Descriptor parse(std::string_view text);

  Kind kind() const;
  /// The `m` of the kind; 3 for UnitQuaternion, 0 for products.
  int dimension() const;
  int ambient_dim() const;
  int tangent_dim() const;
  std::span<const Descriptor> parts() const;
  /// Offsets of each part inside the ambient / tangent arrays (products only).
  std::span<const int> ambient_offsets() const;
  std::span<const int> tangent_offsets() const;

  std::string to_string() const;
  /// Short kind name used in file metadata: euclidean, sphere, quat, so, spd, product.
  std::string_view kind_name() const;

  friend bool operator==(const Descriptor& a, const Descriptor& b);

 private:
  struct Node;
  explicit Descriptor(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

struct Point {
  Descriptor descriptor;
  Eigen::VectorXd data;
};

struct TangentVector {
  Point base;
  Eigen::VectorXd coords;

  double norm() const { return coords.norm(); }
};

struct ValidationReport {
  bool valid = true;
  std::string invariant;  // empty when valid
  double residual = 0.0;

  explicit operator bool() const { return valid; }
};

// Checked API: verifies descriptors and point invariants (InvalidPoint at
// kValidationTol) before computing.

TangentVector log_map(const Point& p, const Point& q);
Point exp_map(const Point& p, const Eigen::VectorXd& v);
Point exp_map(const TangentVector& v);
double distance(const Point& p, const Point& q);
Point geodesic_interpolate(const Point& p, const Point& q, double t);

ValidationReport validate(const Point& p, double tol = kValidationTol);

/// Nearest valid point: normalization, polar factor, or eigenvalue clamping.
Point project(std::span<const double> raw, const Descriptor& d);

Descriptor product_descriptor(std::vector<Descriptor> parts);

/// Splits a product point into its parts (a non-product point yields itself).
std::vector<Point> split(const Point& p);
Point concatenate(const std::vector<Point>& parts);

// Unchecked coordinate-level API for inner loops. Inputs are assumed valid and
// correctly sized; map-domain errors (InjectivityExceeded) are still raised.

Eigen::VectorXd log_coords(const Descriptor& d, const Eigen::Ref<const Eigen::VectorXd>& p,
                           const Eigen::Ref<const Eigen::VectorXd>& q);
Eigen::VectorXd exp_coords(const Descriptor& d, const Eigen::Ref<const Eigen::VectorXd>& p,
                           const Eigen::Ref<const Eigen::VectorXd>& v);
/// Removes the component of v normal to the tangent space at p (sphere parts
/// only; identity elsewhere).
void project_to_tangent(const Descriptor& d, const Eigen::Ref<const Eigen::VectorXd>& p,
                        Eigen::Ref<Eigen::VectorXd> v);

/// Largest tangent norm for which Exp followed by Log returns the input:
/// π for spheres and rotations, π/2 for hemisphere-aligned quaternions,
/// +∞ for Euclidean and SPD. For products, the smallest over the parts.
double injectivity_radius(const Descriptor& d);

/// Identity element / canonical anchor: origin, north pole e_{m}, [1,0,0,0], I, I.
Point identity(const Descriptor& d);

// Matrix views for the matrix manifolds.
Eigen::MatrixXd as_matrix(const Point& p);
Point from_matrix(const Eigen::MatrixXd& m, const Descriptor& d);

}  // namespace gadmp::manifolds

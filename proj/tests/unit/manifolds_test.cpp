#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "gadmp/errors.hpp"
#include "gadmp/manifolds.hpp"
#include "gadmp/matrix_functions.hpp"
#include "oracles.hpp"

namespace gadmp {
namespace {

using Eigen::Matrix2d;
using Eigen::Matrix3d;
using Eigen::MatrixXd;
using Eigen::Vector3d;
using Eigen::Vector4d;
using Eigen::VectorXd;
using manifolds::Descriptor;
using manifolds::Kind;
using manifolds::Point;
using testing::Rng;

constexpr double kPi = std::numbers::pi;

Point pt(const Descriptor& d, std::initializer_list<double> v) {
  VectorXd data(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) data(i++) = x;
  return {d, data};
}

Point spd_point(const MatrixXd& m) { return manifolds::from_matrix(m, Descriptor::spd(static_cast<int>(m.rows()))); }

ErrorCode code_of(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::Io;
}

// Every manifold kind used by the round-trip and property suites.
std::vector<Descriptor> all_kinds() {
  return {Descriptor::euclidean(3),
          Descriptor::sphere(2),
          Descriptor::sphere(3),
          Descriptor::unit_quaternion(),
          Descriptor::special_orthogonal(2),
          Descriptor::special_orthogonal(3),
          Descriptor::special_orthogonal(4),
          Descriptor::spd(2),
          Descriptor::spd(3),
          Descriptor::product({Descriptor::euclidean(2), Descriptor::spd(2)}),
          Descriptor::product({Descriptor::euclidean(3), Descriptor::unit_quaternion()}),
          Descriptor::product({Descriptor::sphere(2), Descriptor::special_orthogonal(3)})};
}

// Largest tangent norm sampled for a descriptor.
double sample_radius(const Descriptor& d) {
  const double r = manifolds::injectivity_radius(d);
  return std::isfinite(r) ? 0.9 * r : 5.0;
}

// ---------------------------------------------------------------------------
// Descriptors

TEST(Descriptor, Dimensions) {
  EXPECT_EQ(Descriptor::euclidean(4).ambient_dim(), 4);
  EXPECT_EQ(Descriptor::euclidean(4).tangent_dim(), 4);
  EXPECT_EQ(Descriptor::sphere(2).ambient_dim(), 3);
  EXPECT_EQ(Descriptor::sphere(2).tangent_dim(), 3);
  EXPECT_EQ(Descriptor::unit_quaternion().ambient_dim(), 4);
  EXPECT_EQ(Descriptor::unit_quaternion().tangent_dim(), 3);
  EXPECT_EQ(Descriptor::special_orthogonal(3).ambient_dim(), 9);
  EXPECT_EQ(Descriptor::special_orthogonal(4).tangent_dim(), 6);
  EXPECT_EQ(Descriptor::spd(3).ambient_dim(), 9);
  EXPECT_EQ(Descriptor::spd(3).tangent_dim(), 6);
  const Descriptor p = Descriptor::product({Descriptor::euclidean(3), Descriptor::unit_quaternion()});
  EXPECT_EQ(p.tangent_dim(), 6);
  EXPECT_EQ(p.ambient_dim(), 7);
}

TEST(Descriptor, ParseRoundTrip) {
  for (const std::string text : {"euclidean:2", "sphere:3", "quat", "so:3", "spd:2",
                                 "product(euclidean:2,spd:2)",
                                 "product(euclidean:3,product(quat,so:4))"}) {
    const Descriptor d = Descriptor::parse(text);
    EXPECT_EQ(d.to_string(), text);
    EXPECT_EQ(Descriptor::parse(d.to_string()), d);
  }
  EXPECT_EQ(Descriptor::parse(" product( euclidean:2 , spd:2 ) "),
            Descriptor::product({Descriptor::euclidean(2), Descriptor::spd(2)}));
}

TEST(Descriptor, ParseErrors) {
  for (const std::string text : {"", "banana", "euclidean", "euclidean:0", "euclidean:-1", "spd:x",
                                 "product()", "product(quat", "quat,", "so:1", "sphere:0"}) {
    SCOPED_TRACE(text);
    const ErrorCode c = code_of([&] { Descriptor::parse(text); });
    EXPECT_TRUE(c == ErrorCode::Parse || c == ErrorCode::EmptyProduct);
  }
  EXPECT_EQ(code_of([] { Descriptor::product({}); }), ErrorCode::EmptyProduct);
  EXPECT_EQ(code_of([] { manifolds::product_descriptor({}); }), ErrorCode::EmptyProduct);
}

TEST(Descriptor, ProductOffsets) {
  const Descriptor p = Descriptor::product({Descriptor::euclidean(2), Descriptor::spd(2), Descriptor::sphere(2)});
  const std::vector<int> amb(p.ambient_offsets().begin(), p.ambient_offsets().end());
  const std::vector<int> tan(p.tangent_offsets().begin(), p.tangent_offsets().end());
  EXPECT_EQ(amb, (std::vector<int>{0, 2, 6}));
  EXPECT_EQ(tan, (std::vector<int>{0, 2, 5}));
  EXPECT_EQ(p.ambient_dim(), 9);
  EXPECT_EQ(p.tangent_dim(), 8);
}

// ---------------------------------------------------------------------------
// log / exp examples

TEST(LogMap, QuaternionIdentityIsZero) {
  const Point q = pt(Descriptor::unit_quaternion(), {0.5, 0.5, 0.5, 0.5});
  EXPECT_EQ(manifolds::log_map(q, q).coords, Vector3d::Zero());
}

TEST(LogMap, QuaternionHalfAngle) {
  const Descriptor d = Descriptor::unit_quaternion();
  const VectorXd v = manifolds::log_map(pt(d, {1, 0, 0, 0}), pt(d, {std::cos(0.5), std::sin(0.5), 0, 0})).coords;
  EXPECT_NEAR(v(0), 0.5, 1e-15);
  EXPECT_NEAR(v(1), 0.0, 1e-15);
  EXPECT_NEAR(v(2), 0.0, 1e-15);
}

TEST(LogMap, QuaternionReferenceEndpoints) {
  const Descriptor d = Descriptor::unit_quaternion();
  const Vector4d q0 = Vector4d(-0.0092, -0.7126, 0.7015, 0.0090).normalized();
  const Vector4d qg = Vector4d(0.8104, 0.3364, 0.2141, 0.4293).normalized();
  const VectorXd v = manifolds::log_map({d, q0}, {d, qg}).coords;
  ASSERT_TRUE(v.allFinite());
  // Quaternion-algebra oracle: relative rotation q_g · q₀*, hemisphere-aligned.
  Vector4d rel = linalg::quat_mul(qg, linalg::quat_conj(q0));
  if (rel(0) < 0.0) rel = -rel;
  const Vector3d u = rel.tail<3>();
  const Vector3d expected = std::acos(std::min(rel(0), 1.0)) * u / u.norm();
  EXPECT_LT((v - expected).cwiseAbs().maxCoeff(), 1e-12);
  // The endpoints are not in one hemisphere, so the flip is active.
  EXPECT_LT(q0.dot(qg), 0.0);
}

TEST(LogMap, SpdDiagonal) {
  const VectorXd v = manifolds::log_map(spd_point(Matrix2d::Identity()),
                                        spd_point(Eigen::Vector2d(std::exp(1.0), 1.0).asDiagonal().toDenseMatrix()))
                         .coords;
  EXPECT_NEAR(v(0), 1.0, 1e-14);
  EXPECT_NEAR(v(1), 0.0, 1e-14);
  EXPECT_NEAR(v(2), 0.0, 1e-14);
}

TEST(ExpMap, ZeroTangentReturnsBase) {
  Rng rng(3);
  for (const Descriptor& d : all_kinds()) {
    SCOPED_TRACE(d.to_string());
    const Point p = testing::random_point(rng, d);
    EXPECT_EQ(manifolds::exp_map(p, VectorXd::Zero(d.tangent_dim())).data, p.data);
    EXPECT_EQ(manifolds::log_map(p, p).coords, VectorXd::Zero(d.tangent_dim()));
  }
}

TEST(ExpMap, SphereQuarterCircle) {
  const Descriptor d = Descriptor::sphere(2);
  const VectorXd v = (kPi / 2.0) * Vector3d::UnitX();
  const VectorXd q = manifolds::exp_map(pt(d, {0, 0, 1}), v).data;
  EXPECT_NEAR(q(0), 1.0, 1e-15);
  EXPECT_NEAR(q(1), 0.0, 1e-15);
  EXPECT_NEAR(q(2), 0.0, 1e-15);
}

TEST(ExpMap, SpdDiagonal) {
  const Point q = manifolds::exp_map(spd_point(Matrix2d::Identity()), Vector3d(1.0, 0.0, 0.0));
  const MatrixXd m = manifolds::as_matrix(q);
  EXPECT_NEAR(m(0, 0), std::exp(1.0), 1e-14);
  EXPECT_NEAR(m(1, 1), 1.0, 1e-14);
  EXPECT_NEAR(m(0, 1), 0.0, 1e-14);
  EXPECT_NEAR(m(1, 0), 0.0, 1e-14);
}

TEST(ExpMap, InjectivityExceeded) {
  EXPECT_EQ(code_of([] {
              manifolds::exp_map(pt(Descriptor::sphere(2), {0, 0, 1}), Vector3d(kPi, 0.0, 0.0));
            }),
            ErrorCode::InjectivityExceeded);
  EXPECT_EQ(code_of([] {
              manifolds::exp_map(pt(Descriptor::unit_quaternion(), {1, 0, 0, 0}), Vector3d(0.0, 3.5, 0.0));
            }),
            ErrorCode::InjectivityExceeded);
}

TEST(ExpMap, SphereRejectsNonTangent) {
  EXPECT_EQ(code_of([] { manifolds::exp_map(pt(Descriptor::sphere(2), {0, 0, 1}), Vector3d(0.1, 0.0, 0.1)); }),
            ErrorCode::InvalidTangent);
}

TEST(LogMap, SphereAntipodeRaises) {
  EXPECT_EQ(code_of([] {
              manifolds::log_map(pt(Descriptor::sphere(2), {0, 0, 1}), pt(Descriptor::sphere(2), {0, 0, -1}));
            }),
            ErrorCode::InjectivityExceeded);
}

TEST(LogMap, SphereNearbyPointsGiveSmallVector) {
  const Descriptor d = Descriptor::sphere(2);
  const Point p = pt(d, {0, 0, 1});
  const double eps = 1e-13;
  const Point q{d, Vector3d(eps, 0.0, std::sqrt(1.0 - eps * eps))};
  EXPECT_LE(manifolds::log_map(p, q).norm(), 2e-13);
}

TEST(LogMap, So3AtPi) {
  const Descriptor d = Descriptor::special_orthogonal(3);
  Matrix3d r = Eigen::AngleAxisd(kPi, Vector3d(1.0, -2.0, -3.0).normalized()).toRotationMatrix();
  const VectorXd w = manifolds::log_map(manifolds::identity(d), manifolds::from_matrix(r, d)).coords;
  EXPECT_NEAR(w.norm(), kPi, 1e-9);
  // Axis sign: largest-magnitude component positive.
  const Vector3d axis = w / w.norm();
  Eigen::Index k;
  axis.cwiseAbs().maxCoeff(&k);
  EXPECT_GT(axis(k), 0.0);
  EXPECT_LT((axis.cwiseAbs() - Vector3d(1.0, 2.0, 3.0) / std::sqrt(14.0)).cwiseAbs().maxCoeff(), 1e-8);
  // Rotation by π about ±axis is the same rotation.
  const MatrixXd back = manifolds::as_matrix(manifolds::exp_map(manifolds::identity(d), w));
  EXPECT_LT((back - r).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(LogMap, So3NearPi) {
  const Descriptor d = Descriptor::special_orthogonal(3);
  for (double gap : {1e-4, 1e-7, 1e-10}) {
    const Vector3d axis = Vector3d(0.3, 0.5, -0.8).normalized();
    Matrix3d r = Eigen::AngleAxisd(kPi - gap, axis).toRotationMatrix();
    const VectorXd w = manifolds::log_map(manifolds::identity(d), manifolds::from_matrix(r, d)).coords;
    EXPECT_NEAR(w.norm(), kPi - gap, 1e-7);
    EXPECT_LT(std::abs(std::abs(w.normalized().dot(axis)) - 1.0), 1e-7);
  }
}

TEST(LogMap, DescriptorMismatchAndInvalidPoints) {
  EXPECT_EQ(code_of([] {
              manifolds::log_map(pt(Descriptor::euclidean(2), {0, 0}), pt(Descriptor::euclidean(3), {0, 0, 0}));
            }),
            ErrorCode::DescriptorMismatch);
  EXPECT_EQ(code_of([] {
              manifolds::log_map(pt(Descriptor::unit_quaternion(), {2, 0, 0, 0}),
                                 pt(Descriptor::unit_quaternion(), {1, 0, 0, 0}));
            }),
            ErrorCode::InvalidPoint);
  EXPECT_EQ(code_of([] { manifolds::distance(pt(Descriptor::spd(2), {1, 2, 2, 1}), pt(Descriptor::spd(2), {1, 0, 0, 1})); }),
            ErrorCode::InvalidPoint);
}

// ---------------------------------------------------------------------------
// distance / interpolation examples

TEST(Distance, Examples) {
  Rng rng(5);
  const Point p = testing::random_point(rng, Descriptor::spd(2));
  EXPECT_EQ(manifolds::distance(p, p), 0.0);
  const Descriptor q = Descriptor::unit_quaternion();
  const Vector4d a = rng.unit_vector(4);
  EXPECT_EQ(manifolds::distance({q, a}, {q, -a}), 0.0);
  EXPECT_NEAR(manifolds::distance(spd_point(Matrix2d::Identity()),
                                  spd_point(Eigen::Vector2d(std::exp(2.0), 1.0).asDiagonal().toDenseMatrix())),
              2.0, 1e-14);
  const Descriptor prod = Descriptor::product({Descriptor::euclidean(2), Descriptor::spd(2)});
  const Point pk = testing::random_point(rng, prod);
  EXPECT_EQ(manifolds::distance(pk, pk), 0.0);
}

TEST(Interpolate, Examples) {
  const Descriptor d = Descriptor::sphere(2);
  const Point a = pt(d, {1, 0, 0});
  const Point b = pt(d, {0, 1, 0});
  EXPECT_EQ(manifolds::geodesic_interpolate(a, b, 0.0).data, a.data);
  EXPECT_LT((manifolds::geodesic_interpolate(a, b, 1.0).data - b.data).norm(), 1e-15);
  const VectorXd mid = manifolds::geodesic_interpolate(a, b, 0.5).data;
  EXPECT_NEAR(mid(0), std::sqrt(0.5), 1e-15);
  EXPECT_NEAR(mid(1), std::sqrt(0.5), 1e-15);
  EXPECT_NEAR(mid(2), 0.0, 1e-15);
}

// ---------------------------------------------------------------------------
// validate / project examples

TEST(Validate, Examples) {
  EXPECT_TRUE(manifolds::validate(pt(Descriptor::unit_quaternion(), {1, 0, 0, 0})).valid);
  const auto bad_q = manifolds::validate(pt(Descriptor::unit_quaternion(), {2, 0, 0, 0}), 1e-9);
  EXPECT_FALSE(bad_q.valid);
  EXPECT_EQ(bad_q.invariant, "unit_norm");
  EXPECT_NEAR(bad_q.residual, 1.0, 1e-15);
  const auto bad_spd = manifolds::validate(pt(Descriptor::spd(2), {1, 2, 2, 1}));
  EXPECT_FALSE(bad_spd.valid);
  EXPECT_EQ(bad_spd.invariant, "positive_definite");
  EXPECT_NEAR(bad_spd.residual, -1.0, 1e-14);
}

TEST(Validate, NamesEachInvariant) {
  EXPECT_EQ(manifolds::validate(pt(Descriptor::euclidean(2), {0, 0, 0})).invariant, "ambient_dim");
  EXPECT_EQ(manifolds::validate(pt(Descriptor::euclidean(2), {0, NAN})).invariant, "finite");
  EXPECT_EQ(manifolds::validate(pt(Descriptor::special_orthogonal(2), {1, 0, 0, 2})).invariant, "orthogonality");
  EXPECT_EQ(manifolds::validate(pt(Descriptor::special_orthogonal(2), {1, 0, 0, -1})).invariant, "determinant");
  EXPECT_EQ(manifolds::validate(pt(Descriptor::spd(2), {1, 0.5, 0.2, 1})).invariant, "symmetry");
  const Descriptor prod = Descriptor::product({Descriptor::euclidean(1), Descriptor::sphere(1)});
  const auto r = manifolds::validate(pt(prod, {0.0, 3.0, 0.0}));
  EXPECT_FALSE(r.valid);
  EXPECT_EQ(r.invariant, "part 1: unit_norm");
}

TEST(Project, Examples) {
  const Point q = manifolds::project(std::vector<double>{2, 0, 0, 0}, Descriptor::unit_quaternion());
  EXPECT_EQ(q.data, Vector4d(1, 0, 0, 0));

  Rng rng(9);
  for (const Descriptor& d : all_kinds()) {
    const Point p = testing::random_point(rng, d);
    const Point back = manifolds::project(std::vector<double>(p.data.data(), p.data.data() + p.data.size()), d);
    EXPECT_LT((back.data - p.data).cwiseAbs().maxCoeff(), 1e-12) << d.to_string();
  }

  const Point s = manifolds::project(std::vector<double>{1, 2, 2, 1}, Descriptor::spd(2));
  const MatrixXd m = manifolds::as_matrix(s);
  EXPECT_EQ(m(0, 1), m(1, 0));
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(m);
  EXPECT_NEAR(es.eigenvalues()(0), manifolds::kSpdEigenFloor, 1e-15);
  EXPECT_NEAR(es.eigenvalues()(1), 3.0, 1e-14);
}

TEST(Project, RotationPolarFactor) {
  Rng rng(12);
  const MatrixXd r = testing::random_rotation(rng, 3);
  const MatrixXd noisy = r + 1e-3 * MatrixXd::Random(3, 3);
  const VectorXd raw = testing::row_major(noisy);
  const Point p = manifolds::project(std::vector<double>(raw.data(), raw.data() + 9), Descriptor::special_orthogonal(3));
  EXPECT_LT((manifolds::as_matrix(p) - r).cwiseAbs().maxCoeff(), 1e-2);
  EXPECT_TRUE(manifolds::validate(p).valid);
  // Reflections are corrected to det +1.
  const VectorXd refl = testing::row_major(Eigen::Vector3d(1, 1, -1).asDiagonal().toDenseMatrix());
  const Point f = manifolds::project(std::vector<double>(refl.data(), refl.data() + 9), Descriptor::special_orthogonal(3));
  EXPECT_TRUE(manifolds::validate(f).valid);
}

TEST(Project, DegenerateInput) {
  EXPECT_EQ(code_of([] { manifolds::project(std::vector<double>{0, 0, 0, 0}, Descriptor::unit_quaternion()); }),
            ErrorCode::DegenerateInput);
  EXPECT_EQ(code_of([] { manifolds::project(std::vector<double>{1, 0, 0, 0}, Descriptor::special_orthogonal(2)); }),
            ErrorCode::DegenerateInput);
}

// ---------------------------------------------------------------------------
// Property suites

TEST(Properties, RoundTrip) {
  Rng rng(2024);
  for (const Descriptor& d : all_kinds()) {
    SCOPED_TRACE(d.to_string());
    const double radius = sample_radius(d);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const Point p = testing::random_point(rng, d);
      const VectorXd v = testing::random_tangent(rng, p, rng.uniform(0.0, radius));
      const VectorXd back = manifolds::log_map(p, manifolds::exp_map(p, v)).coords;
      worst = std::max(worst, (back - v).norm() / std::max(1.0, v.norm()));
    }
    EXPECT_LE(worst, 1e-8);
  }
}

TEST(Properties, Closure) {
  Rng rng(77);
  for (const Descriptor& d : all_kinds()) {
    SCOPED_TRACE(d.to_string());
    for (int i = 0; i < 300; ++i) {
      const Point p = testing::random_point(rng, d);
      const VectorXd v = testing::random_tangent(rng, p, rng.uniform(0.0, sample_radius(d)));
      const auto report = manifolds::validate(manifolds::exp_map(p, v), 1e-9);
      EXPECT_TRUE(report.valid) << report.invariant << " " << report.residual;
    }
  }
}

TEST(Properties, MetricConsistencyAndSymmetry) {
  Rng rng(78);
  for (const Descriptor& d : all_kinds()) {
    SCOPED_TRACE(d.to_string());
    for (int i = 0; i < 300; ++i) {
      const Point p = testing::random_point(rng, d);
      const Point q = manifolds::exp_map(p, testing::random_tangent(rng, p, rng.uniform(0.0, sample_radius(d))));
      EXPECT_EQ(manifolds::distance(p, q), manifolds::log_map(p, q).norm());
      EXPECT_NEAR(manifolds::distance(p, q), manifolds::distance(q, p), 1e-9);
    }
  }
}

TEST(Properties, GeodesicAdditivity) {
  Rng rng(79);
  for (const Descriptor& d : all_kinds()) {
    SCOPED_TRACE(d.to_string());
    for (int i = 0; i < 200; ++i) {
      const Point p = testing::random_point(rng, d);
      const Point q = manifolds::exp_map(p, testing::random_tangent(rng, p, rng.uniform(0.0, sample_radius(d))));
      const double total = manifolds::distance(p, q);
      for (double t : {0.25, 0.5, 0.75}) {
        const Point m = manifolds::geodesic_interpolate(p, q, t);
        EXPECT_NEAR(manifolds::distance(p, m) + manifolds::distance(m, q), total, 1e-8);
        EXPECT_NEAR(manifolds::distance(p, m), t * total, 1e-8);
      }
      EXPECT_LT(manifolds::distance(manifolds::geodesic_interpolate(p, q, 1.0), q), 1e-9);
    }
  }
}

TEST(Properties, ProductIsBlockwise) {
  Rng rng(80);
  const Descriptor prod = Descriptor::product(
      {Descriptor::euclidean(2), Descriptor::spd(2), Descriptor::unit_quaternion(), Descriptor::sphere(2)});
  for (int i = 0; i < 200; ++i) {
    const Point p = testing::random_point(rng, prod);
    const Point q = testing::random_point(rng, prod);
    const VectorXd v = testing::random_tangent(rng, p, 1.0);
    const VectorXd log_pq = manifolds::log_map(p, q).coords;
    const VectorXd exp_pv = manifolds::exp_map(p, v).data;
    const auto ps = manifolds::split(p);
    const auto qs = manifolds::split(q);
    double dist2 = 0.0;
    for (std::size_t k = 0; k < ps.size(); ++k) {
      const int to = prod.tangent_offsets()[k], ao = prod.ambient_offsets()[k];
      const int tn = prod.parts()[k].tangent_dim(), an = prod.parts()[k].ambient_dim();
      const VectorXd lk = manifolds::log_map(ps[k], qs[k]).coords;
      EXPECT_EQ(log_pq.segment(to, tn), lk);
      EXPECT_EQ(exp_pv.segment(ao, an), manifolds::exp_map(ps[k], VectorXd(v.segment(to, tn))).data);
      dist2 += lk.squaredNorm();
    }
    EXPECT_NEAR(manifolds::distance(p, q), std::sqrt(dist2), 1e-12);
    EXPECT_EQ(manifolds::concatenate(ps).data, p.data);
  }
}

TEST(Properties, SingleComponentProductMatchesPart) {
  Rng rng(81);
  const Descriptor e = Descriptor::euclidean(2);
  const Descriptor prod = Descriptor::product({e});
  const VectorXd a = rng.normal_vector(2), b = rng.normal_vector(2), v = rng.normal_vector(2);
  EXPECT_EQ(manifolds::log_map({prod, a}, {prod, b}).coords, manifolds::log_map({e, a}, {e, b}).coords);
  EXPECT_EQ(manifolds::exp_map({prod, a}, v).data, manifolds::exp_map({e, a}, v).data);
}

TEST(Properties, QuaternionSignInvariance) {
  Rng rng(82);
  const Descriptor d = Descriptor::unit_quaternion();
  for (int i = 0; i < 500; ++i) {
    const Point p = testing::random_point(rng, d);
    const Point q = testing::random_point(rng, d);
    EXPECT_EQ(manifolds::log_map(p, q).coords, manifolds::log_map(p, {d, -q.data}).coords);
  }
}

TEST(Properties, So3MatchesQuaternion) {
  Rng rng(83);
  const Descriptor dq = Descriptor::unit_quaternion();
  const Descriptor dr = Descriptor::special_orthogonal(3);
  for (int i = 0; i < 500; ++i) {
    const Vector4d a = rng.unit_vector(4), b = rng.unit_vector(4);
    const Matrix3d ra = Eigen::Quaterniond(a(0), a(1), a(2), a(3)).toRotationMatrix();
    const Matrix3d rb = Eigen::Quaterniond(b(0), b(1), b(2), b(3)).toRotationMatrix();
    const VectorXd lq = manifolds::log_map({dq, a}, {dq, b}).coords;
    const VectorXd lr = manifolds::log_map(manifolds::from_matrix(ra, dr), manifolds::from_matrix(rb, dr)).coords;
    EXPECT_NEAR(lr.norm(), 2.0 * lq.norm(), 1e-8);
    if (lq.norm() < 0.95 * kPi / 2.0) {
      EXPECT_LT((lr - 2.0 * lq).norm(), 1e-8);
    }
  }
}

TEST(Properties, So2IsAngle) {
  const Descriptor d = Descriptor::special_orthogonal(2);
  for (double a : {-3.0, -1.0, 0.2, 2.5}) {
    Matrix2d r;
    r << std::cos(a), -std::sin(a), std::sin(a), std::cos(a);
    EXPECT_NEAR(manifolds::log_map(manifolds::identity(d), manifolds::from_matrix(r, d)).coords(0), a, 1e-14);
  }
}

TEST(Properties, SpdTangentNormIsAffineInvariantDistance) {
  Rng rng(84);
  for (int i = 0; i < 100; ++i) {
    const MatrixXd a = testing::random_spd(rng, 3), b = testing::random_spd(rng, 3);
    // dist² = Σ log² λ_i(A⁻¹B)
    Eigen::GeneralizedSelfAdjointEigenSolver<MatrixXd> ges(b, a);
    const double expected = ges.eigenvalues().array().log().matrix().norm();
    EXPECT_NEAR(manifolds::distance(spd_point(a), spd_point(b)), expected, 1e-10);
  }
}

TEST(Properties, InjectivityRadius) {
  EXPECT_EQ(manifolds::injectivity_radius(Descriptor::sphere(2)), kPi);
  EXPECT_EQ(manifolds::injectivity_radius(Descriptor::special_orthogonal(3)), kPi);
  EXPECT_EQ(manifolds::injectivity_radius(Descriptor::unit_quaternion()), kPi / 2.0);
  EXPECT_TRUE(std::isinf(manifolds::injectivity_radius(Descriptor::spd(2))));
  EXPECT_EQ(manifolds::injectivity_radius(Descriptor::product({Descriptor::euclidean(2), Descriptor::sphere(2)})), kPi);
}

}  // namespace
}  // namespace gadmp

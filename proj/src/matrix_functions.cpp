#include "gadmp/matrix_functions.hpp"

#include <cmath>

namespace gadmp::linalg {

Eigen::MatrixXd sym_apply(const Eigen::MatrixXd& a, const std::function<double(double)>& f) {
  const Eigen::MatrixXd s = 0.5 * (a + a.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(s);
  Eigen::VectorXd mapped = eig.eigenvalues().unaryExpr(f);
  Eigen::MatrixXd out = eig.eigenvectors() * mapped.asDiagonal() * eig.eigenvectors().transpose();
  return 0.5 * (out + out.transpose());
}

Eigen::MatrixXd sym_log(const Eigen::MatrixXd& a) {
  return sym_apply(a, [](double v) { return std::log(v); });
}

Eigen::MatrixXd sym_exp(const Eigen::MatrixXd& a) {
  return sym_apply(a, [](double v) { return std::exp(v); });
}

Eigen::MatrixXd sym_sqrt(const Eigen::MatrixXd& a) {
  return sym_apply(a, [](double v) { return std::sqrt(v); });
}

Eigen::MatrixXd sym_inv_sqrt(const Eigen::MatrixXd& a) {
  return sym_apply(a, [](double v) { return 1.0 / std::sqrt(v); });
}

double min_eigenvalue(const Eigen::MatrixXd& a) {
  const Eigen::MatrixXd s = 0.5 * (a + a.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(s, Eigen::EigenvaluesOnly);
  return eig.eigenvalues()(0);
}

Eigen::VectorXd to_mandel(const Eigen::MatrixXd& sym) {
  const auto m = sym.rows();
  Eigen::VectorXd v(m * (m + 1) / 2);
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < m; ++i) v(k++) = sym(i, i);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = i + 1; j < m; ++j) v(k++) = M_SQRT2 * 0.5 * (sym(i, j) + sym(j, i));
  }
  return v;
}

Eigen::MatrixXd from_mandel(const Eigen::Ref<const Eigen::VectorXd>& v, int m) {
  Eigen::MatrixXd s(m, m);
  Eigen::Index k = 0;
  for (int i = 0; i < m; ++i) s(i, i) = v(k++);
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      s(i, j) = s(j, i) = v(k++) / M_SQRT2;
    }
  }
  return s;
}

}  // namespace gadmp::linalg

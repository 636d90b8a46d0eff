#include "cachedof/linalg.hpp"

#include <limits>

namespace cachedof {

Eigen::VectorXd column_scales(const Eigen::MatrixXcd& a) {
  Eigen::VectorXd scales(a.cols());
  for (Eigen::Index c = 0; c < a.cols(); ++c) {
    double norm = a.col(c).norm();
    scales(c) = norm > 0.0 ? norm : 1.0;
  }
  return scales;
}

Eigen::MatrixXcd normalize_columns(const Eigen::MatrixXcd& a) {
  Eigen::MatrixXcd out = a;
  const Eigen::VectorXd scales = column_scales(a);
  for (Eigen::Index c = 0; c < a.cols(); ++c) out.col(c) /= scales(c);
  return out;
}

Eigen::VectorXd normalized_singular_values(const Eigen::MatrixXcd& a) {
  if (a.size() == 0) return Eigen::VectorXd();
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(normalize_columns(a));
  return svd.singularValues();
}

std::size_t numerical_rank(const Eigen::MatrixXcd& a, double rel_tol) {
  const Eigen::VectorXd s = normalized_singular_values(a);
  if (s.size() == 0 || s(0) == 0.0) return 0;
  std::size_t rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > rel_tol * s(0)) ++rank;
  }
  return rank;
}

double normalized_condition(const Eigen::MatrixXcd& a) {
  const Eigen::VectorXd s = normalized_singular_values(a);
  if (s.size() == 0) return std::numeric_limits<double>::infinity();
  const double smallest = s(s.size() - 1);
  if (a.rows() < a.cols() || smallest == 0.0) return std::numeric_limits<double>::infinity();
  return s(0) / smallest;
}

namespace {

Eigen::MatrixXcd orthonormal_basis(const Eigen::MatrixXcd& basis) {
  Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(normalize_columns(basis));
  qr.setThreshold(kRankTolerance);
  const auto rank = qr.rank();
  Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(basis.rows(), rank);
  return q;
}

double residual_against(const Eigen::MatrixXcd& q, const Eigen::VectorXcd& b) {
  const double norm = b.norm();
  if (norm == 0.0) return 0.0;
  Eigen::VectorXcd unit = b / norm;
  Eigen::VectorXcd r = unit - q * (q.adjoint() * unit);
  return r.norm();
}

}  // namespace

double projection_residual(const Eigen::MatrixXcd& basis, const Eigen::VectorXcd& b) {
  return residual_against(orthonormal_basis(basis), b);
}

double max_projection_residual(const Eigen::MatrixXcd& basis, const Eigen::MatrixXcd& cols) {
  const Eigen::MatrixXcd q = orthonormal_basis(basis);
  double worst = 0.0;
  for (Eigen::Index c = 0; c < cols.cols(); ++c) worst = std::max(worst, residual_against(q, cols.col(c)));
  return worst;
}

}  // namespace cachedof

#pragma once

// Numerical rank and subspace tests for complex matrices whose columns span
// many orders of magnitude. Every test normalizes columns first; scaling a
// column never changes the column space.

#include <Eigen/Dense>

#include <cstddef>

namespace cachedof {

inline constexpr double kRankTolerance = 1e-9;

// Unit-norm columns; zero columns stay zero.
Eigen::MatrixXcd normalize_columns(const Eigen::MatrixXcd& a);

// Column norms used by normalize_columns (zero columns report 1).
Eigen::VectorXd column_scales(const Eigen::MatrixXcd& a);

// Singular values of the column-normalized matrix, descending.
Eigen::VectorXd normalized_singular_values(const Eigen::MatrixXcd& a);

// Count of singular values above rel_tol * sigma_max after normalization.
std::size_t numerical_rank(const Eigen::MatrixXcd& a, double rel_tol = kRankTolerance);

// sigma_max / sigma_min of the normalized matrix (infinity if singular).
double normalized_condition(const Eigen::MatrixXcd& a);

// ||(I - P_A) b|| / ||b|| with P_A the orthogonal projector onto colspace(A);
// 0 for b = 0.
double projection_residual(const Eigen::MatrixXcd& basis, const Eigen::VectorXcd& b);

// Largest projection_residual over the columns of `cols`.
double max_projection_residual(const Eigen::MatrixXcd& basis, const Eigen::MatrixXcd& cols);

}  // namespace cachedof

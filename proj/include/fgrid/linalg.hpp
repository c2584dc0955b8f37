#pragma once

#include <Eigen/Dense>
#include <algorithm>

#include "fgrid/common.hpp"

namespace fgrid {

using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

namespace detail {

inline void require_finite(const ComplexMatrix& M, const char* what) {
  if (!M.allFinite())
    throw std::invalid_argument(std::string(what) + ": non-finite entry");
}

template <class SvdType>
void require_converged(const SvdType& svd, const char* what) {
  if (svd.info() != Eigen::Success)
    throw std::runtime_error(std::string(what) + ": SVD did not converge");
}

} // namespace detail

inline double default_rank_tol(Eigen::Index rows, Eigen::Index cols) {
  return 1e-12 * double(std::max(rows, cols));
}

// Moore-Penrose pseudo-inverse via SVD. Singular values at or below
// rank_tol * sigma_max are treated as zero; rank_tol < 0 selects the default.
inline ComplexMatrix pinv(const ComplexMatrix& M, double rank_tol = -1.0) {
  detail::require_finite(M, "pinv");
  if (rank_tol < 0.0) rank_tol = default_rank_tol(M.rows(), M.cols());
  Eigen::BDCSVD<ComplexMatrix> svd(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
  detail::require_converged(svd, "pinv");
  const auto& s = svd.singularValues();
  const double cutoff = s.size() > 0 ? rank_tol * s(0) : 0.0;
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(s.size());
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > cutoff) inv(i) = 1.0 / s(i);
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint();
}

// Minimum-norm least-squares solution of A x ~ b.
inline ComplexVector lstsq(const ComplexMatrix& A, const ComplexVector& b,
                           double rank_tol = -1.0) {
  detail::require_finite(A, "lstsq");
  if (A.rows() != b.size())
    throw std::invalid_argument("lstsq: dimension mismatch");
  if (rank_tol < 0.0) rank_tol = default_rank_tol(A.rows(), A.cols());
  Eigen::BDCSVD<ComplexMatrix> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  detail::require_converged(svd, "lstsq");
  const auto& s = svd.singularValues();
  const double cutoff = s.size() > 0 ? rank_tol * s(0) : 0.0;
  ComplexVector y = svd.matrixU().adjoint() * b;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    y(i) = s(i) > cutoff ? y(i) / s(i) : cd(0.0);
  return svd.matrixV() * y;
}

// Singular values in descending order.
inline Eigen::VectorXd singular_values(const ComplexMatrix& M) {
  detail::require_finite(M, "singular_values");
  Eigen::BDCSVD<ComplexMatrix> svd(M);
  detail::require_converged(svd, "singular_values");
  return svd.singularValues();
}

// sigma_max / sigma_min; infinity for a singular matrix.
inline double condition_number(const ComplexMatrix& M) {
  const Eigen::VectorXd s = singular_values(M);
  if (s.size() == 0 || s(s.size() - 1) == 0.0)
    return std::numeric_limits<double>::infinity();
  return s(0) / s(s.size() - 1);
}

} // namespace fgrid

#pragma once

#include <vector>

#include "fgrid/frame.hpp"

namespace fgrid {

// Density compensation operator: diagonal for r = 1, (2r-1)-banded otherwise.
// Only the band is stored: band(i - j + r - 1, j) holds D(i, j).
struct DcfOperator {
  int n = 0;
  int r = 1;
  ComplexMatrix band; // (2r-1) x (2n+1)
  std::vector<int> degenerate_columns;

  bool diagonal() const { return r == 1; }
  int size() const { return 2 * n + 1; }

  cd entry(int i, int j) const {
    const int off = i - j;
    if (i < 0 || i >= size() || j < 0 || j >= size()) return cd(0.0);
    if (off < -(r - 1) || off > r - 1) return cd(0.0);
    return band(off + r - 1, j);
  }

  ComplexVector apply(const ComplexVector& f) const {
    if (f.size() != size()) throw std::invalid_argument("dcf apply: dimension mismatch");
    ComplexVector y = ComplexVector::Zero(size());
    for (int j = 0; j < size(); ++j)
      for (int off = -(r - 1); off <= r - 1; ++off) {
        const int i = j + off;
        if (i >= 0 && i < size()) y(i) += band(off + r - 1, j) * f(j);
      }
    return y;
  }

  ComplexMatrix dense() const {
    ComplexMatrix D = ComplexMatrix::Zero(size(), size());
    for (int j = 0; j < size(); ++j)
      for (int off = -(r - 1); off <= r - 1; ++off) {
        const int i = j + off;
        if (i >= 0 && i < size()) D(i, j) = band(off + r - 1, j);
      }
    return D;
  }

  ComplexVector main_diagonal() const {
    ComplexVector d(size());
    for (int j = 0; j < size(); ++j) d(j) = entry(j, j);
    return d;
  }

  void take_real_part() { band = band.real().cast<cd>(); }
};

// Quadrature weights alpha_k = lambda_{k+1} - lambda_k; the last weight closes
// with the backward gap so all weights stay positive.
inline DcfOperator trapezoid_dcf(const SamplingPattern& p) {
  validate(p);
  DcfOperator D;
  D.n = p.n;
  D.r = 1;
  D.band.resize(1, D.size());
  const int last = 2 * p.n;
  for (int j = 0; j < last; ++j) D.band(0, j) = cd(p.lambdas[j + 1] - p.lambdas[j], 0.0);
  D.band(0, last) = cd(p.lambdas[last] - p.lambdas[last - 1], 0.0);
  return D;
}

// T = Psi^* Psi Omega, the matrix all optimal-DCF solves run against.
inline ComplexMatrix system_t_matrix(const SpectralSystem& sys) {
  return (sys.Psi.adjoint() * sys.Psi) * sys.Omega;
}

// alpha_j = <Psi*_j, T_j> / ||T_j||^2, the per-column scalar least-squares
// minimizer of ||alpha T_j - Psi*_j||.
inline DcfOperator optimal_diagonal_from(const ComplexMatrix& T,
                                         const ComplexMatrix& psi_adj, int n) {
  DcfOperator D;
  D.n = n;
  D.r = 1;
  D.band.resize(1, D.size());
  for (int j = 0; j < D.size(); ++j) {
    const double denom = T.col(j).squaredNorm();
    if (denom == 0.0) {
      D.band(0, j) = cd(0.0);
      D.degenerate_columns.push_back(j);
      continue;
    }
    D.band(0, j) = T.col(j).dot(psi_adj.col(j)) / denom;
  }
  return D;
}

inline DcfOperator optimal_diagonal(const SpectralSystem& sys) {
  return optimal_diagonal_from(system_t_matrix(sys), sys.Psi.adjoint(), sys.pattern.n);
}

// Per-column banded least squares: restrict T to the columns in j's band and
// solve min ||T_band d - Psi*_j|| by Tikhonov-damped normal equations.
// r = n+1 requests the full bandwidth: every column is solved over all rows,
// which makes Omega D equal to Psi^dagger whenever T has full rank.
inline DcfOperator optimal_banded_from(const ComplexMatrix& T,
                                       const ComplexMatrix& psi_adj, int n, int r) {
  if (r < 1 || r > n + 1)
    throw std::invalid_argument("optimal_banded: r must lie in [1, n+1]");
  const int size = 2 * n + 1;
  DcfOperator D;
  D.n = n;

  if (r == n + 1) {
    // unrestricted: the per-column problems share the full matrix, so one
    // Gram factorization serves every column
    D.r = size;
    D.band = ComplexMatrix::Zero(2 * size - 1, size);
    ComplexMatrix G = T.adjoint() * T;
    const double tr = G.trace().real();
    if (!(tr > 0.0)) {
      for (int j = 0; j < size; ++j) D.degenerate_columns.push_back(j);
      return D;
    }
    G.diagonal().array() += cd(1e-14 * tr, 0.0);
    const Eigen::LDLT<ComplexMatrix> ldlt(G);
    const ComplexMatrix rhs = T.adjoint() * psi_adj;
    for (int j = 0; j < size; ++j) {
      const ComplexVector d = ldlt.solve(rhs.col(j));
      for (int i = 0; i < size; ++i) D.band(i - j + size - 1, j) = d(i);
    }
    return D;
  }

  D.r = r;
  D.band = ComplexMatrix::Zero(2 * r - 1, size);

  for (int j = 0; j < size; ++j) {
    const int lo = std::max(0, j - (r - 1));
    const int hi = std::min(size - 1, j + (r - 1));
    const int len = hi - lo + 1;
    const auto block = T.middleCols(lo, len);
    ComplexMatrix G = block.adjoint() * block;
    const double tr = G.trace().real();
    if (!(tr > 0.0)) {
      D.degenerate_columns.push_back(j);
      continue;
    }
    G.diagonal().array() += cd(1e-14 * tr, 0.0);
    const ComplexVector d = G.ldlt().solve(block.adjoint() * psi_adj.col(j));
    for (int i = lo; i <= hi; ++i) D.band(i - j + r - 1, j) = d(i - lo);
  }
  return D;
}

inline DcfOperator optimal_banded(const SpectralSystem& sys, int r) {
  return optimal_banded_from(system_t_matrix(sys), sys.Psi.adjoint(), sys.pattern.n, r);
}

// c = Omega D fhat. The Omega product is an explicit deterministic loop so the
// kernel-truncated gridding sum reproduces it term for term.
inline CoefficientVector fcg_coeffs(const SpectralSystem& sys, const DcfOperator& D,
                                    const ComplexVector& fhat) {
  if (fhat.size() != sys.Omega.cols() || D.size() != int(sys.Omega.cols()))
    throw std::invalid_argument("fcg_coeffs: dimension mismatch");
  const ComplexVector v = D.apply(fhat);
  ComplexVector c = ComplexVector::Zero(sys.Omega.rows());
  for (Eigen::Index li = 0; li < sys.Omega.rows(); ++li) {
    cd acc = 0.0;
    for (Eigen::Index jj = 0; jj < sys.Omega.cols(); ++jj)
      acc += sys.Omega(li, jj) * v(jj);
    c(li) = acc;
  }
  return {sys.m, std::move(c)};
}

// ||T D - Psi*||_F, evaluated bandwise.
inline double dcf_objective(const ComplexMatrix& T, const ComplexMatrix& psi_adj,
                            const DcfOperator& D) {
  double acc = 0.0;
  for (int j = 0; j < D.size(); ++j) {
    ComplexVector col = -psi_adj.col(j);
    for (int off = -(D.r - 1); off <= D.r - 1; ++off) {
      const int i = j + off;
      if (i >= 0 && i < D.size()) col += T.col(i) * D.band(off + D.r - 1, j);
    }
    acc += col.squaredNorm();
  }
  return std::sqrt(acc);
}

inline double dcf_objective(const SpectralSystem& sys, const DcfOperator& D) {
  return dcf_objective(system_t_matrix(sys), sys.Psi.adjoint(), D);
}

} // namespace fgrid

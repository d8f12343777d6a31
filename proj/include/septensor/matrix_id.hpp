#pragma once

#include <cmath>
#include <vector>

#include "septensor/pivoted_qr.hpp"
#include "septensor/rng.hpp"
#include "septensor/types.hpp"

namespace septensor {

// Column interpolative decomposition A ~= a_c * p, where a_c holds k columns
// of A (bit-identical) and p contains a k x k identity sub-block at the
// skeleton positions.
struct MatrixId {
  std::vector<Index> skeleton_indices;  // L_k, in pivot order
  Matrix p;                             // k x n coefficient matrix
  Matrix a_c;                           // m x k column skeleton
};

namespace detail {

// Back-substitution solve R11 * T = R12 with truncation of tiny diagonals
// (T is not unique when R11 is ill-conditioned; the truncated solve picks a
// bounded representative).
inline Matrix solve_upper_truncated(const Matrix& r11, const Matrix& r12) {
  const Index k = r11.rows();
  Matrix t = Matrix::Zero(k, r12.cols());
  if (k == 0) return t;
  const double cutoff = 1e-14 * std::abs(r11(0, 0));
  for (Index i = k; i-- > 0;) {
    Eigen::RowVectorXd rhs = r12.row(i);
    for (Index j = i + 1; j < k; ++j) rhs -= r11(i, j) * t.row(j);
    t.row(i) = (std::abs(r11(i, i)) > cutoff) ? (rhs / r11(i, i)).eval()
                                              : Eigen::RowVectorXd::Zero(r12.cols());
  }
  return t;
}

// Recompute T for a given column order: thin QR of the skeleton block, then
// project the remaining columns.
inline Matrix coeffs_for_order(const Matrix& a, const std::vector<Index>& perm, Index k) {
  const Index m = a.rows();
  const Index n = a.cols();
  Matrix ac(m, k), rest(m, n - k);
  for (Index j = 0; j < k; ++j) ac.col(j) = a.col(perm[j]);
  for (Index j = k; j < n; ++j) rest.col(j - k) = a.col(perm[j]);
  Eigen::HouseholderQR<Matrix> qr(ac);
  Matrix r11 = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
  Matrix q = qr.householderQ() * Matrix::Identity(m, k);
  return solve_upper_truncated(r11, q.transpose() * rest);
}

// Greedy column swaps enforcing the |T_ij| <= 1 bound of the deterministic
// ID. Each swap increases the skeleton volume by the offending factor, so
// the loop terminates.
inline Matrix enforce_entry_bound(const Matrix& a, std::vector<Index>& perm, Index k, Matrix t) {
  const Index n = a.cols();
  if (k == 0 || k == n) return t;
  const double bound = 1.0 + 1e-12;
  for (int pass = 0; pass < 4 * static_cast<int>(n); ++pass) {
    Index bi = -1, bj = -1;
    double best = bound;
    for (Index i = 0; i < k; ++i)
      for (Index j = 0; j < n - k; ++j)
        if (std::abs(t(i, j)) > best) {
          best = std::abs(t(i, j));
          bi = i;
          bj = j;
        }
    if (bi < 0) break;
    std::swap(perm[bi], perm[k + bj]);
    t = coeffs_for_order(a, perm, k);
  }
  return t;
}

inline MatrixId assemble_id(const Matrix& a, const std::vector<Index>& perm, Index k,
                            const Matrix& t) {
  const Index n = a.cols();
  MatrixId id;
  id.skeleton_indices.assign(perm.begin(), perm.begin() + k);
  id.p = Matrix::Zero(k, n);
  for (Index j = 0; j < k; ++j) id.p(j, perm[j]) = 1.0;
  for (Index j = k; j < n; ++j) id.p.col(perm[j]) = t.col(j - k);
  id.a_c.resize(a.rows(), k);
  for (Index j = 0; j < k; ++j) id.a_c.col(j) = a.col(perm[j]);
  return id;
}

}  // namespace detail

// Deterministic matrix ID via pivoted QR.
inline MatrixId matrix_id(const Matrix& a, const RankSpec& spec) {
  check_finite(a, "matrix_id");
  const Index m = a.rows();
  const Index n = a.cols();
  if (spec.is_fixed() && spec.rank() > std::min(m, n))
    throw invalid_rank_error("matrix_id: requested rank exceeds min(m,n)");

  PivotedQr qr = spec.is_fixed() ? pivoted_qr(a, 0.0, spec.rank(), /*want_residual=*/false)
                                 : pivoted_qr(a, spec.eps(), -1, /*want_residual=*/false);
  const Index k = qr.rank;
  std::vector<Index> perm = qr.perm;
  Matrix t = detail::solve_upper_truncated(qr.r.topLeftCorner(k, k),
                                           qr.r.rightCols(n - k));
  t = detail::enforce_entry_bound(a, perm, k, std::move(t));
  return detail::assemble_id(a, perm, k, t);
}

// Gaussian sketch of the range: Y = A * R, Q from unpivoted QR of Y.
inline Matrix randomized_range(const Matrix& a, Index ell, Rng& rng) {
  check_finite(a, "randomized_range");
  const Index m = a.rows();
  const Index n = a.cols();
  if (ell > std::min(m, n)) throw invalid_rank_error("randomized_range: ell exceeds min(m,n)");
  Matrix r(n, ell);
  for (Index j = 0; j < ell; ++j)
    for (Index i = 0; i < n; ++i) r(i, j) = rng.normal();
  Matrix y = a * r;
  Eigen::HouseholderQR<Matrix> qr(y);
  return qr.householderQ() * Matrix::Identity(m, ell);
}

// Randomized matrix ID: deterministic ID of the sketch Y = R^T A, lifted back
// to the columns of A.
inline MatrixId randomized_matrix_id(const Matrix& a, Index ell, const RankSpec& spec,
                                     Rng& rng) {
  check_finite(a, "randomized_matrix_id");
  const Index m = a.rows();
  const Index n = a.cols();
  if (spec.is_fixed() && spec.rank() > std::min(m, n))
    throw invalid_rank_error("randomized_matrix_id: requested rank exceeds min(m,n)");
  if (spec.is_fixed() && spec.rank() > ell)
    throw invalid_rank_error("randomized_matrix_id: requested rank exceeds ell");

  Matrix r(m, ell);
  for (Index j = 0; j < ell; ++j)
    for (Index i = 0; i < m; ++i) r(i, j) = rng.normal();
  Matrix y = r.transpose() * a;  // ell x n

  RankSpec yspec = spec.is_fixed() ? RankSpec::fixed(std::min(spec.rank(), std::min(ell, n)))
                                   : spec;
  MatrixId yid = matrix_id(y, yspec);
  const Index k = static_cast<Index>(yid.skeleton_indices.size());

  MatrixId id;
  id.skeleton_indices = yid.skeleton_indices;
  id.p = std::move(yid.p);
  id.a_c.resize(m, k);
  for (Index j = 0; j < k; ++j) id.a_c.col(j) = a.col(id.skeleton_indices[j]);
  return id;
}

}  // namespace septensor

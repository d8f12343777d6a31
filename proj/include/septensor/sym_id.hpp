#pragma once

#include <vector>

#include "septensor/matrix_id.hpp"
#include "septensor/pivoted_qr.hpp"
#include "septensor/singular_values.hpp"
#include "septensor/types.hpp"

namespace septensor {

// Symmetric interpolative decomposition B ~= p^T * g_s * p with g_s the
// skeleton sub-matrix of B (bit-identical entries).
struct SymId {
  std::vector<Index> skeleton_indices;
  Matrix p;    // k x n
  Matrix g_s;  // k x k
  double eps_k = 0.0;        // pivoted-QR residual of B measured during construction
  bool indefinite = false;   // input failed the PSD check; error bound not guaranteed
};

inline SymId sym_id(const Matrix& b, const RankSpec& spec) {
  check_finite(b, "sym_id");
  const Index n = b.cols();
  if (b.rows() != n) throw invalid_input_error("sym_id: matrix not square");
  if ((b - b.transpose()).norm() > 1e-12 * std::max(b.norm(), 1e-300))
    throw invalid_input_error("sym_id: matrix not symmetric");
  if (spec.is_fixed() && spec.rank() > n)
    throw invalid_rank_error("sym_id: requested rank exceeds n");

  SymId out;
  {
    Eigen::SelfAdjointEigenSolver<Matrix> es(b, Eigen::EigenvaluesOnly);
    const double lmin = es.eigenvalues().minCoeff();
    const double lmax = es.eigenvalues().cwiseAbs().maxCoeff();
    out.indefinite = lmin < -1e-10 * lmax;
  }

  // (i) pivoted QR of B: column skeleton and residual eps_k
  PivotedQr qr = spec.is_fixed() ? pivoted_qr(b, 0.0, spec.rank())
                                 : pivoted_qr(b, spec.eps());
  const Index k = qr.rank;
  out.eps_k = qr.residual_norm;
  out.skeleton_indices.assign(qr.perm.begin(), qr.perm.begin() + k);

  Matrix bc(n, k);
  for (Index j = 0; j < k; ++j) bc.col(j) = b.col(out.skeleton_indices[j]);

  // (ii) unpivoted QR of B_c^* with columns in pivot order
  Matrix z(k, n);
  for (Index j = 0; j < n; ++j) z.col(j) = bc.row(qr.perm[j]).transpose();
  Eigen::HouseholderQR<Matrix> zqr(z);
  Matrix rt = zqr.matrixQR().topRows(std::min(k, n)).triangularView<Eigen::Upper>();

  // (iii) S from the least-squares solve against R~11
  Matrix s = detail::solve_upper_truncated(rt.topLeftCorner(k, k), rt.rightCols(n - k));

  // (iv) P = [I|S] P_c^*
  out.p = Matrix::Zero(k, n);
  for (Index j = 0; j < k; ++j) out.p(j, qr.perm[j]) = 1.0;
  for (Index j = k; j < n; ++j) out.p.col(qr.perm[j]) = s.col(j - k);

  out.g_s.resize(k, k);
  for (Index i = 0; i < k; ++i)
    for (Index j = 0; j < k; ++j)
      out.g_s(i, j) = b(out.skeleton_indices[i], out.skeleton_indices[j]);
  return out;
}

}  // namespace septensor

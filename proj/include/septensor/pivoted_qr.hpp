#pragma once

#include <cmath>
#include <vector>

#include "septensor/types.hpp"

namespace septensor {

// Householder QR with column pivoting, truncated at a relative diagonal
// tolerance. Columns are pivoted by largest remaining norm, with downdated
// norms recomputed once they fall below 1e-8 of their originals; ties go to
// the lowest column index so the factorization is deterministic.
struct PivotedQr {
  Matrix q;                  // m x k, orthonormal columns
  Matrix r;                  // k x n, upper trapezoidal, columns in pivot order
  std::vector<Index> perm;   // column permutation: r column j corresponds to a.col(perm[j])
  Index rank = 0;
  double residual_norm = 0;  // spectral norm of the discarded trailing block
};

// want_residual controls the spectral-norm pass over the discarded trailing
// block; it costs a full SVD of that block, which dominates everything else
// on wide inputs, so callers that never read residual_norm should skip it.
inline PivotedQr pivoted_qr(const Matrix& a, double tol, Index max_rank = -1,
                            bool want_residual = true) {
  check_finite(a, "pivoted_qr");
  if (!(tol >= 0.0 && tol < 1.0)) throw config_error("pivoted_qr: tol must be in [0,1)");

  const Index m = a.rows();
  const Index n = a.cols();
  Index kmax = std::min(m, n);
  if (max_rank >= 0) kmax = std::min(kmax, max_rank);

  Matrix w = a;  // working copy, reduced in place
  std::vector<Index> perm(n);
  for (Index j = 0; j < n; ++j) perm[j] = j;

  Vector norms(n), orig_norms(n);
  for (Index j = 0; j < n; ++j) norms(j) = orig_norms(j) = w.col(j).norm();

  std::vector<Vector> reflectors;   // Householder vectors, v(0) = 1
  std::vector<double> taus;
  double r11 = 0.0;
  Index k = 0;

  while (k < kmax) {
    // pivot: largest remaining norm, lowest index on ties
    Index piv = k;
    for (Index j = k + 1; j < n; ++j)
      if (norms(j) > norms(piv)) piv = j;
    if (piv != k) {
      w.col(k).swap(w.col(piv));
      std::swap(perm[k], perm[piv]);
      std::swap(norms(k), norms(piv));
      std::swap(orig_norms(k), orig_norms(piv));
    }

    const double colnorm = w.col(k).tail(m - k).norm();
    if (k == 0) r11 = colnorm;
    if (colnorm <= tol * r11) break;

    // Householder reflector annihilating w(k+1:m, k)
    Vector v = Vector::Zero(m - k);
    double tau = 0.0;
    double alpha = w(k, k);
    if (m - k > 1) {
      const double beta = (alpha >= 0 ? -colnorm : colnorm);
      v = w.col(k).tail(m - k);
      v(0) = alpha - beta;
      const double vnorm2 = v.squaredNorm();
      if (vnorm2 > 0) {
        tau = 2.0 / vnorm2;
        // apply to trailing columns
        for (Index j = k + 1; j < n; ++j) {
          const double s = tau * v.dot(w.col(j).tail(m - k));
          w.col(j).tail(m - k) -= s * v;
        }
      }
      w(k, k) = beta;
      w.col(k).tail(m - k - 1).setZero();
    }
    reflectors.push_back(std::move(v));
    taus.push_back(tau);

    // downdate norms, recompute when cancellation looms
    for (Index j = k + 1; j < n; ++j) {
      const double t = norms(j) * norms(j) - w(k, j) * w(k, j);
      norms(j) = t > 0 ? std::sqrt(t) : 0.0;
      if (norms(j) < 1e-8 * orig_norms(j))
        norms(j) = (m - k - 1 > 0) ? w.col(j).tail(m - k - 1).norm() : 0.0;
    }
    ++k;
  }

  PivotedQr out;
  out.rank = k;
  out.perm = std::move(perm);
  out.r = w.topRows(k);

  // accumulate Q = H_0 ... H_{k-1} applied to the first k identity columns
  out.q = Matrix::Zero(m, k);
  for (Index j = 0; j < k; ++j) {
    Vector e = Vector::Zero(m);
    e(j) = 1.0;
    for (Index i = k; i-- > 0;) {
      if (taus[i] == 0.0) continue;
      const double s = taus[i] * reflectors[i].dot(e.tail(m - i));
      e.tail(m - i) -= s * reflectors[i];
    }
    out.q.col(j) = e;
  }

  if (want_residual && k < std::min(m, n) && k < n) {
    const Matrix trailing = w.block(k, k, m - k, n - k);
    out.residual_norm =
        trailing.size() > 0
            ? Eigen::JacobiSVD<Matrix>(trailing).singularValues()(0)
            : 0.0;
  }
  return out;
}

}  // namespace septensor

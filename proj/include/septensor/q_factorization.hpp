#pragma once

#include <vector>

#include "septensor/ctd.hpp"
#include "septensor/pivoted_qr.hpp"

namespace septensor {

// Per-direction orthogonal compression U = Q S: each Q_(j) has orthonormal
// columns (M_j x k_j with k_j <= min(M_j, r)) and S is a CTD over the reduced
// direction sizes with the same Frobenius norm as U.
struct QFactorization {
  std::vector<Matrix> q;
  Ctd s;
};

inline QFactorization q_factorize(const Ctd& u, double tol) {
  const Index d = u.ndims();
  const Index r = u.rank();
  std::vector<Matrix> qs(d);
  std::vector<Matrix> s_comps(d);
  for (Index j = 0; j < d; ++j) {
    PivotedQr qr = pivoted_qr(u.component(j), tol);
    const Index k = qr.rank;
    qs[j] = qr.q;
    // undo the pivot order so S columns align with terms
    s_comps[j].resize(k, r);
    for (Index i = 0; i < r; ++i) s_comps[j].col(qr.perm[i]) = qr.r.col(i);
  }
  return QFactorization{std::move(qs), Ctd(u.svals(), std::move(s_comps))};
}

inline Ctd reconstruct(const QFactorization& qf) {
  std::vector<Matrix> comps(qf.q.size());
  for (size_t j = 0; j < qf.q.size(); ++j) comps[j] = qf.q[j] * qf.s.component(j);
  return Ctd(qf.s.svals(), std::move(comps));
}

}  // namespace septensor

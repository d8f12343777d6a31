#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "septensor/als.hpp"
#include "septensor/sep_operator.hpp"
#include "septensor/snorm.hpp"
#include "septensor/tensor_id.hpp"

namespace septensor {

enum class ErrorNorm { s_norm, frobenius };

// Schulz iteration X_{n+1} = 2 X_n - X_n B X_n with per-step rank reduction
// by tensor ID and a fixed number of ALS sweeps. The iteration is
// self-correcting: reduction errors are absorbed by subsequent steps.
struct SchulzConfig {
  std::optional<double> alpha;       // initial scaling; auto (1/||B||_s^2) if absent
  double eps_reduce = 1e-10;         // tensor-ID accuracy per step
  Index max_rank = 0;                // 0 = uncapped
  Index als_sweeps = 3;
  Index max_iters = 30;
  double target_error = 1e-9;
  std::optional<SepOperator> nullspace;  // projector I - C applied each iteration
  ErrorNorm error_norm = ErrorNorm::s_norm;
  Index ell = 0;                     // projection count for tensor ID; 0 = auto
  std::uint64_t seed = 7;
  RandomDistribution distribution = RandomDistribution::normal;
};

struct SchulzRecord {
  Index iter;
  double error;
  Index rank_pre;       // rank of the iterate before reduction
  Index rank_post_id;   // after tensor ID
  Index rank_post_als;  // after ALS refinement (and nullspace projection)
};

using SchulzTrace = std::vector<SchulzRecord>;

struct rank_overflow_error : numerical_error {
  rank_overflow_error(const std::string& msg, SchulzTrace t)
      : numerical_error(msg), trace(std::move(t)) {}
  SchulzTrace trace;
};

// 1D second-derivative matrix on the unit interval, central differences of
// the given order, scaled by 1/h^2 (h = 1/m for the periodic grid).
inline Matrix build_laplacian_1d(Index m, int order, bool periodic) {
  std::vector<double> stencil;
  if (order == 2)
    stencil = {1.0, -2.0, 1.0};
  else if (order == 8)
    stencil = {-1.0 / 560, 8.0 / 315, -1.0 / 5, 8.0 / 5, -205.0 / 72,
               8.0 / 5,    -1.0 / 5,  8.0 / 315, -1.0 / 560};
  else
    throw config_error("build_laplacian_1d: order must be 2 or 8");
  const Index w = static_cast<Index>(stencil.size());
  const Index half = w / 2;
  if (m < w) throw invalid_input_error("build_laplacian_1d: m below stencil width");

  const double scale = static_cast<double>(m) * static_cast<double>(m);
  Matrix a = Matrix::Zero(m, m);
  for (Index i = 0; i < m; ++i)
    for (Index s = 0; s < w; ++s) {
      const Index off = s - half;
      Index j = i + off;
      if (periodic)
        j = ((j % m) + m) % m;
      else if (j < 0 || j >= m)
        continue;
      a(i, j) += stencil[s] * scale;
    }
  return a;
}

// A (x) I (x) ... + I (x) A (x) ... + ... + ... (x) A, a rank-d operator.
inline SepOperator build_kronecker_sum(const Matrix& a, Index d) {
  if (a.rows() != a.cols()) throw invalid_input_error("build_kronecker_sum: A not square");
  if (d < 1) throw config_error("build_kronecker_sum: d must be >= 1");
  const Index m = a.rows();
  std::vector<std::vector<Matrix>> f(d);
  for (Index t = 0; t < d; ++t)
    for (Index j = 0; j < d; ++j)
      f[t].push_back(j == t ? a : Matrix::Identity(m, m));
  return SepOperator::from_terms(Vector::Ones(d), f);
}

// Spectral preconditioner P = A^{-1/2} (pseudo-inverse square root) for a
// PSD matrix A: P A P is the orthogonal projector onto range(A), i.e. the
// preconditioned operator has unit condition number away from the null
// space, and a null space of A stays a null space of P A P.
inline Matrix build_inverse_sqrt_preconditioner(const Matrix& a) {
  check_finite(a, "build_inverse_sqrt_preconditioner");
  if (a.rows() != a.cols())
    throw invalid_input_error("build_inverse_sqrt_preconditioner: matrix not square");
  if ((a - a.transpose()).norm() > 1e-12 * std::max(a.norm(), 1e-300))
    throw invalid_input_error("build_inverse_sqrt_preconditioner: matrix not symmetric");
  Eigen::SelfAdjointEigenSolver<Matrix> es(a);
  const Vector& ev = es.eigenvalues();
  const double lmax = ev.cwiseAbs().maxCoeff();
  if (lmax == 0.0)
    throw invalid_input_error("build_inverse_sqrt_preconditioner: zero matrix");
  if (ev.minCoeff() < -1e-10 * lmax)
    throw invalid_input_error("build_inverse_sqrt_preconditioner: matrix not PSD");
  Vector d(ev.size());
  for (Index i = 0; i < ev.size(); ++i)
    d(i) = ev(i) > 1e-12 * lmax ? 1.0 / std::sqrt(ev(i)) : 0.0;
  return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().transpose();
}

// I - C with C = (x)_j c_j c_j^T, c_j the normalized constant vector: the
// rank-2 separated projector complementary to the constants.
inline SepOperator build_nullspace_projector(const std::vector<Index>& dims) {
  std::vector<std::vector<Matrix>> f(2);
  for (Index m : dims) {
    f[0].push_back(Matrix::Identity(m, m));
    f[1].push_back(Matrix::Constant(m, m, 1.0 / static_cast<double>(m)));
  }
  Vector svals(2);
  svals << 1.0, -1.0;
  return SepOperator::from_terms(svals, f);
}

// B = I + G_c A_v with small s-values truncated.
inline SepOperator precondition_compose(const SepOperator& g_c, const SepOperator& a_v,
                                        double trunc_eps = 1e-14) {
  SepOperator b = add(SepOperator::identity(g_c.sizes()), compose(g_c, a_v));
  TensorIdResult t = truncate_by_svalue(b.data(), trunc_eps);
  return SepOperator(t.reduced, g_c.sizes());
}

// Clenshaw-Curtis nodes -cos(pi m / (n - 1)), m = 0..n-1, on [-1, 1].
inline Vector clenshaw_curtis_nodes(Index n) {
  if (n < 2) throw config_error("clenshaw_curtis_nodes: need n >= 2");
  Vector x(n);
  for (Index m = 0; m < n; ++m)
    x(m) = -std::cos(M_PI * static_cast<double>(m) / static_cast<double>(n - 1));
  return x;
}

namespace detail {

// Frobenius norm of small tensors by dense expansion: the Gram formula
// cancels catastrophically when the tensor is a tiny difference of large
// terms, flooring the measurable norm near sqrt(machine epsilon) times the
// term scale.
inline double frob_norm_accurate(const Ctd& u) {
  double nd = 1.0;
  for (Index j = 0; j < u.ndims(); ++j) nd *= static_cast<double>(u.dim(j));
  return nd <= 1e6 ? densify(u).norm() : frob_norm(u);
}

// Operator 2-norm estimate: power iteration on B^* B with the iterate
// re-compressed to its best separable (rank-one) approximation after every
// step. A lower bound, tight for Kronecker-structured operators whose
// dominant singular vector is itself separable; callers add a safety margin.
inline double operator_norm_est(const SepOperator& b, Index iters = 20,
                                std::uint64_t seed = 0x517cc1b7) {
  RandomTensorConfig cfg{RandomDistribution::normal, seed, 1};
  Ctd v = random_rank_one(b.sizes(), cfg, 0);
  v = scale(v, 1.0 / frob_norm(v));
  double lam = 0.0;
  for (Index it = 0; it < iters; ++it) {
    std::optional<Ctd> w;
    try {
      w = apply(b, v);
    } catch (const zero_tensor_error&) {
      break;  // B annihilates v exactly
    }
    const double wn = frob_norm_accurate(*w);
    if (wn == 0.0) break;
    const double prev = lam;
    lam = wn;  // ||B v|| for unit v
    if (prev > 0 && std::abs(lam - prev) <= 1e-4 * lam) break;
    std::optional<Ctd> btw;
    try {
      btw = apply(b.adjoint(), *w);
    } catch (const zero_tensor_error&) {
      break;
    }
    RankOneApprox r1 = rank_one_approx(*btw, InitStrategy::column_average,
                                       /*max_iter=*/20, /*tol=*/1e-8);
    if (r1.sigma == 0.0) break;
    std::vector<Matrix> comps(b.ndims());
    for (Index j = 0; j < b.ndims(); ++j) comps[j] = r1.vectors[j];
    v = Ctd(Vector::Ones(1), std::move(comps));
  }
  return lam;  // 0 when B annihilates every probe: numerically zero operator
}

// For operators, the s-norm is the largest s-value, i.e. the operator
// 2-norm; the Frobenius option treats the operator as a plain tensor. The
// 2-norm is what makes the iteration error contract quadratically mode by
// mode (and it normalizes the identity to 1), so it is the default measure.
inline double op_norm(const SepOperator& a, ErrorNorm norm) {
  return norm == ErrorNorm::s_norm ? operator_norm_est(a) : frob_norm(a.data());
}

inline double op_norm_diff(const SepOperator& a, const SepOperator& b, ErrorNorm norm) {
  return op_norm(add(a, scale(b, -1.0)), norm);
}

}  // namespace detail

inline std::pair<SepOperator, SchulzTrace> schulz_invert(const SepOperator& b,
                                                         const SchulzConfig& cfg) {
  if (!(cfg.eps_reduce > 0 && cfg.eps_reduce < 1))
    throw config_error("schulz_invert: eps_reduce must be in (0,1)");
  if (cfg.max_iters < 1) throw config_error("schulz_invert: max_iters must be >= 1");
  if (cfg.nullspace && cfg.nullspace->sizes() != b.sizes())
    throw shape_error("schulz_invert: nullspace projector size mismatch");

  const SepOperator ident = SepOperator::identity(b.sizes());
  const SepOperator& ieff = cfg.nullspace ? *cfg.nullspace : ident;
  const double ieff_norm = detail::op_norm(ieff, cfg.error_norm);
  if (!(ieff_norm > 0))
    throw numerical_error("schulz_invert: target identity has zero norm");

  // Auto alpha: 1 / (1.2 ||B||_2)^2. The s-norm of the operator's own CTD
  // overshoots ||B||_2 badly (it maximizes over non-vectorized rank-one
  // directions), which would slow convergence by many iterations, so the
  // 2-norm is estimated directly; the 1.2 margin covers the estimate being
  // a lower bound.
  double alpha = cfg.alpha ? *cfg.alpha : [&] {
    const double bnorm = detail::operator_norm_est(b);
    if (!(bnorm > 0)) throw numerical_error("schulz_invert: zero operator");
    return 1.0 / std::pow(1.2 * bnorm, 2);
  }();
  SepOperator x = scale(b.adjoint(), alpha);

  RandomTensorConfig rcfg{cfg.distribution, cfg.seed, 1};
  // delta is an absolute accuracy budget on the operator scale; the tensor ID
  // works relative to the tensor's own norm, which for these operators is
  // much larger than their 2-norm, so convert per tensor.
  auto reduce_id = [&](const Ctd& t, std::uint64_t salt, double delta) {
    RandomTensorConfig c = rcfg;
    c.seed = cfg.seed ^ (salt * 0x9e3779b97f4a7c15ULL);
    Index ell = cfg.ell;
    if (ell <= 0 && cfg.max_rank > 0) ell = std::min(t.rank(), cfg.max_rank + 25);
    const double eps = std::clamp(delta / s_norm(t), 1e-14, 0.5);
    TensorIdResult res = tensor_id_randomized(t, ell, RankSpec::accuracy(eps), c,
                                              /*compute_residual=*/false);
    if (cfg.max_rank > 0 && res.reduced.rank() > cfg.max_rank) {
      // transient iterates can demand more terms than the cap; take the best
      // max_rank-term skeleton instead and let the ALS refinement make up
      // the accuracy
      res = tensor_id_randomized(t, ell, RankSpec::fixed(cfg.max_rank), c,
                                 /*compute_residual=*/false);
    }
    // Least-squares re-fit of the kept coefficients against the full tensor:
    // the sketch interpolation is only as accurate as the sketch's
    // conditioning, which becomes the dominant error once the budget nears
    // the floor. Solved on the skeleton's normal equations (rank-revealing,
    // since capped skeletons can carry near-duplicate terms).
    const auto& kept = res.skeleton_indices;
    const Index k = static_cast<Index>(kept.size());
    Matrix rows = Matrix::Ones(k, t.rank());
    for (Index j = 0; j < t.ndims(); ++j) {
      Matrix sel(t.dim(j), k);
      for (Index i = 0; i < k; ++i) sel.col(i) = t.component(j).col(kept[i]);
      rows = rows.cwiseProduct(sel.transpose() * t.component(j));
    }
    Matrix gram(k, k);
    for (Index i = 0; i < k; ++i)
      for (Index i2 = 0; i2 < k; ++i2) gram(i, i2) = rows(i, kept[i2]);
    Eigen::CompleteOrthogonalDecomposition<Matrix> cod(gram);
    Vector alpha = cod.solve(rows * t.svals());
    std::vector<Index> nz;
    std::vector<double> nzval;
    for (Index i = 0; i < k; ++i)
      if (alpha(i) != 0.0) {
        nz.push_back(kept[i]);
        nzval.push_back(alpha(i));
      }
    if (!nz.empty()) {
      Vector av = Eigen::Map<Vector>(nzval.data(), static_cast<Index>(nzval.size()));
      TensorIdResult refit{t.subset(nz, av), nz, av};
      res = std::move(refit);
    }
    return res;
  };

  auto error_of = [&](const SepOperator& xi) {
    const double e1 = detail::op_norm_diff(ieff, compose(xi, b), cfg.error_norm);
    const double e2 = detail::op_norm_diff(ieff, compose(b, xi), cfg.error_norm);
    return 0.5 * (e1 + e2) / ieff_norm;
  };

  double e0 = error_of(x);
  if (!cfg.alpha) {
    // the norm estimate is a lower bound; halve alpha until the start is
    // contractive
    for (int t = 0; t < 60 && e0 >= 1.0; ++t) {
      alpha *= 0.5;
      x = scale(x, 0.5);
      e0 = error_of(x);
    }
  }
  if (e0 >= 1.0)
    throw numerical_error("schulz_invert: initial error >= 1 (divergent initialization)");

  SchulzTrace trace;
  std::uint64_t salt = 1;
  double err_prev = e0;
  for (Index it = 1; it <= cfg.max_iters; ++it) {
    // Per-step reduction budget tracks the expected quadratic error of the
    // next iterate down to the eps_reduce floor: the iteration is
    // self-correcting, so reduction errors of that size are absorbed, while
    // demanding full accuracy of the transient iterates would force their
    // (much larger) exact separation rank.
    const double eps_it = std::max(cfg.eps_reduce, 0.1 * err_prev * err_prev);

    // Z = 2I - BX, reduced after the compose
    Ctd bx = compose(b, x).data();
    TensorIdResult bxr = reduce_id(bx, salt++, eps_it);
    SepOperator z =
        add(scale(ident, 2.0), scale(SepOperator(bxr.reduced, b.sizes()), -1.0));

    Ctd xz = compose(x, z).data();
    const Index rank_pre = xz.rank();
    TensorIdResult idr = reduce_id(xz, salt++, eps_it);
    const Index rank_post_id = idr.reduced.rank();

    // ALS refit, accepted only when it clearly improves the fit: the refit
    // leaves the skeleton subspace, while the interpolative iterate keeps
    // factors that are exact products of the operator's own factors -- a
    // structure later iterations compress far better.
    Ctd refined = idr.reduced;
    if (cfg.als_sweeps > 0) {
      try {
        AlsConfig als{rank_post_id, cfg.als_sweeps, 0.0};
        Ctd cand = als_reduce(xz, idr.reduced, als);
        const double res_id = detail::frob_norm_accurate(add(xz, scale(idr.reduced, -1.0)));
        const double res_als = detail::frob_norm_accurate(add(xz, scale(cand, -1.0)));
        if (res_als < 0.5 * res_id) refined = std::move(cand);
      } catch (const numerical_error&) {
        // keep the tensor-ID iterate if ALS cannot refine
      }
    }
    SepOperator xn(refined, b.sizes());

    if (cfg.nullspace) {
      xn = compose(compose(*cfg.nullspace, xn), *cfg.nullspace);
      TensorIdResult pr = reduce_id(xn.data(), salt++, eps_it);
      xn = SepOperator(pr.reduced, b.sizes());
    }
    const Index rank_final = xn.rank();
    if (cfg.max_rank > 0 && rank_final > cfg.max_rank)
      throw rank_overflow_error("schulz_invert: rank cap exceeded after reduction",
                                std::move(trace));

    const double err = error_of(xn);
    trace.push_back(SchulzRecord{it, err, rank_pre, rank_post_id, rank_final});
    x = std::move(xn);
    err_prev = err;
    if (err <= cfg.target_error) break;
  }
  return {std::move(x), std::move(trace)};
}

}  // namespace septensor

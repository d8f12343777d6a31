#pragma once

#include <vector>

#include "septensor/ctd.hpp"

namespace septensor {

// Best rank-one approximation of a CTD: sigma * (x_1 (x) ... (x) x_d).
// sigma is the spectral-norm estimate; the iteration is an alternating
// maximization, so the answer is a lower bound on the true supremum.
struct RankOneApprox {
  double sigma = 0.0;
  std::vector<Vector> vectors;
  Index iterations_used = 0;
  bool converged = false;
  std::vector<double> sigma_history;  // one entry per direction update
};

enum class InitStrategy { largest_sval_term, column_average, top_singular_vector };

namespace detail {

inline std::vector<Vector> init_vectors(const Ctd& u, InitStrategy init) {
  const Index d = u.ndims();
  std::vector<Vector> x(d);
  Index lmax = 0;
  u.svals().maxCoeff(&lmax);
  for (Index j = 0; j < d; ++j) {
    switch (init) {
      case InitStrategy::largest_sval_term:
        x[j] = u.component(j).col(lmax);
        break;
      case InitStrategy::column_average: {
        Vector avg = u.component(j) * u.svals();
        const double nrm = avg.norm();
        x[j] = nrm > 0 ? Vector(avg / nrm) : Vector(u.component(j).col(lmax));
        break;
      }
      case InitStrategy::top_singular_vector: {
        // dominant left singular vector by power iteration on S S^T; an
        // initialization heuristic only, so a loose tolerance suffices (a
        // full SVD here would dominate the cost on high-rank inputs)
        Matrix scaled = u.component(j) * u.svals().asDiagonal();
        Vector v = scaled * Vector::Ones(scaled.cols());
        if (v.norm() == 0.0) v = scaled.col(lmax);
        double prev = 0.0;
        for (int it = 0; it < 40; ++it) {
          v /= v.norm();
          v = scaled * (scaled.transpose() * v);
          const double s2 = v.norm();
          if (s2 == 0.0) break;
          if (prev > 0 && std::abs(s2 - prev) <= 1e-6 * s2) break;
          prev = s2;
        }
        const double nrm = v.norm();
        x[j] = nrm > 0 ? Vector(v / nrm) : Vector(u.component(j).col(lmax));
        break;
      }
    }
  }
  return x;
}

}  // namespace detail

// Alternating maximization from explicit unit start vectors, one per
// direction.
inline RankOneApprox rank_one_approx(const Ctd& u, std::vector<Vector> start,
                                     Index max_iter = 50, double tol = 1e-12) {
  if (max_iter < 1) throw config_error("rank_one_approx: max_iter must be >= 1");
  if (!(tol > 0)) throw config_error("rank_one_approx: tol must be positive");
  if (static_cast<Index>(start.size()) != u.ndims())
    throw shape_error("rank_one_approx: start vector count != ndims");

  const Index d = u.ndims();
  const Index r = u.rank();
  RankOneApprox out;
  out.vectors = std::move(start);

  // cached directional inner products c(j, l) = <u_j^(l), x_j>
  Matrix c(d, r);
  for (Index j = 0; j < d; ++j)
    c.row(j) = (u.component(j).transpose() * out.vectors[j]).transpose();

  double sigma_prev = -1.0;
  for (Index it = 0; it < max_iter; ++it) {
    double sigma = 0.0;
    for (Index jp = 0; jp < d; ++jp) {
      Vector w(r);
      for (Index l = 0; l < r; ++l) {
        double prod = u.svals()(l);
        for (Index j = 0; j < d; ++j)
          if (j != jp) prod *= c(j, l);
        w(l) = prod;
      }
      Vector rhs = u.component(jp) * w;
      sigma = rhs.norm();
      if (sigma == 0.0) {
        out.sigma = 0.0;
        out.iterations_used = it + 1;
        out.converged = frob_norm(u) <= tol;
        return out;
      }
      out.vectors[jp] = rhs / sigma;
      c.row(jp) = (u.component(jp).transpose() * out.vectors[jp]).transpose();
      out.sigma_history.push_back(sigma);
    }
    out.sigma = sigma;
    out.iterations_used = it + 1;
    if (sigma_prev >= 0 && std::abs(sigma - sigma_prev) <= tol * sigma) {
      out.converged = true;
      break;
    }
    sigma_prev = sigma;
  }
  return out;
}

inline RankOneApprox rank_one_approx(const Ctd& u, InitStrategy init,
                                     Index max_iter = 50, double tol = 1e-12) {
  return rank_one_approx(u, detail::init_vectors(u, init), max_iter, tol);
}

// Maximum sigma over the three initialization strategies plus, for moderate
// ranks, the per-term candidates <U, u^(l)> (each term's own direction set,
// with the best one polished by further sweeps). The candidates guarantee
// sigma >= ||U||_F^2 / sum_l sigma_l, which the iterative starts alone do
// not; their r x r cross products are skipped once they would dominate the
// O(r) sweeps.
inline double s_norm(const Ctd& u, Index max_iter = 50, double tol = 1e-12) {
  double best = 0.0;
  for (InitStrategy init : {InitStrategy::largest_sval_term, InitStrategy::column_average,
                            InitStrategy::top_singular_vector}) {
    const double sigma = rank_one_approx(u, init, max_iter, tol).sigma;
    if (sigma > best) best = sigma;
  }
  if (u.rank() <= 512) {
    const Vector cand = detail::term_dot_products(u, u) * u.svals();
    Index lbest = 0;
    const double cbest = cand.cwiseAbs().maxCoeff(&lbest);
    if (cbest > best) best = cbest;
    std::vector<Vector> start(u.ndims());
    for (Index j = 0; j < u.ndims(); ++j) start[j] = u.component(j).col(lbest);
    const double sigma = rank_one_approx(u, std::move(start), max_iter, tol).sigma;
    if (sigma > best) best = sigma;
  }
  return best;
}

// Spectral norm of u - v without the Frobenius cancellation path.
inline double s_norm_diff(const Ctd& u, const Ctd& v) {
  if (!u.same_shape(v)) throw shape_error("s_norm_diff: shape mismatch");
  return s_norm(add(u, scale(v, -1.0)));
}

}  // namespace septensor

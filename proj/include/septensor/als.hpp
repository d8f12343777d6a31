#pragma once

#include <vector>

#include "septensor/ctd.hpp"

namespace septensor {

// Fixed-sweep alternating least squares, used as a conditioning/refinement
// step after tensor ID rather than as an accuracy-driven reducer.
struct AlsConfig {
  Index target_rank = 1;
  Index sweeps = 3;
  double regularization = 0.0;  // lambda added to the normal-equation diagonal
};

// Runs cfg.sweeps full sweeps starting from init (rank must equal
// target_rank). If fit_history is given, the squared Frobenius fit error
// after each direction update is appended (computed via the Gram identity,
// no densification).
inline Ctd als_reduce(const Ctd& u, const Ctd& init, const AlsConfig& cfg,
                      std::vector<double>* fit_history = nullptr) {
  if (!u.same_shape(init)) throw shape_error("als_reduce: shape mismatch");
  if (init.rank() != cfg.target_rank)
    throw invalid_rank_error("als_reduce: init rank != target_rank");
  if (cfg.sweeps < 1) throw config_error("als_reduce: sweeps must be >= 1");
  if (cfg.regularization < 0) throw config_error("als_reduce: negative regularization");

  const Index d = u.ndims();
  const Index k = cfg.target_rank;
  const Index r = u.rank();

  std::vector<Matrix> x(d);  // unit columns
  Vector sx = init.svals();
  for (Index j = 0; j < d; ++j) x[j] = init.component(j);

  // cached cross-Gram matrices
  std::vector<Matrix> cross(d), gram(d);
  for (Index j = 0; j < d; ++j) {
    cross[j] = u.component(j).transpose() * x[j];  // r x k
    gram[j] = x[j].transpose() * x[j];             // k x k
  }
  const double unorm2 = inner(u, u);

  auto solve_direction = [&](Index jp, double lambda) -> Matrix {
    Matrix z = Matrix::Ones(r, k);
    Matrix gm = Matrix::Ones(k, k);
    for (Index j = 0; j < d; ++j) {
      if (j == jp) continue;
      z = z.cwiseProduct(cross[j]);
      gm = gm.cwiseProduct(gram[j]);
    }
    Matrix rhs = u.component(jp) * (u.svals().asDiagonal() * z);

    Eigen::SelfAdjointEigenSolver<Matrix> es(gm);
    const double emax = es.eigenvalues().cwiseAbs().maxCoeff();
    // singular normal matrix with no regularization requested: retry with a
    // tiny diagonal shift before giving up
    if (lambda == 0.0 && es.eigenvalues().minCoeff() <= 1e-14 * emax)
      lambda = 1e-12 * gm.trace();
    Matrix m = gm + lambda * Matrix::Identity(k, k);
    if (lambda > 0.0) {
      Eigen::LDLT<Matrix> ldlt(m);
      if (ldlt.info() != Eigen::Success ||
          Eigen::SelfAdjointEigenSolver<Matrix>(m).eigenvalues().minCoeff() <=
              1e-16 * std::max(emax, 1e-300))
        throw numerical_error("als_reduce: singular normal equations");
      return ldlt.solve(rhs.transpose()).transpose();
    }
    return m.ldlt().solve(rhs.transpose()).transpose();
  };

  for (Index sweep = 0; sweep < cfg.sweeps; ++sweep) {
    for (Index jp = 0; jp < d; ++jp) {
      Matrix v = solve_direction(jp, cfg.regularization);  // M_j x k, sigma absorbed
      for (Index m = 0; m < k; ++m) {
        const double nrm = v.col(m).norm();
        if (nrm == 0.0)
          throw numerical_error("als_reduce: approximant column collapsed");
        sx(m) = nrm;
        x[jp].col(m) = v.col(m) / nrm;
      }
      cross[jp] = u.component(jp).transpose() * x[jp];
      gram[jp] = x[jp].transpose() * x[jp];

      if (fit_history) {
        Matrix cz = Matrix::Ones(r, k);
        Matrix gg = Matrix::Ones(k, k);
        for (Index j = 0; j < d; ++j) {
          cz = cz.cwiseProduct(cross[j]);
          gg = gg.cwiseProduct(gram[j]);
        }
        const double ux = u.svals().transpose() * cz * sx;
        const double xx = sx.transpose() * gg * sx;
        fit_history->push_back(unorm2 - 2.0 * ux + xx);
      }
    }
  }
  return Ctd(sx, x);
}

}  // namespace septensor

#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "septensor/ctd.hpp"
#include "septensor/matrix_id.hpp"
#include "septensor/rng.hpp"
#include "septensor/snorm.hpp"
#include "septensor/sym_id.hpp"

namespace septensor {

enum class RandomDistribution { normal, uniform, bernoulli, power_1_over_d };

inline RandomDistribution parse_distribution(const std::string& tag) {
  if (tag == "normal") return RandomDistribution::normal;
  if (tag == "uniform") return RandomDistribution::uniform;
  if (tag == "bernoulli") return RandomDistribution::bernoulli;
  if (tag == "power-1-over-d") return RandomDistribution::power_1_over_d;
  throw config_error("unknown distribution: " + tag);
}

// Configuration for the collection of random rank-one projection tensors.
// All distributions are standardized to zero mean and unit variance.
struct RandomTensorConfig {
  RandomDistribution distribution = RandomDistribution::normal;
  std::uint64_t seed = 0;
  Index count = 1;  // ell
};

// Result of a term-subset rank reduction. The reduced tensor's directional
// columns are bit-identical to the corresponding columns of the input.
struct TensorIdResult {
  Ctd reduced;
  std::vector<Index> skeleton_indices;
  Vector coeffs;                   // new s-values alpha_m (signed, pre-absorption)
  double residual_estimate = -1;   // s-norm of (input - reduced); -1 if not computed
  bool accuracy_floor_warning = false;
};

namespace detail {

inline double standardized_draw(Rng& rng, RandomDistribution dist, Index d) {
  switch (dist) {
    case RandomDistribution::normal:
      return rng.normal();
    case RandomDistribution::uniform:
      return rng.uniform(1.7320508075688772935);  // sqrt(3): unit variance
    case RandomDistribution::bernoulli:
      return rng.bernoulli();
    case RandomDistribution::power_1_over_d: {
      const double g = rng.normal();
      const double p = 1.0 / static_cast<double>(d);
      const double v = std::copysign(std::pow(std::abs(g), p), g);
      // E[|N(0,1)|^q] = 2^{q/2} Gamma((q+1)/2) / sqrt(pi), here q = 2/d
      const double m2 = std::pow(2.0, p) * std::tgamma(p + 0.5) / std::sqrt(M_PI);
      return v / std::sqrt(m2);
    }
  }
  throw config_error("unknown distribution");
}

}  // namespace detail

// One rank-one random tensor; stream_id selects an independent RNG stream so
// tensors can be generated in any order (or in parallel) reproducibly.
inline Ctd random_rank_one(const std::vector<Index>& dims, const RandomTensorConfig& cfg,
                           std::uint64_t stream_id = 0) {
  const Index d = static_cast<Index>(dims.size());
  if (d < 1) throw config_error("random_rank_one: no dimensions");
  Rng rng = Rng::stream(cfg.seed, stream_id);
  std::vector<Matrix> comps(d);
  for (Index j = 0; j < d; ++j) {
    if (dims[j] < 1) throw config_error("random_rank_one: dimension must be >= 1");
    comps[j].resize(dims[j], 1);
    for (Index i = 0; i < dims[j]; ++i)
      comps[j](i, 0) = detail::standardized_draw(rng, cfg.distribution, d);
  }
  return Ctd(Vector::Ones(1), std::move(comps));
}

inline std::vector<Ctd> random_rank_ones(const std::vector<Index>& dims,
                                         const RandomTensorConfig& cfg) {
  if (cfg.count < 1) throw config_error("RandomTensorConfig: count must be >= 1");
  std::vector<Ctd> rs;
  rs.reserve(cfg.count);
  for (Index l = 0; l < cfg.count; ++l)
    rs.push_back(random_rank_one(dims, cfg, static_cast<std::uint64_t>(l)));
  return rs;
}

// Y(l, m) = <R^(l), sigma_m U^(m)>, an ell x r matrix.
inline Matrix projection_matrix(const Ctd& u, const std::vector<Ctd>& rs) {
  const Index ell = static_cast<Index>(rs.size());
  const Index r = u.rank();
  Matrix y(ell, r);
  for (Index l = 0; l < ell; ++l) {
    if (!u.same_shape(rs[l])) throw shape_error("projection_matrix: shape mismatch");
    Eigen::RowVectorXd row = rs[l].component(0).col(0).transpose() * u.component(0);
    for (Index j = 1; j < u.ndims(); ++j)
      row = row.cwiseProduct(rs[l].component(j).col(0).transpose() * u.component(j));
    y.row(l) = rs[l].svals()(0) * row.cwiseProduct(u.svals().transpose());
  }
  return y;
}

namespace detail {

// Recombine s-values from a matrix ID of the associated term matrix:
// alpha_m = sigma_{l_m} * sum_l P_{ml} (sigma indexed by skeleton position,
// since the columns being interpolated already carry their s-values).
inline TensorIdResult recombine(const Ctd& u, const std::vector<Index>& skeleton,
                                const Matrix& p) {
  const Index k = static_cast<Index>(skeleton.size());
  Vector alpha(k);
  std::vector<Index> kept_idx;
  std::vector<double> kept_alpha;
  for (Index m = 0; m < k; ++m) {
    alpha(m) = u.svals()(skeleton[m]) * p.row(m).sum();
    if (alpha(m) != 0.0) {
      kept_idx.push_back(skeleton[m]);
      kept_alpha.push_back(alpha(m));
    }
  }
  if (kept_idx.empty())
    throw numerical_error("tensor ID: all recombined coefficients vanished");
  Vector av = Eigen::Map<Vector>(kept_alpha.data(), static_cast<Index>(kept_alpha.size()));
  return TensorIdResult{u.subset(kept_idx, av), kept_idx, std::move(alpha)};
}

}  // namespace detail

// Tensor ID via random projection: sketch the terms against ell random
// rank-one tensors, take a deterministic matrix ID of the sketch, and
// recombine. Pass ell = 0 with an accuracy spec for the adaptive choice.
inline TensorIdResult tensor_id_randomized(const Ctd& u, Index ell, const RankSpec& spec,
                                           const RandomTensorConfig& cfg_in,
                                           bool compute_residual = true,
                                           bool randomized_inner_id = false) {
  const Index r = u.rank();
  if (spec.is_fixed() && spec.rank() > r)
    throw invalid_rank_error("tensor_id_randomized: requested rank exceeds input rank");

  RandomTensorConfig cfg = cfg_in;
  const bool adaptive = (ell <= 0);
  if (adaptive && spec.is_fixed())
    ell = std::min(r, spec.rank() + 10);
  else if (adaptive)
    ell = std::min<Index>(r, 2 * static_cast<Index>(std::ceil(std::sqrt(double(r)))) + 10);
  if (spec.is_fixed() && ell < spec.rank())
    throw invalid_rank_error("tensor_id_randomized: ell below requested rank");
  if (adaptive) ell = std::min(ell, r);  // explicit ell > r oversamples the sketch

  Matrix y;  // last sketch, reused by the a-posteriori escalation below
  auto run = [&](Index l) {
    cfg.count = l;
    std::vector<Ctd> rs = random_rank_ones(u.dims(), cfg);
    y = projection_matrix(u, rs);
    if (y.cwiseAbs().maxCoeff() == 0.0)
      throw numerical_error("tensor_id_randomized: degenerate projection matrix");
    if (randomized_inner_id) {
      Rng rng(cfg.seed ^ 0x5bf03635u);
      return randomized_matrix_id(y, std::min(l, y.rows()), spec, rng);
    }
    return matrix_id(y, spec);
  };

  MatrixId id = run(ell);
  if (adaptive && !spec.is_fixed()) {
    // double ell until the detected rank stabilizes twice in a row
    Index stable = 0;
    Index prev = static_cast<Index>(id.skeleton_indices.size());
    while (ell < r && stable < 2) {
      ell = std::min(r, 2 * ell);
      id = run(ell);
      const Index k = static_cast<Index>(id.skeleton_indices.size());
      stable = (k == prev) ? stable + 1 : 0;
      prev = k;
      if (ell == r) break;
    }
  }

  TensorIdResult res = detail::recombine(u, id.skeleton_indices, id.p);
  if (compute_residual) {
    res.residual_estimate = s_norm_diff(u, res.reduced);
    if (!spec.is_fixed()) {
      // A-posteriori correction: the diagonal cutoff on the sketch measures
      // pivot decay, not the tensor error, so it under-selects when the
      // remaining terms are near-orthogonal and over-selects when the pivots
      // merely jitter. The pivot order is nested, so walk it to the smallest
      // skeleton whose measured residual meets the target. Residuals below
      // ~1e-13 relative are measurement noise in double precision; the floor
      // keeps the walk from chasing them. The hard ceiling is the sketch's
      // pivot count at an effectively-zero cutoff.
      const double target = std::max(spec.eps(), 1e-13) * s_norm(u);
      auto at_rank = [&](Index k) {
        MatrixId idk = matrix_id(y, RankSpec::fixed(k));
        TensorIdResult cand = detail::recombine(u, idk.skeleton_indices, idk.p);
        cand.residual_estimate = s_norm_diff(u, cand.reduced);
        return cand;
      };
      Index k = static_cast<Index>(id.skeleton_indices.size());
      if (res.residual_estimate > target) {
        const Index kmax = pivoted_qr(y, 1e-18, -1, /*want_residual=*/false).rank;
        while (res.residual_estimate > target && k < kmax) res = at_rank(++k);
      } else {
        while (k > 1) {
          TensorIdResult cand = at_rank(k - 1);
          if (cand.residual_estimate > target) break;
          --k;
          res = std::move(cand);
        }
      }
    }
  }
  return res;
}

// Tensor ID via the Gram matrix: symmetric ID of G at squared accuracy.
// Limited to accuracies above sqrt(machine epsilon); below that the Gram
// spectrum cannot resolve the terms and a warning flag is set.
inline TensorIdResult tensor_id_gram(const Ctd& u, const RankSpec& spec,
                                     bool compute_residual = true) {
  Matrix g = gram_matrix(u);
  bool floor_warning = false;
  RankSpec gspec = spec.is_fixed() ? spec : [&] {
    const double e2 = spec.eps() * spec.eps();
    floor_warning = e2 < 1e-15;
    return RankSpec::accuracy(std::max(e2, 1e-300));
  }();
  SymId sid = sym_id(g, gspec);
  TensorIdResult res = detail::recombine(u, sid.skeleton_indices, sid.p);
  res.accuracy_floor_warning = floor_warning;
  if (compute_residual) res.residual_estimate = s_norm_diff(u, res.reduced);
  return res;
}

// Truncation by s-value: drop the smallest terms while the dropped tail
// stays below eps * ||U||_F (Parseval view); coefficients are unchanged.
// Never returns an empty tensor.
inline TensorIdResult truncate_by_svalue(const Ctd& u, double eps) {
  const Index r = u.rank();
  std::vector<Index> order(r);
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Index a, Index b) { return u.svals()(a) < u.svals()(b); });
  const double total2 = u.svals().squaredNorm();
  double dropped2 = 0.0;
  std::vector<bool> drop(r, false);
  for (Index i = 0; i < r - 1; ++i) {  // always keep at least one term
    const double s = u.svals()(order[i]);
    if (std::sqrt(dropped2 + s * s) <= eps * std::sqrt(total2)) {
      dropped2 += s * s;
      drop[order[i]] = true;
    } else {
      break;
    }
  }
  std::vector<Index> kept;
  for (Index l = 0; l < r; ++l)
    if (!drop[l]) kept.push_back(l);
  Vector alpha(static_cast<Index>(kept.size()));
  for (size_t m = 0; m < kept.size(); ++m) alpha(static_cast<Index>(m)) = u.svals()(kept[m]);
  TensorIdResult res{u.subset(kept, alpha), kept, alpha};
  res.residual_estimate = std::sqrt(dropped2);
  return res;
}

}  // namespace septensor

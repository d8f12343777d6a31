#pragma once

#include <cmath>
#include <vector>

#include "septensor/types.hpp"

namespace septensor {

// Canonical tensor decomposition: a sum of r rank-one terms. Each directional
// column has unit Frobenius norm; the term magnitudes live in the positive
// s-values. There is no representation of the zero tensor.
class Ctd {
 public:
  // Takes possibly unnormalized columns; magnitudes (and signs, absorbed into
  // the direction-0 columns) move into the s-values.
  Ctd(Vector svals, std::vector<Matrix> components)
      : svals_(std::move(svals)), components_(std::move(components)) {
    if (components_.empty()) throw invalid_input_error("Ctd: no directions");
    const Index r = svals_.size();
    if (r < 1) throw zero_tensor_error("Ctd: no terms");
    for (auto& u : components_) {
      if (u.cols() != r) throw shape_error("Ctd: component column count != rank");
      if (u.rows() < 1) throw shape_error("Ctd: empty direction");
      check_finite(u, "Ctd component");
    }
    if (!svals_.allFinite()) throw invalid_input_error("Ctd: non-finite s-value");
    for (Index l = 0; l < r; ++l) {
      for (auto& u : components_) {
        const double nrm = u.col(l).norm();
        if (nrm == 0.0) throw zero_tensor_error("Ctd: zero directional column");
        // keep already-normalized columns bit-identical (subset/serialization
        // round-trips); renormalizing them would perturb the last bit
        if (std::abs(nrm - 1.0) > 1e-14) {
          u.col(l) /= nrm;
          svals_(l) *= nrm;
        }
      }
      if (svals_(l) < 0) {
        svals_(l) = -svals_(l);
        components_[0].col(l) = -components_[0].col(l);
      }
      if (svals_(l) == 0.0) throw zero_tensor_error("Ctd: zero s-value");
    }
  }

  Index rank() const { return svals_.size(); }
  Index ndims() const { return static_cast<Index>(components_.size()); }
  Index dim(Index j) const { return components_[j].rows(); }
  std::vector<Index> dims() const {
    std::vector<Index> d(components_.size());
    for (size_t j = 0; j < components_.size(); ++j) d[j] = components_[j].rows();
    return d;
  }
  const Vector& svals() const { return svals_; }
  const Matrix& component(Index j) const { return components_[j]; }
  const std::vector<Matrix>& components() const { return components_; }

  bool same_shape(const Ctd& other) const {
    if (ndims() != other.ndims()) return false;
    for (Index j = 0; j < ndims(); ++j)
      if (dim(j) != other.dim(j)) return false;
    return true;
  }

  // Terms at the given positions, components bit-identical to this tensor's.
  Ctd subset(const std::vector<Index>& indices, const Vector& new_svals) const {
    const Index k = static_cast<Index>(indices.size());
    if (k < 1) throw zero_tensor_error("Ctd::subset: empty selection");
    if (new_svals.size() != k) throw shape_error("Ctd::subset: svals size mismatch");
    std::vector<Matrix> comps(components_.size());
    for (size_t j = 0; j < components_.size(); ++j) {
      comps[j].resize(components_[j].rows(), k);
      for (Index m = 0; m < k; ++m) comps[j].col(m) = components_[j].col(indices[m]);
    }
    return Ctd(new_svals, std::move(comps));
  }

 private:
  Vector svals_;
  std::vector<Matrix> components_;
};

namespace detail {

// Pairwise directional dot products D(l,m) = prod_j <u_j^l, v_j^m>, without
// the s-value scaling.
inline Matrix term_dot_products(const Ctd& u, const Ctd& v) {
  Matrix k = u.component(0).transpose() * v.component(0);
  for (Index j = 1; j < u.ndims(); ++j)
    k = k.cwiseProduct(u.component(j).transpose() * v.component(j));
  return k;
}

// Pairwise term inner products K(l,m) = sigma_l sigma_m prod_j <u_j^l, v_j^m>.
inline Matrix term_cross_products(const Ctd& u, const Ctd& v) {
  return u.svals().asDiagonal() * term_dot_products(u, v) * v.svals().asDiagonal();
}

// Symmetric weighted accumulation of su(l) sv(m) k(l,m): pairs (l,m) and
// (m,l) are added together, and each weight is formed as (su*sv)*k, so that
// swapping the arguments of inner() reproduces the result bit-exactly.
inline double sum_symmetric(const Matrix& k, const Vector& su, const Vector& sv) {
  const Index ru = k.rows(), rv = k.cols();
  const Index rmax = std::max(ru, rv);
  auto w = [&](Index i, Index j) { return (su(i) * sv(j)) * k(i, j); };
  double acc = 0.0;
  for (Index i = 0; i < rmax; ++i) {
    if (i < ru && i < rv) acc += w(i, i);
    for (Index j = i + 1; j < rmax; ++j) {
      const bool up = i < ru && j < rv;
      const bool lo = j < ru && i < rv;
      if (up && lo)
        acc += w(i, j) + w(j, i);
      else if (up)
        acc += w(i, j);
      else if (lo)
        acc += w(j, i);
    }
  }
  return acc;
}

}  // namespace detail

inline double inner(const Ctd& u, const Ctd& v) {
  if (!u.same_shape(v)) throw shape_error("inner: shape mismatch");
  return detail::sum_symmetric(detail::term_dot_products(u, v), u.svals(), v.svals());
}

inline double frob_norm(const Ctd& u) {
  const double s = inner(u, u);
  return s > 0 ? std::sqrt(s) : 0.0;
}

// Term concatenation; rank adds.
inline Ctd add(const Ctd& u, const Ctd& v) {
  if (!u.same_shape(v)) throw shape_error("add: shape mismatch");
  Vector svals(u.rank() + v.rank());
  svals << u.svals(), v.svals();
  std::vector<Matrix> comps(u.ndims());
  for (Index j = 0; j < u.ndims(); ++j) {
    comps[j].resize(u.dim(j), u.rank() + v.rank());
    comps[j] << u.component(j), v.component(j);
  }
  return Ctd(std::move(svals), std::move(comps));
}

inline Ctd scale(const Ctd& u, double alpha) {
  if (alpha == 0.0) throw zero_tensor_error("scale: alpha = 0 has no representation");
  // the constructor absorbs the sign into the direction-0 columns
  return Ctd(alpha * u.svals(), u.components());
}

// G(l,m) = <sigma_l U^(l), sigma_m U^(m)>; upper triangle computed, mirrored.
inline Matrix gram_matrix(const Ctd& u) {
  Matrix k = detail::term_cross_products(u, u);
  const Index r = u.rank();
  Matrix g(r, r);
  for (Index l = 0; l < r; ++l) {
    g(l, l) = k(l, l);
    for (Index m = l + 1; m < r; ++m) g(l, m) = g(m, l) = k(l, m);
  }
  return g;
}

// Dense materialization, entries in column-major order (direction 0 fastest).
// Test oracle only; refuses tensors above the size cap.
inline Vector densify(const Ctd& u) {
  double nd = 1.0;
  for (Index j = 0; j < u.ndims(); ++j) nd *= static_cast<double>(u.dim(j));
  if (nd > 1e7) throw invalid_input_error("densify: tensor exceeds 1e7 entries");
  const Index n = static_cast<Index>(nd);
  Vector out = Vector::Zero(n);
  for (Index l = 0; l < u.rank(); ++l) {
    Vector term = u.svals()(l) * u.component(0).col(l);
    for (Index j = 1; j < u.ndims(); ++j) {
      Vector next(term.size() * u.dim(j));
      for (Index i = 0; i < u.dim(j); ++i)
        next.segment(i * term.size(), term.size()) = u.component(j)(i, l) * term;
      term = std::move(next);
    }
    out += term;
  }
  return out;
}

}  // namespace septensor

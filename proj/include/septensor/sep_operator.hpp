#pragma once

#include <utility>
#include <vector>

#include "septensor/ctd.hpp"

namespace septensor {

// Kronecker-structured linear operator: a CTD whose directional components
// are vectorized square matrices (column-major). Stored as a Ctd over
// directions of size M_j^2 so that all tensor machinery (norms, Gram matrix,
// tensor ID, s-norm) applies unchanged.
class SepOperator {
 public:
  SepOperator(Ctd data, std::vector<Index> sizes)
      : data_(std::move(data)), sizes_(std::move(sizes)) {
    if (static_cast<Index>(sizes_.size()) != data_.ndims())
      throw shape_error("SepOperator: sizes/directions mismatch");
    for (Index j = 0; j < data_.ndims(); ++j)
      if (sizes_[j] * sizes_[j] != data_.dim(j))
        throw shape_error("SepOperator: direction is not a vectorized square matrix");
  }

  // Build from per-term, per-direction factor matrices: factors[l][j].
  static SepOperator from_terms(const Vector& svals,
                                const std::vector<std::vector<Matrix>>& factors) {
    const Index r = svals.size();
    if (static_cast<Index>(factors.size()) != r)
      throw shape_error("SepOperator: svals/terms mismatch");
    const Index d = static_cast<Index>(factors[0].size());
    std::vector<Index> sizes(d);
    std::vector<Matrix> comps(d);
    for (Index j = 0; j < d; ++j) {
      sizes[j] = factors[0][j].rows();
      comps[j].resize(sizes[j] * sizes[j], r);
    }
    for (Index l = 0; l < r; ++l) {
      if (static_cast<Index>(factors[l].size()) != d)
        throw shape_error("SepOperator: ragged term");
      for (Index j = 0; j < d; ++j) {
        const Matrix& f = factors[l][j];
        if (f.rows() != sizes[j] || f.cols() != sizes[j])
          throw shape_error("SepOperator: factor shape mismatch");
        comps[j].col(l) = Eigen::Map<const Vector>(f.data(), f.size());
      }
    }
    return SepOperator(Ctd(svals, std::move(comps)), std::move(sizes));
  }

  static SepOperator identity(const std::vector<Index>& sizes) {
    std::vector<std::vector<Matrix>> f(1);
    for (Index m : sizes) f[0].push_back(Matrix::Identity(m, m));
    return from_terms(Vector::Ones(1), f);
  }

  const Ctd& data() const { return data_; }
  const std::vector<Index>& sizes() const { return sizes_; }
  Index rank() const { return data_.rank(); }
  Index ndims() const { return data_.ndims(); }

  // Factor of term l in direction j (includes the unit normalization only;
  // the magnitude stays in the s-value).
  Eigen::Map<const Matrix> factor(Index l, Index j) const {
    return Eigen::Map<const Matrix>(data_.component(j).col(l).data(), sizes_[j], sizes_[j]);
  }

  SepOperator adjoint() const {
    std::vector<std::vector<Matrix>> f(rank());
    for (Index l = 0; l < rank(); ++l)
      for (Index j = 0; j < ndims(); ++j) f[l].push_back(factor(l, j).transpose());
    return from_terms(data_.svals(), f);
  }

 private:
  Ctd data_;
  std::vector<Index> sizes_;
};

// Per-term directional matrix-vector products; output rank at most
// r_op * r_u. Terms with an exactly-zero directional product (e.g. a
// projector factor annihilating the input) are dropped; if every term
// vanishes the result is the zero tensor, which a Ctd cannot represent.
inline Ctd apply(const SepOperator& op, const Ctd& u) {
  if (op.ndims() != u.ndims()) throw shape_error("apply: dimension mismatch");
  for (Index j = 0; j < op.ndims(); ++j)
    if (op.sizes()[j] != u.dim(j)) throw shape_error("apply: direction size mismatch");

  const Index r = op.rank() * u.rank();
  Vector svals(r);
  std::vector<Matrix> comps(u.ndims());
  for (Index j = 0; j < u.ndims(); ++j) comps[j].resize(u.dim(j), r);
  Index t = 0;
  for (Index lo = 0; lo < op.rank(); ++lo)
    for (Index lu = 0; lu < u.rank(); ++lu) {
      bool nonzero = true;
      for (Index j = 0; j < u.ndims(); ++j) {
        comps[j].col(t) = op.factor(lo, j) * u.component(j).col(lu);
        if (comps[j].col(t).isZero(0.0)) {
          nonzero = false;
          break;
        }
      }
      if (!nonzero) continue;
      svals(t) = op.data().svals()(lo) * u.svals()(lu);
      ++t;
    }
  if (t == 0) throw zero_tensor_error("apply: operator annihilates the input");
  for (Index j = 0; j < u.ndims(); ++j) comps[j].conservativeResize(Eigen::NoChange, t);
  return Ctd(svals.head(t), std::move(comps));
}

// Operator product a * b via term-wise factor products; rank r_a * r_b.
inline SepOperator compose(const SepOperator& a, const SepOperator& b) {
  if (a.sizes() != b.sizes()) throw shape_error("compose: size mismatch");
  const Index r = a.rank() * b.rank();
  Vector svals(r);
  std::vector<std::vector<Matrix>> f(r);
  Index t = 0;
  for (Index la = 0; la < a.rank(); ++la)
    for (Index lb = 0; lb < b.rank(); ++lb, ++t) {
      svals(t) = a.data().svals()(la) * b.data().svals()(lb);
      for (Index j = 0; j < a.ndims(); ++j)
        f[t].push_back(a.factor(la, j) * b.factor(lb, j));
    }
  return SepOperator::from_terms(svals, f);
}

inline SepOperator add(const SepOperator& a, const SepOperator& b) {
  if (a.sizes() != b.sizes()) throw shape_error("add: operator size mismatch");
  return SepOperator(add(a.data(), b.data()), a.sizes());
}

inline SepOperator scale(const SepOperator& a, double alpha) {
  return SepOperator(scale(a.data(), alpha), a.sizes());
}

}  // namespace septensor

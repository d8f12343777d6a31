#pragma once

#include <vector>

#include "septensor/types.hpp"

namespace septensor {

// Full singular spectrum, descending. One-sided Jacobi (Eigen::JacobiSVD)
// for small-singular-value accuracy.
inline Vector singular_values(const Matrix& a) {
  check_finite(a, "singular_values");
  Eigen::JacobiSVD<Matrix> svd(a);
  return svd.singularValues();
}

// Spectral norm.
inline double norm2(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  return Eigen::JacobiSVD<Matrix>(a).singularValues()(0);
}

}  // namespace septensor

#pragma once

#include <Eigen/Dense>
#include <optional>

#include "septensor/errors.hpp"

namespace septensor {

// Dense column-major matrix of doubles.
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

inline void check_finite(const Matrix& a, const char* what) {
  if (!a.allFinite()) throw invalid_input_error(std::string(what) + ": non-finite entries");
}

// Target for a rank-reduction: either a fixed rank k or a relative accuracy
// eps in (0,1). Exactly one of the two is set.
class RankSpec {
 public:
  static RankSpec fixed(Index k) {
    if (k < 1) throw config_error("RankSpec: rank must be >= 1");
    RankSpec s;
    s.rank_ = k;
    return s;
  }
  static RankSpec accuracy(double eps) {
    if (!(eps > 0.0 && eps < 1.0)) throw config_error("RankSpec: eps must be in (0,1)");
    RankSpec s;
    s.eps_ = eps;
    return s;
  }

  bool is_fixed() const { return rank_.has_value(); }
  Index rank() const { return *rank_; }
  double eps() const { return *eps_; }

 private:
  RankSpec() = default;
  std::optional<Index> rank_;
  std::optional<double> eps_;
};

}  // namespace septensor

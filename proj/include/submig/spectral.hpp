#pragma once

#include <cmath>
#include <optional>
#include <sstream>
#include <variant>
#include <vector>

#include <Eigen/SVD>

#include "submig/errors.hpp"
#include "submig/forward.hpp"

namespace submig {

/// SVD M = U diag(sigma) conj(V)^T with an optional signal-space rank.
///
/// Column m of `left` is U_m and column m of `right` is V_m, so the rank-k
/// approximation is sum_{m<k} sigma_m U_m conj(V_m)^T. No phase normalization
/// is applied; the imaging functional is invariant under the joint gauge
/// (U_m, V_m) -> (e^{i phi} U_m, e^{i phi} V_m).
struct SpectralFactors {
  Eigen::VectorXd singular_values;
  ComplexMatrix left;
  ComplexMatrix right;
  std::optional<std::size_t> rank;

  std::size_t size() const { return static_cast<std::size_t>(singular_values.size()); }

  /// sum_{m < k} sigma_m U_m conj(V_m)^T
  ComplexMatrix reconstruct(std::size_t k) const {
    const auto kk = static_cast<Eigen::Index>(k);
    return left.leftCols(kk) * singular_values.head(kk).asDiagonal() *
           right.leftCols(kk).adjoint();
  }
  ComplexMatrix reconstruct() const { return reconstruct(size()); }
};

inline SpectralFactors decompose(const MSRMatrix& msr) {
  const auto& m = msr.entries;
  if (m.rows() != m.cols()) throw InvalidArgument("decompose: MSR matrix must be square");
  if (!m.allFinite()) throw InvalidArgument("decompose: MSR matrix has non-finite entries");

  Eigen::BDCSVD<ComplexMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (svd.info() != Eigen::Success) {
    std::ostringstream os;
    os << "decompose: SVD of " << m.rows() << "x" << m.cols()
       << " matrix failed (Eigen status " << static_cast<int>(svd.info())
       << ", max |entry| = " << m.cwiseAbs().maxCoeff() << ")";
    throw ComputationError(os.str());
  }
  return SpectralFactors{svd.singularValues(), svd.matrixU(), svd.matrixV(), std::nullopt};
}

struct FixedRank {
  std::size_t k;
};

/// Keep every sigma_k >= tau * sigma_1.
struct AutoRank {
  double tau = 0.01;
};

using RankMode = std::variant<FixedRank, AutoRank>;

inline SpectralFactors select_rank(SpectralFactors factors, const RankMode& mode) {
  const std::size_t n = factors.size();
  if (const auto* fixed = std::get_if<FixedRank>(&mode)) {
    if (fixed->k == 0 || fixed->k > n) {
      std::ostringstream os;
      os << "select_rank: fixed rank " << fixed->k << " outside [1, " << n << "]";
      throw InvalidArgument(os.str());
    }
    factors.rank = fixed->k;
    return factors;
  }
  const double tau = std::get<AutoRank>(mode).tau;
  if (!(tau > 0.0 && tau < 1.0)) throw InvalidArgument("select_rank: tau must lie in (0, 1)");
  std::size_t k = 0;
  if (n > 0 && factors.singular_values[0] > 0.0) {
    const double cut = tau * factors.singular_values[0];
    while (k < n && factors.singular_values[static_cast<Eigen::Index>(k)] >= cut) ++k;
  }
  factors.rank = k;
  return factors;
}

}  // namespace submig

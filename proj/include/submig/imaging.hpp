#pragma once

// Single-frequency subspace migration with a (possibly wrong) test frequency.
//
// The test vector is the plain unit exponential W(x; eta) with entries
// e^{i eta theta_n . x} / sqrt(N). The functional projects it on the selected
// left singular vectors and on the conjugated right singular vectors:
//
//   W(x; eta) = | sum_{m < rank} <W, U_m> <W, conj(V_m)> |,   <a, b> = conj(a) . b

#include <algorithm>
#include <cmath>
#include <vector>

#include "submig/errors.hpp"
#include "submig/forward.hpp"
#include "submig/image_map.hpp"
#include "submig/spectral.hpp"

namespace submig {

inline ComplexVector test_vector(const Vec2& x, double eta, const DirectionSet& dirs) {
  if (!(eta > 0.0)) throw InvalidArgument("test_vector: eta must be > 0");
  const auto n = static_cast<Eigen::Index>(dirs.count());
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  ComplexVector w(n);
  for (Eigen::Index k = 0; k < n; ++k) w(k) = scale * std::polar(1.0, eta * dot(dirs[k], x));
  return w;
}

inline double imaging_value(const Vec2& x, double eta, const SpectralFactors& factors,
                            const DirectionSet& dirs) {
  if (!factors.rank) throw StateError("imaging_value: signal-space rank not selected");
  if (factors.size() != dirs.count())
    throw InvalidArgument("imaging_value: factor size does not match direction count");
  const auto rank = static_cast<Eigen::Index>(*factors.rank);
  if (rank == 0) return 0.0;
  const ComplexVector w = test_vector(x, eta, dirs);
  // <W, U_m> = W^H U_m and <W, conj(V_m)> = W^H conj(V_m) = conj(W^T V_m)
  const Eigen::RowVectorXcd with_left = w.adjoint() * factors.left.leftCols(rank);
  const Eigen::RowVectorXcd with_right = (w.transpose() * factors.right.leftCols(rank)).conjugate();
  return std::abs(with_left.cwiseProduct(with_right).sum());
}

inline ImageMap image_grid(const ImagingGridSpec& grid, double eta, const SpectralFactors& factors,
                           const DirectionSet& dirs) {
  grid.validate();
  if (!factors.rank) throw StateError("image_grid: signal-space rank not selected");
  ImageMap map{grid, std::vector<double>(grid.nx * grid.ny), eta, ImageSource::kNumeric};
  for (std::size_t j = 0; j < grid.ny; ++j)
    for (std::size_t i = 0; i < grid.nx; ++i)
      map.at(i, j) = imaging_value(grid.node(i, j), eta, factors, dirs);
  return map;
}

struct Peak {
  Vec2 location;
  double value;
};

/// Strict 8-neighbour local maxima (ties broken by grid index) at or above
/// threshold_frac * max, thinned greedily (highest first) so that kept peaks
/// are min_separation apart.
inline std::vector<Peak> extract_peaks(const ImageMap& image, double threshold_frac,
                                       double min_separation) {
  const auto& g = image.grid;
  if (image.values.empty() || image.values.size() != g.nx * g.ny)
    throw InvalidArgument("extract_peaks: image is empty or inconsistent with its grid");
  if (!(threshold_frac > 0.0 && threshold_frac < 1.0))
    throw InvalidArgument("extract_peaks: threshold_frac must lie in (0, 1)");
  if (!(min_separation > 0.0)) throw InvalidArgument("extract_peaks: min_separation must be > 0");

  const double global = image.max_value();
  if (!(global > 0.0)) return {};
  const double floor = threshold_frac * global;

  std::vector<Peak> candidates;
  for (std::size_t j = 0; j < g.ny; ++j)
    for (std::size_t i = 0; i < g.nx; ++i) {
      const double v = image.at(i, j);
      if (v < floor) continue;
      bool strict = true;
      for (int dj = -1; dj <= 1 && strict; ++dj)
        for (int di = -1; di <= 1; ++di) {
          if (di == 0 && dj == 0) continue;
          const auto ii = static_cast<std::ptrdiff_t>(i) + di;
          const auto jj = static_cast<std::ptrdiff_t>(j) + dj;
          if (ii < 0 || jj < 0 || ii >= static_cast<std::ptrdiff_t>(g.nx) ||
              jj >= static_cast<std::ptrdiff_t>(g.ny))
            continue;
          // exact ties go to the lower linear index, so a flat two-cell top
          // (common on grids symmetric about a target) still yields one peak
          const double w = image.at(static_cast<std::size_t>(ii), static_cast<std::size_t>(jj));
          if (w > v || (w == v && (dj < 0 || (dj == 0 && di < 0)))) {
            strict = false;
            break;
          }
        }
      if (strict) candidates.push_back({g.node(i, j), v});
    }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Peak& a, const Peak& b) { return a.value > b.value; });

  std::vector<Peak> kept;
  for (const auto& c : candidates) {
    const bool far = std::all_of(kept.begin(), kept.end(), [&](const Peak& k) {
      return distance(k.location, c.location) >= min_separation;
    });
    if (far) kept.push_back(c);
  }
  return kept;
}

}  // namespace submig

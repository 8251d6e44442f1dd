#pragma once

#include <cmath>
#include <cstddef>
#include <string_view>
#include <vector>

#include "submig/errors.hpp"
#include "submig/geometry.hpp"

namespace submig {

/// Rectangular raster with nodes on both bounds (linspace semantics).
struct ImagingGridSpec {
  double x_min = -1.0;
  double x_max = 1.0;
  double y_min = -1.0;
  double y_max = 1.0;
  std::size_t nx = 256;
  std::size_t ny = 256;

  void validate() const {
    if (!(std::isfinite(x_min) && std::isfinite(x_max) && x_min < x_max))
      throw InvalidArgument("grid: need finite x_min < x_max");
    if (!(std::isfinite(y_min) && std::isfinite(y_max) && y_min < y_max))
      throw InvalidArgument("grid: need finite y_min < y_max");
    if (nx < 2 || ny < 2) throw InvalidArgument("grid: nx and ny must be >= 2");
  }

  double x(std::size_t i) const {
    return std::lerp(x_min, x_max, static_cast<double>(i) / static_cast<double>(nx - 1));
  }
  double y(std::size_t j) const {
    return std::lerp(y_min, y_max, static_cast<double>(j) / static_cast<double>(ny - 1));
  }
  Vec2 node(std::size_t i, std::size_t j) const { return {x(i), y(j)}; }
  double dx() const { return (x_max - x_min) / static_cast<double>(nx - 1); }
  double dy() const { return (y_max - y_min) / static_cast<double>(ny - 1); }

  friend bool operator==(const ImagingGridSpec&, const ImagingGridSpec&) = default;
};

enum class ImageSource { kNumeric, kAnalytic };

inline std::string_view to_string(ImageSource s) {
  return s == ImageSource::kNumeric ? "numeric" : "analytic";
}

/// Sampled imaging functional. values[j * nx + i] holds node (x_i, y_j).
struct ImageMap {
  ImagingGridSpec grid;
  std::vector<double> values;
  double eta = 0.0;
  ImageSource source = ImageSource::kNumeric;

  double at(std::size_t i, std::size_t j) const { return values[j * grid.nx + i]; }
  double& at(std::size_t i, std::size_t j) { return values[j * grid.nx + i]; }

  /// Grid indices of the first node holding the global maximum.
  std::pair<std::size_t, std::size_t> argmax() const {
    std::size_t best = 0;
    for (std::size_t k = 1; k < values.size(); ++k)
      if (values[k] > values[best]) best = k;
    return {best % grid.nx, best / grid.nx};
  }
  Vec2 argmax_location() const {
    const auto [i, j] = argmax();
    return grid.node(i, j);
  }
  double max_value() const {
    double m = 0.0;
    for (double v : values) m = std::max(m, v);
    return m;
  }
};

}  // namespace submig

#pragma once

// Built-in experiment setups: three inclusions of radius 0.05 at
// (0.4, 0), (-0.6, 0.3), (0.1, -0.5) in a unit background, probed with
// 16 equispaced directions.

#include <optional>
#include <string>
#include <string_view>

#include "submig/scene.hpp"

namespace submig {

struct Preset {
  std::string name;
  SceneConfig scene;
  double wavelength;
  int n_directions;
};

inline SceneConfig three_target_scene(double c1, double c2, double c3) {
  constexpr double r = 0.05;
  return SceneConfig({Inhomogeneity({0.4, 0.0}, r, c1, c1), Inhomogeneity({-0.6, 0.3}, r, c2, c2),
                      Inhomogeneity({0.1, -0.5}, r, c3, c3)});
}

/// fig2: wavelength 0.4, eps = mu = 5 for every target.
/// fig3: wavelength 0.2, (eps, mu) = (5, 5), (2, 2), (7, 7).
inline std::optional<Preset> find_preset(std::string_view name) {
  if (name == "fig2") return Preset{"fig2", three_target_scene(5.0, 5.0, 5.0), 0.4, 16};
  if (name == "fig3") return Preset{"fig3", three_target_scene(5.0, 2.0, 7.0), 0.2, 16};
  return std::nullopt;
}

}  // namespace submig

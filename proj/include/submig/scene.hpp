#pragma once

// Physical configuration shared by every stage: the small inclusions, the
// background medium, the probing frequency and the set of plane-wave
// directions. Everything here is validated at construction and immutable
// afterwards.

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "submig/errors.hpp"
#include "submig/geometry.hpp"

namespace submig {

/// One small circular inclusion z + r*B with constant material parameters.
class Inhomogeneity {
 public:
  Inhomogeneity(Vec2 location, double radius, double permittivity, double permeability,
                double shape_area = std::numbers::pi)
      : location_(location),
        radius_(radius),
        permittivity_(permittivity),
        permeability_(permeability),
        shape_area_(shape_area) {
    auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
    if (!std::isfinite(location.x) || !std::isfinite(location.y))
      throw InvalidArgument("inhomogeneity location must be finite");
    if (!positive(radius)) throw InvalidArgument("inhomogeneity radius must be > 0");
    if (!positive(permittivity)) throw InvalidArgument("inhomogeneity permittivity must be > 0");
    if (!positive(permeability)) throw InvalidArgument("inhomogeneity permeability must be > 0");
    if (!positive(shape_area)) throw InvalidArgument("inhomogeneity shape_area must be > 0");
  }

  const Vec2& location() const { return location_; }
  double radius() const { return radius_; }
  double permittivity() const { return permittivity_; }
  double permeability() const { return permeability_; }
  double shape_area() const { return shape_area_; }

 private:
  Vec2 location_;
  double radius_;
  double permittivity_;
  double permeability_;
  double shape_area_;
};

class SceneConfig {
 public:
  explicit SceneConfig(std::vector<Inhomogeneity> inhomogeneities,
                       double background_permittivity = 1.0,
                       double background_permeability = 1.0)
      : targets_(std::move(inhomogeneities)),
        eps0_(background_permittivity),
        mu0_(background_permeability) {
    if (targets_.empty()) throw InvalidArgument("scene needs at least one inhomogeneity");
    if (!(std::isfinite(eps0_) && eps0_ > 0.0))
      throw InvalidArgument("background permittivity must be > 0");
    if (!(std::isfinite(mu0_) && mu0_ > 0.0))
      throw InvalidArgument("background permeability must be > 0");
    for (std::size_t a = 0; a < targets_.size(); ++a)
      for (std::size_t b = a + 1; b < targets_.size(); ++b)
        if (!(distance(targets_[a].location(), targets_[b].location()) > 0.0)) {
          std::ostringstream os;
          os << "inhomogeneities " << a << " and " << b << " share a location";
          throw InvalidArgument(os.str());
        }
  }

  const std::vector<Inhomogeneity>& inhomogeneities() const { return targets_; }
  std::size_t size() const { return targets_.size(); }
  double background_permittivity() const { return eps0_; }
  double background_permeability() const { return mu0_; }

 private:
  std::vector<Inhomogeneity> targets_;
  double eps0_;
  double mu0_;
};

/// Angular frequency and wavelength, kept consistent (omega * wavelength = 2*pi).
class FrequencySpec {
 public:
  static FrequencySpec from_omega(double omega) {
    if (!(std::isfinite(omega) && omega > 0.0)) throw InvalidArgument("omega must be > 0");
    return FrequencySpec(omega, 2.0 * std::numbers::pi / omega);
  }
  static FrequencySpec from_wavelength(double wavelength) {
    if (!(std::isfinite(wavelength) && wavelength > 0.0))
      throw InvalidArgument("wavelength must be > 0");
    return FrequencySpec(2.0 * std::numbers::pi / wavelength, wavelength);
  }

  double omega() const { return omega_; }
  double wavelength() const { return wavelength_; }

 private:
  FrequencySpec(double omega, double wavelength) : omega_(omega), wavelength_(wavelength) {}
  double omega_;
  double wavelength_;
};

/// N unit directions on the circle. Incident directions are theta_l,
/// observation directions are -theta_j.
class DirectionSet {
 public:
  explicit DirectionSet(std::vector<Vec2> directions) : dirs_(std::move(directions)) {
    if (dirs_.size() < 3) throw InvalidArgument("need at least 3 directions to span the circle");
    for (const auto& d : dirs_)
      if (std::abs(norm(d) - 1.0) > 1e-12) throw InvalidArgument("directions must be unit vectors");
    for (std::size_t a = 0; a < dirs_.size(); ++a)
      for (std::size_t b = a + 1; b < dirs_.size(); ++b)
        if (dirs_[a] == dirs_[b]) throw InvalidArgument("directions must be pairwise distinct");
  }

  std::size_t count() const { return dirs_.size(); }
  const std::vector<Vec2>& directions() const { return dirs_; }
  const Vec2& operator[](std::size_t i) const { return dirs_[i]; }

 private:
  std::vector<Vec2> dirs_;
};

/// theta_l = (cos 2*pi*l/N, sin 2*pi*l/N) for l = 1..N.
inline DirectionSet make_directions(int n) {
  if (n < 3) throw InvalidArgument("make_directions: n must be >= 3");
  std::vector<Vec2> dirs;
  dirs.reserve(static_cast<std::size_t>(n));
  for (int l = 1; l <= n; ++l) {
    // Exact values on the axes so that e.g. n = 4 yields exact 0/±1 entries.
    if ((4 * l) % n == 0) {
      static constexpr Vec2 axes[4] = {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
      dirs.push_back(axes[((4 * l) / n) % 4]);
      continue;
    }
    const double angle = 2.0 * std::numbers::pi * l / n;
    dirs.push_back({std::cos(angle), std::sin(angle)});
  }
  return DirectionSet(std::move(dirs));
}

struct ValidationOptions {
  /// Warn when omega*|z_m - z_m'| is at or below this value.
  double separation_threshold = 7.5;
};

struct SceneWarning {
  enum class Kind { kSeparation, kResolution };
  Kind kind;
  std::size_t first;
  std::size_t second;  // equals `first` for resolution warnings
  std::string message;
};

/// Advisory check of the small-inclusion regime: well separated targets
/// (omega*|z_m - z_m'| >> 0.75) and wavelength above the diameter.
inline std::vector<SceneWarning> validate_scene(const SceneConfig& scene, const FrequencySpec& freq,
                                                const ValidationOptions& opts = {}) {
  std::vector<SceneWarning> out;
  const auto& t = scene.inhomogeneities();
  for (std::size_t a = 0; a < t.size(); ++a)
    for (std::size_t b = a + 1; b < t.size(); ++b) {
      const double sep = freq.omega() * distance(t[a].location(), t[b].location());
      if (sep <= opts.separation_threshold) {
        std::ostringstream os;
        os << "targets " << a << " and " << b << ": omega*distance = " << sep
           << " <= " << opts.separation_threshold << " (poorly separated)";
        out.push_back({SceneWarning::Kind::kSeparation, a, b, os.str()});
      }
    }
  for (std::size_t a = 0; a < t.size(); ++a)
    if (freq.wavelength() <= 2.0 * t[a].radius()) {
      std::ostringstream os;
      os << "target " << a << ": wavelength " << freq.wavelength() << " <= diameter "
         << 2.0 * t[a].radius();
      out.push_back({SceneWarning::Kind::kResolution, a, a, os.str()});
    }
  return out;
}

}  // namespace submig

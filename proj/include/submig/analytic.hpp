#pragma once

// Closed-form description of the single-frequency imaging functional in terms
// of J0 and J1, the discrete circle-average identities it rests on, and the
// predicted peak locations under a mismatched test frequency.

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "submig/bessel.hpp"
#include "submig/forward.hpp"
#include "submig/image_map.hpp"
#include "submig/scene.hpp"

namespace submig {

struct QuadratureCheck {
  std::complex<double> lhs0;  // (1/N) sum_n e^{i w theta_n.x}
  std::complex<double> lhs1;  // (1/N) sum_n (theta_n.xi) e^{i w theta_n.x}
  double rhs0;                // J0(w|x|)
  std::complex<double> rhs1;  // i (x/|x| . xi) J1(w|x|), 0 at x = 0
};

/// Evaluates both sides of the circle-average identities. No tolerance is
/// applied here.
inline QuadratureCheck quadrature_identity_check(const Vec2& x, const Vec2& xi, double omega,
                                                 const DirectionSet& dirs) {
  std::complex<double> s0{0.0, 0.0};
  std::complex<double> s1{0.0, 0.0};
  for (const auto& th : dirs.directions()) {
    const auto e = std::polar(1.0, omega * dot(th, x));
    s0 += e;
    s1 += dot(th, xi) * e;
  }
  const double n = static_cast<double>(dirs.count());
  const double r = norm(x);
  const BesselEvaluator bessel;
  const double direction = r > 0.0 ? dot(x, xi) / r : 0.0;
  return {s0 / n, s1 / n, bessel.j0(omega * r),
          std::complex<double>(0.0, direction * bessel.j1(omega * r))};
}

enum class AnalyticForm {
  kLiteral,     // J0^2 - sum_s (rho_hat . e_s)^2 J1^2
  kSimplified,  // J0^2 - J1^2
};

namespace detail {

inline double analytic_summand(const Vec2& rho, AnalyticForm form, const BesselEvaluator& bessel) {
  const double r = norm(rho);
  if (r == 0.0) return 1.0;
  const double j0 = bessel.j0(r);
  const double j1 = bessel.j1(r);
  if (form == AnalyticForm::kSimplified) return j0 * j0 - j1 * j1;
  const double c1 = dot(rho, kE1) / r;
  const double c2 = dot(rho, kE2) / r;
  return j0 * j0 - (c1 * c1 * j1 * j1 + c2 * c2 * j1 * j1);
}

}  // namespace detail

/// |sum_m {J0(|rho_m|)^2 - sum_s (rho_m/|rho_m| . e_s)^2 J1(|rho_m|)^2}| with
/// rho_m = omega z_m - eta x. Targets identical to the background are skipped,
/// as in the forward model.
inline double analytic_image_value(const Vec2& x, double eta, const SceneConfig& scene,
                                   double omega, AnalyticForm form = AnalyticForm::kLiteral) {
  if (!(eta > 0.0)) throw InvalidArgument("analytic_image_value: eta must be > 0");
  if (!(omega > 0.0)) throw InvalidArgument("analytic_image_value: omega must be > 0");
  const BesselEvaluator bessel;
  double sum = 0.0;
  for (const auto& t : scene.inhomogeneities()) {
    if (zero_contrast(scene, t)) continue;
    sum += detail::analytic_summand(omega * t.location() - eta * x, form, bessel);
  }
  return std::abs(sum);
}

inline ImageMap analytic_image_grid(const ImagingGridSpec& grid, double eta,
                                    const SceneConfig& scene, double omega) {
  grid.validate();
  ImageMap map{grid, std::vector<double>(grid.nx * grid.ny), eta, ImageSource::kAnalytic};
  for (std::size_t j = 0; j < grid.ny; ++j)
    for (std::size_t i = 0; i < grid.nx; ++i)
      map.at(i, j) = analytic_image_value(grid.node(i, j), eta, scene, omega);
  return map;
}

/// Where the imaging functional peaks for test frequency eta: (omega/eta) z_m.
inline std::vector<Vec2> predict_peaks(const SceneConfig& scene, double omega, double eta) {
  if (!(eta > 0.0)) throw InvalidArgument("predict_peaks: eta must be > 0");
  std::vector<Vec2> out;
  out.reserve(scene.size());
  for (const auto& t : scene.inhomogeneities()) out.push_back((omega / eta) * t.location());
  return out;
}

}  // namespace submig

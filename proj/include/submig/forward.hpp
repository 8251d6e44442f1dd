#pragma once

// Forward model: far-field amplitudes of small inclusions under plane-wave
// illumination, assembled into the multistatic response (MSR) matrix, plus
// the rank-3-per-target factorization used to check its structure.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>

#include <Eigen/Dense>

#include "submig/errors.hpp"
#include "submig/geometry.hpp"
#include "submig/scene.hpp"

namespace submig {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// N x N far-field data matrix, entry (j, l) = u_inf(-theta_j, theta_l).
struct MSRMatrix {
  ComplexMatrix entries;
  double omega = 0.0;
  bool noisy = false;

  std::size_t size() const { return static_cast<std::size_t>(entries.rows()); }
};

namespace detail {

/// r^2 w^2 e^{i pi/4} / sqrt(8 pi w) without the r^2 factor.
inline Complex farfield_prefactor(double omega) {
  const Complex phase = std::polar(1.0, std::numbers::pi / 4.0);
  return omega * omega * phase / std::sqrt(8.0 * omega * std::numbers::pi);
}

inline double permittivity_contrast(const SceneConfig& scene, const Inhomogeneity& t) {
  const double eps0 = scene.background_permittivity();
  const double mu0 = scene.background_permeability();
  return (t.permittivity() - eps0) / std::sqrt(eps0 * mu0);
}

inline double permeability_contrast(const SceneConfig& scene, const Inhomogeneity& t) {
  const double mu0 = scene.background_permeability();
  return 2.0 * mu0 / (t.permeability() + mu0);
}

}  // namespace detail

/// True when the inclusion is indistinguishable from the background. Such
/// targets are skipped outright: the dipole weight 2 mu0 / (mu_m + mu0) is 1,
/// not 0, at mu_m = mu0, so the formula alone would not silence them.
inline bool zero_contrast(const SceneConfig& scene, const Inhomogeneity& t) {
  return t.permittivity() == scene.background_permittivity() &&
         t.permeability() == scene.background_permeability();
}

/// Leading-order far-field pattern for observation direction `obs_dir` and
/// incident direction `inc_dir`. The polarization tensor is isotropic,
/// A(z_m) = 2 mu0 / (mu_m + mu0) * area(B_m) * I, and each target uses its own
/// radius in the r^2 prefactor.
inline Complex farfield_entry(const SceneConfig& scene, const FrequencySpec& freq,
                              const Vec2& obs_dir, const Vec2& inc_dir) {
  const double omega = freq.omega();
  Complex sum{0.0, 0.0};
  for (const auto& t : scene.inhomogeneities()) {
    if (zero_contrast(scene, t)) continue;
    const double area = t.shape_area();
    const double r2 = t.radius() * t.radius();
    const double bracket = detail::permittivity_contrast(scene, t) * area -
                           dot(obs_dir, inc_dir) * detail::permeability_contrast(scene, t) * area;
    const double phase = omega * dot(inc_dir - obs_dir, t.location());
    sum += r2 * bracket * std::polar(1.0, phase);
  }
  return detail::farfield_prefactor(omega) * sum;
}

inline MSRMatrix assemble_msr(const SceneConfig& scene, const FrequencySpec& freq,
                              const DirectionSet& dirs) {
  const auto n = static_cast<Eigen::Index>(dirs.count());
  MSRMatrix msr{ComplexMatrix(n, n), freq.omega(), false};
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index l = 0; l < n; ++l)
      msr.entries(j, l) = farfield_entry(scene, freq, -dirs[j], dirs[l]);
  return msr;
}

/// E_m(omega): N x 3 matrix with columns e^{i w theta_n.z}, (theta_n.e1) e^{...},
/// (theta_n.e2) e^{...}, all scaled by 1/sqrt(N).
inline ComplexMatrix build_E_matrix(const Vec2& location, double omega, const DirectionSet& dirs) {
  const auto n = static_cast<Eigen::Index>(dirs.count());
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  ComplexMatrix e(n, 3);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Vec2& th = dirs[k];
    const Complex p = scale * std::polar(1.0, omega * dot(th, location));
    e(k, 0) = p;
    e(k, 1) = th.x * p;
    e(k, 2) = th.y * p;
  }
  return e;
}

/// M = sum_m c_m N E_m diag(eps contrast, mu contrast, mu contrast) E_m^T.
/// Independent route to the MSR matrix used for structural checks.
inline ComplexMatrix reconstruct_from_decomposition(const SceneConfig& scene,
                                                    const FrequencySpec& freq,
                                                    const DirectionSet& dirs) {
  const auto n = static_cast<Eigen::Index>(dirs.count());
  const Complex pre = detail::farfield_prefactor(freq.omega()) * static_cast<double>(n);
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  for (const auto& t : scene.inhomogeneities()) {
    if (zero_contrast(scene, t)) continue;
    const ComplexMatrix e = build_E_matrix(t.location(), freq.omega(), dirs);
    Eigen::Vector3cd diag;
    diag << detail::permittivity_contrast(scene, t), detail::permeability_contrast(scene, t),
        detail::permeability_contrast(scene, t);
    const double weight = t.radius() * t.radius() * t.shape_area();
    m += (pre * weight) * (e * diag.asDiagonal() * e.transpose());
  }
  return m;
}

/// Adds circularly-symmetric complex Gaussian noise at the requested SNR.
/// Signal power is the mean |M_jl|^2 over all entries; variates are drawn
/// row-major, real part before imaginary part.
inline MSRMatrix add_noise(const MSRMatrix& msr, double snr_db, std::uint64_t seed) {
  if (!std::isfinite(snr_db)) throw InvalidArgument("add_noise: snr_db must be finite");
  if (msr.noisy) throw InvalidArgument("add_noise: matrix already carries noise");
  const double n_entries = static_cast<double>(msr.entries.size());
  const double signal_power = n_entries > 0 ? msr.entries.squaredNorm() / n_entries : 0.0;
  const double variance = signal_power / std::pow(10.0, snr_db / 10.0);
  const double component_sd = std::sqrt(variance / 2.0);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  MSRMatrix out = msr;
  for (Eigen::Index j = 0; j < out.entries.rows(); ++j)
    for (Eigen::Index l = 0; l < out.entries.cols(); ++l) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      out.entries(j, l) += component_sd * Complex(re, im);
    }
  out.noisy = true;
  return out;
}

}  // namespace submig

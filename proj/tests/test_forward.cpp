#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include <Eigen/SVD>
#include <gtest/gtest.h>

#include "oracles.hpp"
#include "submig/forward.hpp"
#include "submig/presets.hpp"

using namespace submig;

namespace {

const double kOmega04 = 2.0 * std::numbers::pi / 0.4;

double rel_frobenius(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a - b).norm() / b.norm();
}

}  // namespace

TEST(FarfieldEntry, SingleTargetAtOriginMatchesClosedForm) {
  const SceneConfig scene({Inhomogeneity({0, 0}, 0.05, 5, 5)});
  const auto freq = FrequencySpec::from_wavelength(0.4);
  const Vec2 theta{std::cos(0.3), std::sin(0.3)};
  const Complex got = farfield_entry(scene, freq, -theta, theta);
  const double w = kOmega04;
  const Complex expected = 0.05 * 0.05 * w * w * std::numbers::pi *
                           std::polar(1.0, std::numbers::pi / 4) / std::sqrt(8 * w * std::numbers::pi) *
                           (4.0 + 1.0 / 3.0);  // obs . inc = -1
  EXPECT_NEAR(std::abs(got - expected), 0.0, 1e-14 * std::abs(expected));
}

TEST(FarfieldEntry, MatchesTermByTermOracle) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0), mat(1.5, 8.0), ang(0, 2 * std::numbers::pi);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Inhomogeneity> t;
    std::vector<oracle::Target> ot;
    for (int m = 0; m < 3; ++m) {
      const double zx = u(rng) + 3 * m, zy = u(rng), r = 0.02 + 0.05 * std::abs(u(rng));
      const double e = mat(rng), mu = mat(rng), area = 1.0 + std::abs(u(rng));
      t.emplace_back(Vec2{zx, zy}, r, e, mu, area);
      ot.push_back({zx, zy, r, e, mu, area});
    }
    const double a = ang(rng), b = ang(rng), w = 5.0 + 20.0 * std::abs(u(rng));
    const Complex got = farfield_entry(SceneConfig(t), FrequencySpec::from_omega(w),
                                       {std::cos(a), std::sin(a)}, {std::cos(b), std::sin(b)});
    const Complex want = oracle::farfield(ot, w, std::cos(a), std::sin(a), std::cos(b), std::sin(b));
    EXPECT_LT(std::abs(got - want), 1e-12 * std::abs(want));
  }
}

TEST(FarfieldEntry, ZeroContrastTargetContributesNothing) {
  const SceneConfig blank({Inhomogeneity({0.3, 0.1}, 0.05, 1, 1)});
  EXPECT_EQ(farfield_entry(blank, FrequencySpec::from_omega(10), {1, 0}, {0, 1}), Complex(0, 0));
  const auto msr = assemble_msr(blank, FrequencySpec::from_omega(10), make_directions(8));
  EXPECT_EQ(msr.entries.norm(), 0.0);
}

TEST(FarfieldEntry, SwappedDirectionsAreSymmetric) {
  const auto preset = *find_preset("fig2");
  const auto freq = FrequencySpec::from_wavelength(preset.wavelength);
  const auto dirs = make_directions(16);
  for (std::size_t j = 0; j < 16; ++j)
    for (std::size_t l = 0; l < 16; ++l) {
      const Complex a = farfield_entry(preset.scene, freq, -dirs[j], dirs[l]);
      const Complex b = farfield_entry(preset.scene, freq, -dirs[l], dirs[j]);
      EXPECT_LT(std::abs(a - b), 1e-12 * std::abs(a) + 1e-300);
    }
}

TEST(AssembleMsr, Fig2IsComplexSymmetric) {
  const auto preset = *find_preset("fig2");
  const auto msr = assemble_msr(preset.scene, FrequencySpec::from_wavelength(0.4), make_directions(16));
  EXPECT_EQ(msr.size(), 16u);
  EXPECT_FALSE(msr.noisy);
  EXPECT_DOUBLE_EQ(msr.omega, kOmega04);
  const double scale = msr.entries.cwiseAbs().maxCoeff();
  EXPECT_LE((msr.entries - msr.entries.transpose()).cwiseAbs().maxCoeff(), 1e-12 * scale);
}

TEST(AssembleMsr, SingleTargetAtOriginHasRankThree) {
  const SceneConfig scene({Inhomogeneity({0, 0}, 0.05, 5, 5)});
  const auto msr = assemble_msr(scene, FrequencySpec::from_wavelength(0.4), make_directions(16));
  Eigen::JacobiSVD<ComplexMatrix> svd(msr.entries);
  const auto& s = svd.singularValues();
  EXPECT_GT(s[2], 1e-3 * s[0]);
  for (Eigen::Index k = 3; k < s.size(); ++k) EXPECT_LT(s[k], 1e-10 * s[0]);
}

TEST(AssembleMsr, AdditiveInTargets) {
  const auto preset = *find_preset("fig3");
  const auto freq = FrequencySpec::from_wavelength(preset.wavelength);
  const auto dirs = make_directions(24);
  const auto all = assemble_msr(preset.scene, freq, dirs).entries;
  ComplexMatrix sum = ComplexMatrix::Zero(24, 24);
  for (const auto& t : preset.scene.inhomogeneities())
    sum += assemble_msr(SceneConfig({t}), freq, dirs).entries;
  EXPECT_LE(rel_frobenius(sum, all), 1e-12);
}

TEST(BuildEMatrix, OriginFirstColumnIsUniform) {
  const auto e = build_E_matrix({0, 0}, 12.0, make_directions(9));
  for (Eigen::Index k = 0; k < 9; ++k) EXPECT_NEAR(std::abs(e(k, 0) - 1.0 / 3.0), 0.0, 1e-15);
}

TEST(BuildEMatrix, ColumnNorms) {
  const auto e = build_E_matrix({0.4, -0.2}, kOmega04, make_directions(16));
  EXPECT_NEAR(e.col(0).norm(), 1.0, 1e-14);
  EXPECT_NEAR(e.col(1).squaredNorm() + e.col(2).squaredNorm(), 1.0, 1e-14);
}

TEST(BuildEMatrix, DecompositionReproducesAssembledMatrix) {
  const auto dirs = make_directions(16);
  const auto freq = FrequencySpec::from_wavelength(0.4);
  const SceneConfig single({Inhomogeneity({0.4, 0}, 0.05, 5, 5)});
  EXPECT_LE(rel_frobenius(reconstruct_from_decomposition(single, freq, dirs),
                          assemble_msr(single, freq, dirs).entries),
            1e-10);
  for (const char* name : {"fig2", "fig3"}) {
    const auto p = *find_preset(name);
    const auto f = FrequencySpec::from_wavelength(p.wavelength);
    EXPECT_LE(rel_frobenius(reconstruct_from_decomposition(p.scene, f, dirs),
                            assemble_msr(p.scene, f, dirs).entries),
              1e-10)
        << name;
  }
}

TEST(AddNoise, HugeSnrIsNearlyNoiseless) {
  const auto p = *find_preset("fig2");
  const auto clean = assemble_msr(p.scene, FrequencySpec::from_wavelength(0.4), make_directions(16));
  const auto noisy = add_noise(clean, 300.0, 1);
  EXPECT_TRUE(noisy.noisy);
  EXPECT_LT(rel_frobenius(noisy.entries, clean.entries), 1e-10);
}

TEST(AddNoise, SameSeedIsBitIdentical) {
  const auto p = *find_preset("fig2");
  const auto clean = assemble_msr(p.scene, FrequencySpec::from_wavelength(0.4), make_directions(16));
  const auto a = add_noise(clean, 20.0, 42);
  const auto b = add_noise(clean, 20.0, 42);
  const auto c = add_noise(clean, 20.0, 43);
  EXPECT_TRUE(a.entries == b.entries);
  EXPECT_FALSE(a.entries == c.entries);
}

TEST(AddNoise, EmpiricalSnrIsNearRequested) {
  const auto p = *find_preset("fig2");
  const auto clean = assemble_msr(p.scene, FrequencySpec::from_wavelength(0.4), make_directions(16));
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto noisy = add_noise(clean, 20.0, seed);
    const double snr =
        10.0 * std::log10(clean.entries.squaredNorm() / (noisy.entries - clean.entries).squaredNorm());
    EXPECT_GE(snr, 17.0);
    EXPECT_LE(snr, 23.0);
  }
}

TEST(AddNoise, RejectsNonFiniteSnrAndDoubleNoise) {
  const auto clean = assemble_msr(SceneConfig({Inhomogeneity({0, 0}, 0.05, 5, 5)}),
                                  FrequencySpec::from_omega(10), make_directions(8));
  EXPECT_THROW(add_noise(clean, std::nan(""), 0), InvalidArgument);
  EXPECT_THROW(add_noise(clean, INFINITY, 0), InvalidArgument);
  EXPECT_THROW(add_noise(add_noise(clean, 20, 0), 20, 0), InvalidArgument);
}

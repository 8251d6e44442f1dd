#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "submig/forward.hpp"
#include "submig/presets.hpp"
#include "submig/spectral.hpp"

using namespace submig;

namespace {

MSRMatrix fig_msr(const char* name, int n = 16) {
  const auto p = *find_preset(name);
  return assemble_msr(p.scene, FrequencySpec::from_wavelength(p.wavelength), make_directions(n));
}

}  // namespace

TEST(Decompose, ReconstructsAsUSigmaVAdjoint) {
  const auto msr = fig_msr("fig2");
  const auto f = decompose(msr);
  EXPECT_LE((f.reconstruct() - msr.entries).norm(), 1e-10 * msr.entries.norm());
  // explicit sum sigma_m U_m conj(V_m)^T
  ComplexMatrix sum = ComplexMatrix::Zero(16, 16);
  for (Eigen::Index m = 0; m < 16; ++m)
    sum += f.singular_values[m] * f.left.col(m) * f.right.col(m).conjugate().transpose();
  EXPECT_LE((sum - msr.entries).norm(), 1e-10 * msr.entries.norm());
}

TEST(Decompose, FactorsAreOrthonormalAndSorted) {
  const auto f = decompose(add_noise(fig_msr("fig3"), 20, 3));
  const auto id = ComplexMatrix::Identity(16, 16);
  EXPECT_LE((f.left.adjoint() * f.left - id).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_LE((f.right.adjoint() * f.right - id).cwiseAbs().maxCoeff(), 1e-10);
  for (Eigen::Index k = 1; k < 16; ++k) EXPECT_GE(f.singular_values[k - 1], f.singular_values[k]);
  EXPECT_GE(f.singular_values.minCoeff(), 0.0);
  EXPECT_FALSE(f.rank.has_value());
}

TEST(Decompose, ZeroMatrixHasZeroSpectrum) {
  const MSRMatrix zero{ComplexMatrix::Zero(8, 8), 10.0, false};
  const auto f = decompose(zero);
  EXPECT_EQ(f.singular_values.maxCoeff(), 0.0);
  EXPECT_EQ(*select_rank(f, AutoRank{0.01}).rank, 0u);
}

TEST(Decompose, SingleTargetHasThreeDominantValues) {
  const auto msr = assemble_msr(SceneConfig({Inhomogeneity({0.4, 0}, 0.05, 5, 5)}),
                                FrequencySpec::from_wavelength(0.4), make_directions(16));
  const auto f = decompose(msr);
  EXPECT_LE(f.singular_values[3] / f.singular_values[0], 1e-8);
}

TEST(Decompose, RejectsNonFinite) {
  MSRMatrix bad{ComplexMatrix::Zero(4, 4), 1.0, false};
  bad.entries(1, 2) = Complex(std::nan(""), 0);
  EXPECT_THROW(decompose(bad), InvalidArgument);
}

TEST(SelectRank, AutoFindsNineForFig2) {
  const auto f = select_rank(decompose(fig_msr("fig2")), AutoRank{0.01});
  EXPECT_EQ(*f.rank, 9u);
}

TEST(SelectRank, FixedModeAndErrors) {
  const auto f = decompose(fig_msr("fig2"));
  EXPECT_EQ(*select_rank(f, FixedRank{9}).rank, 9u);
  EXPECT_EQ(*select_rank(f, FixedRank{16}).rank, 16u);
  EXPECT_THROW(select_rank(f, FixedRank{17}), InvalidArgument);
  EXPECT_THROW(select_rank(f, FixedRank{0}), InvalidArgument);
  EXPECT_THROW(select_rank(f, AutoRank{0.0}), InvalidArgument);
  EXPECT_THROW(select_rank(f, AutoRank{1.0}), InvalidArgument);
}

TEST(SelectRank, TieAtThresholdIsIncluded) {
  SpectralFactors f{Eigen::VectorXd(4), ComplexMatrix::Identity(4, 4), ComplexMatrix::Identity(4, 4),
                    std::nullopt};
  f.singular_values << 2.0, 1.0, 0.5, 0.25;
  EXPECT_EQ(*select_rank(f, AutoRank{0.25}).rank, 3u);
  EXPECT_EQ(*select_rank(f, AutoRank{0.2501}).rank, 2u);
}

TEST(SpectralProperties, ScaleEquivariance) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> scale(0.01, 100.0);
  const auto msr = add_noise(fig_msr("fig2"), 25, 9);
  const auto base = decompose(msr);
  const auto base_rank = *select_rank(base, AutoRank{0.01}).rank;
  for (int trial = 0; trial < 10; ++trial) {
    const double c = scale(rng);
    MSRMatrix scaled = msr;
    scaled.entries *= c;
    const auto f = decompose(scaled);
    EXPECT_LE((f.singular_values - c * base.singular_values).norm(),
              1e-12 * c * base.singular_values.norm());
    EXPECT_EQ(*select_rank(f, AutoRank{0.01}).rank, base_rank);
  }
}

TEST(SpectralProperties, EckartYoungResidual) {
  const auto msr = add_noise(fig_msr("fig3", 32), 20, 2);
  const auto f = decompose(msr);
  for (std::size_t k : {0u, 1u, 5u, 9u, 20u, 32u}) {
    const double residual = (msr.entries - f.reconstruct(k)).norm();
    const double tail = f.singular_values.tail(32 - static_cast<Eigen::Index>(k)).norm();
    EXPECT_NEAR(residual, tail, 1e-10 * msr.entries.norm()) << "k = " << k;
  }
}

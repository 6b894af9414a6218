#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "mistab/analysis.hpp"
#include "mistab/bloch.hpp"
#include "mistab/dispersion.hpp"
#include "mistab/numerics.hpp"
#include "oracle.hpp"

using namespace mistab;

namespace {

constexpr cplx kI{0.0, 1.0};

cplx cos_coeff(const FourierVec& f, int j, int n) { return f.at(j, n) + f.at(j, -n); }
cplx sin_coeff(const FourierVec& f, int j, int n) { return kI * (f.at(j, n) - f.at(j, -n)); }

// True when k is within margin of any FDSW2 factor root or pole at T.
bool near_break(double k, double T, double margin) {
  for (auto w : {Factor::I1, Factor::I2, Factor::I3, Factor::I4}) {
    for (double r : find_factor_roots(ModelId::FDSW2, w, T, 0.05, 50.0)) {
      if (std::abs(k - r) < margin) return true;
    }
  }
  return false;
}

}  // namespace

TEST(Bloch, EigenbasisLeadingTerms) {
  const double c = phase_speed(1.0, 0.0);
  const auto b = eigenbasis(0.0, 0.0, 1.0, 0.0);
  EXPECT_NEAR(std::abs(b.phi[2].at(0, 0) - 2.0 * c), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(b.phi[2].at(1, 0) + 1.0), 0.0, 1e-15);
  for (int n : {-2, -1, 1, 2}) {
    EXPECT_EQ(b.phi[2].at(0, n), cplx{});
    EXPECT_EQ(b.phi[2].at(1, n), cplx{});
  }
  EXPECT_NEAR(std::abs(cos_coeff(b.phi[0], 0, 1) - c), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(sin_coeff(b.phi[1], 1, 1) - 1.0), 0.0, 1e-15);
}

TEST(Bloch, EigenbasisSidebandTilt) {
  const auto s = eval_dispersion(1.0, 0.0);
  const auto b = eigenbasis(0.1, 0.0, 1.0, 0.0);
  const cplx tilt = kI * 0.1 * s.dc / (s.c2 + 1.0);
  EXPECT_NEAR(std::abs(sin_coeff(b.phi[0], 0, 1) - tilt), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(sin_coeff(b.phi[0], 1, 1) + tilt * s.c), 0.0, 1e-15);
}

TEST(Bloch, EigenbasisAmplitudeCorrection) {
  const auto b = eigenbasis(0.0, 0.01, 1.0, 0.0);
  EXPECT_NEAR(cos_coeff(b.phi[3], 0, 1).real(), 0.01 / (2 * 0.87269362089782969154), 1e-16);
  EXPECT_NEAR(cos_coeff(b.phi[3], 0, 1).real(), 0.005729, 1e-6);
  EXPECT_NEAR(std::abs(cos_coeff(b.phi[3], 1, 1)), 0.0, 1e-16);
}

TEST(Bloch, ZeroFloquetZeroAmplitude) {
  for (double k : {0.5, 1.0, 2.0}) {
    const auto bm = build_matrices(0.0, 0.0, k, 0.3);
    EXPECT_EQ(bm.L.norm(), 0.0);
    for (int i = 0; i < 4; ++i) EXPECT_EQ(std::abs(bm.quartic[i]), 0.0);
    EXPECT_NEAR(std::abs(bm.quartic[4] - bm.I.determinant()), 0.0, 1e-15);
  }
}

TEST(Bloch, QuarticMatchesEigenvalues) {
  const auto bm = build_matrices(0.01, 0.01, 1.3, 0.2);
  Eigen::ComplexEigenSolver<Eigen::Matrix4cd> es(bm.I.inverse() * bm.L);
  const auto roots = quartic_roots(bm.quartic);
  for (int i = 0; i < 4; ++i) {
    double best = 1e300;
    for (const auto& r : roots) best = std::min(best, std::abs(r - es.eigenvalues()[i]));
    EXPECT_LT(best, 1e-10);
  }
}

TEST(Bloch, ZeroAmplitudeRoots) {
  const auto s = eval_dispersion(1.0, 0.0);
  const double xi = 0.01;
  const auto bm = build_matrices(xi, 0.0, 1.0, 0.0);
  auto roots = quartic_roots(bm.quartic);
  for (const auto& r : roots) EXPECT_LT(std::abs(r.real()), 1e-12);

  const double c = s.c, c2 = s.c2, q = 4 * c2 + 1;
  Eigen::Matrix2cd block;
  block << kI * xi * c * (4 * c2 + 5) / q, -kI * xi * (4 * c2 - 1) / q,
      -kI * xi * (4 * c2 - 1) / q, kI * xi * c * (4 * c2 - 3) / q;
  Eigen::ComplexEigenSolver<Eigen::Matrix2cd> es(block);
  // The carrier pair is the double root -i xi k c' split by the O(xi^2) skew entry.
  const double skew = 0.5 * xi * xi * (2 * s.dc + s.d2c);
  std::vector<cplx> want{-kI * xi * s.dc + kI * skew, -kI * xi * s.dc - kI * skew,
                         es.eigenvalues()[0], es.eigenvalues()[1]};
  for (const auto& w : want) {
    auto it = std::min_element(roots.begin(), roots.end(), [&](cplx a, cplx b) {
      return std::abs(a - w) < std::abs(b - w);
    });
    EXPECT_LT(std::abs(*it - w), 1e-9);
    *it = cplx{1e9, 1e9};
  }
}

TEST(Bloch, ZeroAmplitudeRootsAreReal) {
  for (double T : oracle::kProbeBond) {
    for (double k : oracle::kProbeKappa) {
      const auto v = classify_from_quartic(build_matrices(0.01, 0.0, k, T));
      double mx = 0.0;
      for (const auto& x : v.x) mx = std::max(mx, std::abs(x));
      EXPECT_LE(v.max_imag, 1e-8 * (1.0 + mx)) << k << " " << T;
      EXPECT_EQ(v.stability, Stability::Stable);
    }
  }
}

TEST(Bloch, ZeroTensionExamples) {
  EXPECT_EQ(classify_from_quartic(build_matrices(0.01, 0.01, 2.0, 0.0)).stability,
            Stability::Unstable);
  EXPECT_EQ(classify_from_quartic(build_matrices(0.01, 0.01, 0.5, 0.0)).stability,
            Stability::Stable);
  const auto roots = quartic_roots(build_matrices(0.01, 0.01, 2.0, 0.0).quartic);
  double mx = 0.0;
  for (const auto& r : roots) mx = std::max(mx, std::abs(r.real()));
  EXPECT_GT(mx, 1e-6);
}

TEST(Bloch, DegenerateQuartic) {
  EXPECT_THROW(classify_from_quartic(build_matrices(0.0, 0.01, 1.0, 0.0)), NumericalError);
}

TEST(Bloch, ResonanceIsReported) {
  const double t1 = std::tanh(1.0), t2 = std::tanh(2.0);
  const double T = (t1 - t2 / 2) / (2 * t2 - t1);
  EXPECT_THROW(build_matrices(0.01, 0.01, 1.0, T), ResonanceError);
}

TEST(Bloch, ReducedQuarticIsReal) {
  for (double T : oracle::kProbeBond) {
    for (double k : oracle::kProbeKappa) {
      const auto m = reduced_quartic(build_matrices(0.01, 0.01, k, T));
      for (const auto& c : m) EXPECT_LT(std::abs(c.imag()), 1e-9 * (1.0 + std::abs(c))) << k;
      EXPECT_NEAR(std::abs(m[4] - 1.0), 0.0, 1e-15);
    }
  }
}

TEST(Bloch, DiscriminantAgreesWithRoots) {
  for (double T : oracle::kProbeBond) {
    for (double k : oracle::kProbeKappa) {
      for (double xi : {1e-2, 1e-3}) {
        const auto bm = build_matrices(xi, 0.01, k, T);
        EXPECT_EQ(classify_by_discriminant(reduced_quartic(bm)), classify_from_quartic(bm).stability)
            << "k=" << k << " T=" << T << " xi=" << xi;
      }
    }
  }
}

TEST(Bloch, ProbeAgreesWithIndex) {
  int compared = 0;
  for (double T : oracle::kProbeBond) {
    for (double k : oracle::kProbeKappa) {
      if (near_break(k, T, 0.05)) continue;
      ++compared;
      const bool unstable = index(ModelId::FDSW2, k, T).delta_sign < 0;
      EXPECT_EQ(probe_quartic(k, T) == Stability::Unstable, unstable) << "k=" << k << " T=" << T;
    }
  }
  EXPECT_GE(compared, 20);
}

TEST(Bloch, HalvingProbeKeepsClassification) {
  for (double T : oracle::kProbeBond) {
    for (double k : oracle::kProbeKappa) {
      if (near_break(k, T, 0.05)) continue;
      const auto full = classify_from_quartic(build_matrices(1e-2, 1e-2, k, T)).stability;
      const auto half = classify_from_quartic(build_matrices(5e-3, 5e-3, k, T)).stability;
      EXPECT_EQ(full, half) << "k=" << k << " T=" << T;
    }
  }
}

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "mistab/dispersion.hpp"
#include "mistab/numerics.hpp"
#include "oracle.hpp"

using namespace mistab;

namespace {

void expect_rel(double got, long double want, double rel, double floor_scale) {
  const double scale = std::max<double>(std::abs(static_cast<double>(want)), floor_scale);
  EXPECT_LE(std::abs(got - static_cast<double>(want)), rel * scale)
      << "got " << got << " want " << static_cast<double>(want);
}

}  // namespace

TEST(Dispersion, FrozenPhaseSpeeds) {
  // mpmath, 30 digits
  EXPECT_NEAR(phase_speed(1.0, 0.0), 0.87269362089782969154, 1e-15);
  EXPECT_NEAR(phase_speed(1.0, 1.0), 1.2341751544701950352, 1e-15);
  EXPECT_NEAR(eval_dispersion_squared(2.0, 0.0), 0.48201379003790844197, 1e-15);
  EXPECT_NEAR(eval_dispersion_squared(1.0, 0.0), 0.76159415595576488812, 1e-15);
  EXPECT_NEAR(eval_dispersion(1.0, 0.0).dc, -0.19572723242223277472, 1e-14);
  EXPECT_NEAR(eval_dispersion(1.0, 0.0).dcg, -0.41040652201376677615, 1e-14);
}

TEST(Dispersion, LongWaveLimit) {
  EXPECT_EQ(eval_dispersion_squared(0.0, 0.0), 1.0);
  EXPECT_EQ(eval_dispersion_squared(0.0, 3.0), 1.0);
  const auto s = eval_dispersion(1e-8, 0.0);
  EXPECT_NEAR(s.c, 1.0, 1e-15);
  EXPECT_NEAR(s.cg, 1.0, 1e-15);
  EXPECT_LT(s.dcg, 0.0);
  EXPECT_NEAR(s.dcg, -1e-8, 1e-12);
}

TEST(Dispersion, DomainErrors) {
  EXPECT_THROW(eval_dispersion(0.0, 0.0), DomainError);
  EXPECT_THROW(eval_dispersion(-1.0, 0.0), DomainError);
  EXPECT_THROW(eval_dispersion(1.0, -0.1), DomainError);
  EXPECT_THROW(eval_dispersion(std::numeric_limits<double>::quiet_NaN(), 0.0), DomainError);
  EXPECT_THROW(eval_dispersion_squared(-1.0, 0.0), DomainError);
}

TEST(Dispersion, SquareMatchesProduct) {
  for (double T : oracle::kBonds) {
    for (double k : oracle::log_space(0.01, 10.0, 50)) {
      const auto s = eval_dispersion(k, T);
      EXPECT_NEAR(s.c2, s.c * s.c, 4e-16 * s.c2);
      expect_rel(s.c, oracle::c(k, T), 1e-15, 0.0);
    }
  }
}

// Closed forms against fourth-order finite differences taken in long double.
TEST(Dispersion, DerivativesMatchFiniteDifferences) {
  for (double T : oracle::kBonds) {
    for (double k : oracle::log_space(0.05, 10.0, 80)) {
      const auto s = eval_dispersion(k, T);
      const oracle::ld h1 = 1e-6L * std::max(1.0, k);
      const oracle::ld h2 = 1e-4L * std::max(1.0, k);
      auto cf = [T](oracle::ld x) { return oracle::c(x, T); };
      auto kcf = [T](oracle::ld x) { return oracle::kc(x, T); };
      SCOPED_TRACE(testing::Message() << "kappa=" << k << " T=" << T);
      expect_rel(s.dc, oracle::d1(cf, k, h1), 1e-6, 1e-3);
      expect_rel(s.d2c, oracle::d2(cf, k, h2), 1e-6, 1e-3);
      expect_rel(s.cg, oracle::d1(kcf, k, h1), 1e-6, 1e-3);
      expect_rel(s.dcg, oracle::d2(kcf, k, h2), 1e-6, 1e-3);
    }
  }
}

TEST(Dispersion, SeriesAndDirectBranchesOverlap) {
  for (double k : {2e-3, 5e-3, 8e-3, 1e-2, 1.5e-2, 3e-2}) {
    const auto a = detail::tanc_series(k);
    const auto b = detail::tanc_direct(k);
    EXPECT_NEAR(a.g, b.g, 1e-12) << k;
    EXPECT_NEAR(a.dg, b.dg, 1e-12) << k;
    EXPECT_NEAR(a.d2g, b.d2g, 1e-12) << k;
  }
}

TEST(Dispersion, ContinuousAcrossSeriesThreshold) {
  const double t = tol::series_threshold;
  for (double T : oracle::kBonds) {
    const auto lo = eval_dispersion(std::nextafter(t, 0.0), T);
    const auto hi = eval_dispersion(t, T);
    EXPECT_NEAR(lo.c, hi.c, 1e-12);
    EXPECT_NEAR(lo.dc, hi.dc, 1e-12);
    EXPECT_NEAR(lo.d2c, hi.d2c, 1e-11);
    EXPECT_NEAR(lo.dcg, hi.dcg, 1e-11);
  }
}

TEST(Dispersion, MonotoneWithoutSurfaceTension) {
  double prev = phase_speed(1e-3, 0.0);
  for (double k : oracle::log_space(2e-3, 30.0, 400)) {
    const double c = phase_speed(k, 0.0);
    EXPECT_LT(c, prev);
    EXPECT_LT(eval_dispersion(k, 0.0).dc, 0.0);
    prev = c;
  }
}

TEST(Dispersion, GroupSpeedIdentities) {
  for (double T : oracle::kBonds) {
    for (double k : oracle::log_space(0.02, 20.0, 40)) {
      const auto s = eval_dispersion(k, T);
      EXPECT_NEAR(s.cg, s.c + k * s.dc, 1e-14 * (1.0 + std::abs(s.cg)));
      EXPECT_NEAR(s.dcg, 2.0 * s.dc + k * s.d2c, 1e-13 * (1.0 + std::abs(s.dcg)));
    }
  }
}

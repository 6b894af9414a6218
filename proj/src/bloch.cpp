#include "mistab/bloch.hpp"

#include <algorithm>
#include <cmath>

#include "mistab/dispersion.hpp"
#include "mistab/numerics.hpp"
#include "mistab/stokes.hpp"

namespace mistab {

namespace {

constexpr cplx I1{0.0, 1.0};

// Adds v * cos(nz) (n >= 1) or the constant v (n = 0) to component j.
void add_cos(FourierVec& f, int j, int n, cplx v) {
  if (n == 0) {
    f.at(j, 0) += v;
    return;
  }
  f.at(j, n) += 0.5 * v;
  f.at(j, -n) += 0.5 * v;
}

void add_sin(FourierVec& f, int j, int n, cplx v) {
  f.at(j, n) += v / (2.0 * I1);
  f.at(j, -n) -= v / (2.0 * I1);
}

using Poly = std::array<cplx, 5>;

Poly poly_mul(const Poly& p, const Poly& q) {
  Poly r{};
  for (int i = 0; i < 5; ++i) {
    if (p[i] == cplx{}) continue;
    for (int j = 0; i + j < 5; ++j) r[i + j] += p[i] * q[j];
  }
  return r;
}

}  // namespace

cplx inner(const FourierVec& f, const FourierVec& g) {
  cplx acc{};
  for (int j = 0; j < 2; ++j) {
    for (int n = -2; n <= 2; ++n) acc += f.at(j, n) * std::conj(g.at(j, n));
  }
  return acc;
}

EigenBasis eigenbasis(double xi, double amplitude, double kappa, double bond) {
  const DispersionSample s = eval_dispersion(kappa, bond);
  const double h2 = harmonic_coeffs(kappa, bond).h2;
  const double c = s.c;
  const double c2 = s.c2;
  const double a = amplitude;
  const double xi2 = xi * xi;
  const double k2 = kappa * kappa;

  EigenBasis b;
  b.p2 = 0.5 * k2 / (c2 + 1.0) *
         Eigen::Vector2d(-3.0 * c * s.dc * s.dc / (c2 + 1.0) + s.d2c,
                         s.dc * s.dc * (2.0 * c2 - 1.0) / (c2 + 1.0) - c * s.d2c);

  const cplx tilt = I1 * xi * kappa * s.dc / (c2 + 1.0);
  const double second_eta = 0.5 * a * (4.0 * c * h2 - 1.0);
  const double second_u = 0.5 * a * 4.0 * h2;

  auto& p1 = b.phi[0];
  add_cos(p1, 0, 1, c + xi2 * b.p2[0]);
  add_cos(p1, 1, 1, 1.0 + xi2 * b.p2[1]);
  add_sin(p1, 0, 1, tilt);
  add_sin(p1, 1, 1, -tilt * c);
  add_cos(p1, 0, 0, a / (4.0 * c) * (-c * (1.0 + 4.0 * c * h2)));
  add_cos(p1, 1, 0, a / (4.0 * c) * (1.0 - 4.0 * c * h2));
  add_cos(p1, 0, 2, second_eta);
  add_cos(p1, 1, 2, second_u);

  auto& p2 = b.phi[1];
  add_sin(p2, 0, 1, c + xi2 * b.p2[0]);
  add_sin(p2, 1, 1, 1.0 + xi2 * b.p2[1]);
  add_cos(p2, 0, 1, -tilt);
  add_cos(p2, 1, 1, tilt * c);
  add_sin(p2, 0, 2, second_eta);
  add_sin(p2, 1, 2, second_u);

  auto& p3 = b.phi[2];
  add_cos(p3, 0, 0, 2.0 * c - xi2 * k2 * c / 6.0);
  add_cos(p3, 1, 0, -1.0);
  add_cos(p3, 0, 1, a);

  auto& p4 = b.phi[3];
  add_cos(p4, 0, 0, 1.0 - xi2 * k2 / 12.0);
  add_cos(p4, 1, 0, 2.0 * c);
  add_cos(p4, 0, 1, a / (2.0 * c));
  return b;
}

BlochMatrices build_matrices(double xi, double amplitude, double kappa, double bond) {
  const DispersionSample s = eval_dispersion(kappa, bond);
  const double h2 = harmonic_coeffs(kappa, bond).h2;
  const double c = s.c;
  const double c2 = s.c2;
  const double a = amplitude;
  const double q = 4.0 * c2 + 1.0;
  const double kdc = kappa * s.dc;

  BlochMatrices bm;
  bm.xi = xi;
  bm.amplitude = a;
  bm.kappa = kappa;
  bm.bond = bond;

  auto& L = bm.L;
  L.setZero();
  L(3, 1) += 0.25 * a * (c2 + 1.0);

  const cplx ix = I1 * xi;
  L(0, 0) += -ix * kdc;
  L(1, 1) += -ix * kdc;
  L(2, 2) += ix * c * (4.0 * c2 + 5.0) / q;
  L(2, 3) += -ix * (4.0 * c2 - 1.0) / q;
  L(3, 2) += -ix * (4.0 * c2 - 1.0) / q;
  L(3, 3) += ix * c * (4.0 * c2 - 3.0) / q;

  const double shared = 4.0 * c * (1.0 - c2) * h2;
  const double Lc = (shared - kdc * c - 1.0 - 5.0 * c2) / (2.0 * c * (c2 + 1.0));
  const double L31 = shared - 2.0 - c2;
  const double L41 = (shared - 2.0 * (c2 + 1.0) - 4.0 * c2 * c2) / (2.0 * c);
  L(0, 2) += ix * a * Lc * 2.0 * c;
  L(0, 3) += ix * a * Lc;
  L(2, 0) += ix * a * L31 / (2.0 * q);
  L(3, 0) += ix * a * L41 / (2.0 * q);

  const double skew = 0.5 * xi * xi * kappa * (2.0 * s.dc + kappa * s.d2c);
  L(0, 1) += skew;
  L(1, 0) -= skew;

  auto& G = bm.I;
  G.setIdentity();
  const double f1 = a * (4.0 * c * (1.0 - 2.0 * c2) * h2 - 1.0) / (4.0 * c * (c2 + 1.0) * q);
  G(0, 2) += f1 * 2.0 * q;
  G(2, 0) += f1 * (c2 + 1.0);
  const double f2 = a * (1.0 - 6.0 * c * h2) / (2.0 * (c2 + 1.0) * q);
  G(0, 3) += f2 * 2.0 * q;
  G(3, 0) += f2 * (c2 + 1.0);
  const cplx f3 = -ix * a * kdc / (4.0 * c * (c2 + 1.0) * (c2 + 1.0) * q);
  G(1, 2) += f3 * 4.0 * c * q;
  G(1, 3) += f3 * 2.0 * q;
  G(2, 1) += f3 * 2.0 * c * (c2 + 1.0);
  G(3, 1) += f3 * (c2 + 1.0);

  bm.quartic = characteristic_quartic(bm.L, bm.I);
  return bm;
}

std::array<cplx, 5> characteristic_quartic(const Eigen::Matrix4cd& L, const Eigen::Matrix4cd& I) {
  // Leibniz expansion; each entry is the linear polynomial L_kl - lambda I_kl.
  std::array<int, 4> perm{0, 1, 2, 3};
  Poly det{};
  do {
    int inversions = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) inversions += perm[i] > perm[j];
    Poly term{};
    term[0] = inversions % 2 == 0 ? 1.0 : -1.0;
    for (int row = 0; row < 4; ++row) {
      Poly entry{};
      entry[0] = L(row, perm[row]);
      entry[1] = -I(row, perm[row]);
      term = poly_mul(term, entry);
    }
    for (int k = 0; k < 5; ++k) det[k] += term[k];
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

std::array<cplx, 4> quartic_roots(const std::array<cplx, 5>& coeffs) {
  const cplx lead = coeffs[4];
  if (std::abs(lead) == 0.0) throw NumericalError("quartic leading coefficient is zero");

  Eigen::Matrix4cd companion = Eigen::Matrix4cd::Zero();
  for (int i = 1; i < 4; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < 4; ++i) companion(i, 3) = -coeffs[i] / lead;

  Eigen::ComplexEigenSolver<Eigen::Matrix4cd> solver(companion, false);
  if (solver.info() != Eigen::Success) throw NumericalError("companion eigensolve failed");

  std::array<cplx, 4> roots;
  for (int i = 0; i < 4; ++i) {
    cplx x = solver.eigenvalues()[i];
    for (int it = 0; it < 3; ++it) {
      cplx p = coeffs[4], dp = 0.0;
      for (int k = 3; k >= 0; --k) {
        dp = dp * x + p;
        p = p * x + coeffs[k];
      }
      if (std::abs(dp) == 0.0) break;
      const cplx step = p / dp;
      // Newton only refines; a large step means a clustered root.
      if (std::abs(step) > 1e-6 * (1.0 + std::abs(x))) break;
      x -= step;
    }
    roots[i] = x;
  }
  return roots;
}

std::array<cplx, 5> reduced_quartic(const BlochMatrices& bm) {
  const cplx ix = I1 * bm.xi;
  std::array<cplx, 5> q;
  cplx power = 1.0;
  for (int k = 0; k < 5; ++k) {
    q[k] = bm.quartic[k] * power;
    power *= ix;
  }
  const double scale = std::max({std::abs(q[0]), std::abs(q[1]), std::abs(q[2]),
                                 std::abs(q[3]), std::abs(q[4])});
  if (!(std::abs(q[4]) > 1e-12 * scale) || scale == 0.0) {
    throw NumericalError("degenerate quartic: leading coefficient vanishes");
  }
  const cplx lead = q[4];
  for (auto& v : q) v /= lead;
  return q;
}

QuarticVerdict classify_from_quartic(const BlochMatrices& bm, double tol) {
  const auto monic = reduced_quartic(bm);
  QuarticVerdict v;
  v.x = quartic_roots(monic);
  double max_abs = 0.0;
  for (const auto& x : v.x) {
    v.max_imag = std::max(v.max_imag, std::abs(x.imag()));
    max_abs = std::max(max_abs, std::abs(x));
  }
  v.stability = v.max_imag > tol * (1.0 + max_abs) ? Stability::Unstable : Stability::Stable;
  return v;
}

Stability classify_by_discriminant(const std::array<cplx, 5>& monic) {
  double scale = 0.0;
  for (const auto& c : monic) scale = std::max(scale, std::abs(c));
  for (const auto& c : monic) {
    if (std::abs(c.imag()) > 1e-9 * scale) {
      throw NumericalError("discriminant route needs real coefficients");
    }
  }
  const double a = monic[4].real(), b = monic[3].real(), c = monic[2].real(),
               d = monic[1].real(), e = monic[0].real();
  const double disc =
      256 * a * a * a * e * e * e - 192 * a * a * b * d * e * e - 128 * a * a * c * c * e * e +
      144 * a * a * c * d * d * e - 27 * a * a * d * d * d * d + 144 * a * b * b * c * e * e -
      6 * a * b * b * d * d * e - 80 * a * b * c * c * d * e + 18 * a * b * c * d * d * d +
      16 * a * c * c * c * c * e - 4 * a * c * c * c * d * d - 27 * b * b * b * b * e * e +
      18 * b * b * b * c * d * e - 4 * b * b * b * d * d * d - 4 * b * b * c * c * c * e +
      b * b * c * c * d * d;
  if (disc < 0.0) return Stability::Unstable;  // two real, one complex pair
  const double P = 8 * a * c - 3 * b * b;
  const double D = 64 * a * a * a * e - 16 * a * a * c * c + 16 * a * b * b * c -
                   16 * a * a * b * d - 3 * b * b * b * b;
  if (P < 0.0 && D < 0.0) return Stability::Stable;  // four distinct real roots
  return Stability::Unstable;
}

Stability probe_quartic(double kappa, double bond, const Probe& probe) {
  double xi = probe.xi;
  for (int j = 0; j < probe.rungs; ++j, xi *= 0.1) {
    const auto bm = build_matrices(xi, probe.amplitude, kappa, bond);
    if (classify_from_quartic(bm, probe.tol).stability == Stability::Unstable) {
      return Stability::Unstable;
    }
  }
  return Stability::Stable;
}

}  // namespace mistab

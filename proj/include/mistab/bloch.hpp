#pragma once

#include <array>
#include <complex>

#include <Eigen/Dense>

namespace mistab {

using cplx = std::complex<double>;

/// Pair (eta, u) of Fourier polynomials on modes -2..2, coefficient of e^{inz}
/// stored at index n + 2.
struct FourierVec {
  std::array<std::array<cplx, 5>, 2> comp{};

  cplx& at(int component, int mode) { return comp[component][mode + 2]; }
  cplx at(int component, int mode) const { return comp[component][mode + 2]; }
};

/// L^2(T) x L^2(T) inner product normalized by 2 pi; conjugates `g`.
cplx inner(const FourierVec& f, const FourierVec& g);

/// Basis of the four-dimensional spectral subspace at the origin, expanded
/// through O(xi^2) and O(a).
struct EigenBasis {
  std::array<FourierVec, 4> phi;
  Eigen::Vector2d p2;
};

EigenBasis eigenbasis(double xi, double amplitude, double kappa, double bond);

struct BlochMatrices {
  double xi = 0.0;
  double amplitude = 0.0;
  double kappa = 0.0;
  double bond = 0.0;
  Eigen::Matrix4cd L;
  Eigen::Matrix4cd I;
  /// det(L - lambda I) = sum_k quartic[k] lambda^k.
  std::array<cplx, 5> quartic{};
};

/// Projected 4x4 operator and Gram matrices of the FDSW2 linearization for
/// small (xi, a). Throws ResonanceError at the h2 pole.
BlochMatrices build_matrices(double xi, double amplitude, double kappa, double bond);

/// Coefficients of det(L - lambda I) in lambda, expanded exactly.
std::array<cplx, 5> characteristic_quartic(const Eigen::Matrix4cd& L, const Eigen::Matrix4cd& I);

/// Roots of sum_k coeffs[k] x^k (companion matrix, then Newton polish).
std::array<cplx, 4> quartic_roots(const std::array<cplx, 5>& coeffs);

enum class Stability { Stable, Unstable };

struct QuarticVerdict {
  Stability stability = Stability::Stable;
  std::array<cplx, 4> x{};  ///< roots of the reduced quartic, lambda = i xi x
  double max_imag = 0.0;
};

/// Substitutes lambda = i xi X and classifies by the imaginary parts of X:
/// unstable iff max |Im X| > tol (1 + max |X|). Throws NumericalError when the
/// leading coefficient vanishes (xi = 0 or singular I).
QuarticVerdict classify_from_quartic(const BlochMatrices& bm, double tol = 1e-6);

/// Reduced quartic in X, normalized to a monic polynomial.
std::array<cplx, 5> reduced_quartic(const BlochMatrices& bm);

/// Discriminant route for a monic quartic with real coefficients (imaginary
/// parts must be below 1e-9 relative). Throws NumericalError otherwise.
Stability classify_by_discriminant(const std::array<cplx, 5>& monic);

/// Sideband probe. The classification is Unstable if any rung
/// xi_j = xi * 10^-j, j = 0..rungs-1, is unstable at the fixed amplitude.
struct Probe {
  double xi = 1e-2;
  double amplitude = 1e-2;
  int rungs = 3;
  double tol = 1e-6;
};

Stability probe_quartic(double kappa, double bond, const Probe& probe = {});

}  // namespace mistab

#pragma once

#include <vector>

#include <Eigen/Dense>

#include "mistab/bloch.hpp"
#include "mistab/stokes.hpp"

namespace mistab {

/// Fourier truncation of the Bloch operator
///
///   L(xi) v = e^{-i xi z} d_z [[c - u, -c^2(k|d_z|) - eta], [-1, c - u]] e^{i xi z} v
///
/// linearized about the periodic wave of amplitude a. Unknowns are stacked as
/// the eta coefficients on modes -N..N followed by the u coefficients.
struct HillProblem {
  double xi = 0.0;
  double amplitude = 0.0;
  double kappa = 0.0;
  double bond = 0.0;
  int n_modes = 0;
  Eigen::MatrixXcd matrix;
};

/// Linearizes about refine_periodic(wave_train(a, k, T)), an exact solution.
/// The O(a^3) defect of the truncated wave alone is enough to push sideband
/// eigenvalues off the imaginary axis once xi is well below a.
HillProblem assemble(double xi, double amplitude, double kappa, double bond, int n_modes);

/// Same discretization about the truncated wave; the convolution band is 2.
HillProblem assemble(double xi, const WaveTrain& wave, int n_modes);

HillProblem assemble(double xi, const PeriodicWave& wave, int n_modes);

/// All eigenvalues of the truncated operator.
Eigen::VectorXcd hill_spectrum(const HillProblem& problem);

/// Eigenvalues with |lambda| <= 10 (|xi| + |a|).
std::vector<cplx> near_origin(const Eigen::VectorXcd& spectrum, double xi, double amplitude);

/// Largest real part on the branch near the origin, clamped at zero.
double growth_rate(double xi, double amplitude, double kappa, double bond, int n_modes = 32);

/// growth_rate over the sideband ladder of `probe`; returns the largest.
double probe_growth(double kappa, double bond, const Probe& probe = {}, int n_modes = 32);

/// Growth above this counts as unstable.
inline constexpr double kGrowthThreshold = 1e-8;

}  // namespace mistab

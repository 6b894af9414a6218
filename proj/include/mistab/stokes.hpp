#pragma once

#include <array>
#include <vector>

namespace mistab {

// Small-amplitude periodic traveling wave of the FDSW2 system
//
//   eta_t + d_x(c^2(|d_x|) u + u eta) = 0,
//   u_t   + d_x eta + u u_x          = 0,
//
// in z = k x, moving at speed c(a; k), truncated after O(a^2).

struct HarmonicCoeffs {
  double h0;
  double h2;
};

/// h0 = (3/4) c / (c^2 - 1), h2 = (3/4) c / (c^2 - c^2(2k)).
/// Throws ResonanceError naming the vanishing denominator.
HarmonicCoeffs harmonic_coeffs(double kappa, double bond);

/// Cosine coefficients (mean, cos z, cos 2z).
using CosineSeries = std::array<double, 3>;

struct WaveTrain {
  double kappa = 0.0;
  double bond = 0.0;
  double amplitude = 0.0;
  CosineSeries eta{};
  CosineSeries u{};
  double speed = 0.0;
  double h0 = 0.0;
  double h2 = 0.0;
};

WaveTrain wave_train(double amplitude, double kappa, double bond);

/// Harmonics n in [2, n_max] with |c(k) - c(nk)| below the pole tolerance.
std::vector<int> check_resonance_admissible(double kappa, double bond, int n_max);

/// Largest Fourier-coefficient magnitude, over modes 0..modes, of the two
/// traveling-wave equations
///   -c eta + c^2(k|d_z|) u + u eta = 0,   -c u + eta + u^2/2 = 0
/// evaluated on the truncated profiles.
double residual_periodic(const WaveTrain& wave, int modes);

/// Cosine profiles on modes 0..M solving the same two equations to round-off
/// by Newton's method from the truncated wave. The cos z coefficient of u is
/// held at the amplitude; speed is an unknown.
struct PeriodicWave {
  double kappa = 0.0;
  double bond = 0.0;
  double amplitude = 0.0;
  double speed = 0.0;
  std::vector<double> eta;
  std::vector<double> u;
  double residual = 0.0;  ///< largest equation coefficient after the last step
  int iterations = 0;
};

/// Throws NumericalError if Newton fails to reach 1e-13.
PeriodicWave refine_periodic(const WaveTrain& wave, int modes = 24);

}  // namespace mistab

#pragma once

// Capillary-gravity phase speed on unit depth,
//
//   c(k)^2 = (1 + T k^2) tanh(k) / k,
//
// and the derivatives that enter the instability index and the projected
// matrices. All derivatives are closed forms; see docs/dispersion.md.

namespace mistab {

struct DispersionSample {
  double kappa = 0.0;
  double bond = 0.0;
  double c = 0.0;    ///< phase speed c(k)
  double c2 = 0.0;   ///< c(k)^2, equal to c * c
  double dc = 0.0;   ///< c'(k)
  double d2c = 0.0;  ///< c''(k)
  double cg = 0.0;   ///< group speed (k c)' = c + k c'
  double dcg = 0.0;  ///< (k c)'' = 2 c' + k c''
};

/// Phase speed and derivatives at (kappa, bond). Throws DomainError unless
/// kappa > 0 and bond >= 0.
DispersionSample eval_dispersion(double kappa, double bond);

/// (1 + T k^2) tanh(k)/k, extended by continuity to 1 at k = 0.
/// Accepts any kappa >= 0 (the Fourier multiplier is even, so callers pass |k|).
double eval_dispersion_squared(double kappa, double bond);

/// Phase speed only.
double phase_speed(double kappa, double bond);

namespace detail {

/// g(k) = tanh(k)/k and its first two derivatives.
struct Tanc {
  double g;
  double dg;
  double d2g;
};

Tanc tanc_series(double kappa);
Tanc tanc_direct(double kappa);

/// Dispatches on tol::series_threshold.
Tanc tanc(double kappa);

}  // namespace detail
}  // namespace mistab

#include "mistab/dispersion.hpp"

#include <cmath>
#include <string>

#include "mistab/numerics.hpp"

namespace mistab {
namespace detail {

Tanc tanc_series(double kappa) {
  // tanh(k)/k = 1 - k^2/3 + 2k^4/15 - 17k^6/315 + 62k^8/2835 + O(k^10)
  const double k2 = kappa * kappa;
  const double g =
      1.0 + k2 * (-1.0 / 3.0 + k2 * (2.0 / 15.0 + k2 * (-17.0 / 315.0 + k2 * (62.0 / 2835.0))));
  const double dg =
      kappa * (-2.0 / 3.0 + k2 * (8.0 / 15.0 + k2 * (-102.0 / 315.0 + k2 * (496.0 / 2835.0))));
  const double d2g =
      -2.0 / 3.0 + k2 * (24.0 / 15.0 + k2 * (-510.0 / 315.0 + k2 * (3472.0 / 2835.0)));
  return {g, dg, d2g};
}

Tanc tanc_direct(double kappa) {
  // g'  = (k sech^2 k - tanh k) / k^2
  // g'' = 2 (tanh k - k sech^2 k - k^2 sech^2 k tanh k) / k^3
  // The numerators cancel to O(k^3) as k -> 0; long double keeps the loss
  // near the series threshold below 1e-15.
  const long double k = kappa;
  const long double t = std::tanh(k);
  const long double s = 1.0L - t * t;
  const long double g = t / k;
  const long double dg = (k * s - t) / (k * k);
  const long double d2g = 2.0L * (t - k * s - k * k * s * t) / (k * k * k);
  return {static_cast<double>(g), static_cast<double>(dg), static_cast<double>(d2g)};
}

Tanc tanc(double kappa) {
  return kappa < tol::series_threshold ? tanc_series(kappa) : tanc_direct(kappa);
}

}  // namespace detail

namespace {

void require_bond(double bond) {
  if (!(bond >= 0.0) || !std::isfinite(bond)) {
    throw DomainError("bond must be a finite nonnegative number, got " + std::to_string(bond));
  }
}

void require_kappa(double kappa) {
  if (!(kappa > 0.0) || !std::isfinite(kappa)) {
    throw DomainError("kappa must be a finite positive number, got " + std::to_string(kappa));
  }
}

}  // namespace

DispersionSample eval_dispersion(double kappa, double bond) {
  require_kappa(kappa);
  require_bond(bond);

  const auto [g, dg, d2g] = detail::tanc(kappa);
  const double w = 1.0 + bond * kappa * kappa;

  // (c^2)  = w g,  w = 1 + T k^2
  // (c^2)' = 2 T k g + w g'
  // (c^2)''= 2 T g + 4 T k g' + w g''
  const double c2 = w * g;
  const double dc2 = 2.0 * bond * kappa * g + w * dg;
  const double d2c2 = 2.0 * bond * g + 4.0 * bond * kappa * dg + w * d2g;

  DispersionSample s;
  s.kappa = kappa;
  s.bond = bond;
  s.c = std::sqrt(c2);
  s.c2 = s.c * s.c;
  s.dc = dc2 / (2.0 * s.c);
  s.d2c = (d2c2 - 2.0 * s.dc * s.dc) / (2.0 * s.c);
  s.cg = s.c + kappa * s.dc;
  s.dcg = 2.0 * s.dc + kappa * s.d2c;
  return s;
}

double eval_dispersion_squared(double kappa, double bond) {
  require_bond(bond);
  if (kappa == 0.0) return 1.0;
  if (!(kappa > 0.0) || !std::isfinite(kappa)) {
    throw DomainError("kappa must be a finite nonnegative number, got " + std::to_string(kappa));
  }
  const double g = kappa < tol::series_threshold ? detail::tanc_series(kappa).g
                                                 : std::tanh(kappa) / kappa;
  return (1.0 + bond * kappa * kappa) * g;
}

double phase_speed(double kappa, double bond) {
  require_kappa(kappa);
  return std::sqrt(eval_dispersion_squared(kappa, bond));
}

}  // namespace mistab

#include "mistab/stokes.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "mistab/dispersion.hpp"
#include "mistab/numerics.hpp"

namespace mistab {

HarmonicCoeffs harmonic_coeffs(double kappa, double bond) {
  const double c = phase_speed(kappa, bond);
  const double c2 = c * c;
  const double c2_2k = eval_dispersion_squared(2.0 * kappa, bond);
  const double scale = tol::pole * (1.0 + c2);

  const double long_wave = c2 - 1.0;
  if (std::abs(long_wave) < scale) {
    throw ResonanceError(ResonanceError::Denominator::LongWave,
                         "c^2(k) = 1 at kappa=" + std::to_string(kappa) +
                             ", bond=" + std::to_string(bond));
  }
  const double second = c2 - c2_2k;
  if (std::abs(second) < scale) {
    throw ResonanceError(ResonanceError::Denominator::SecondHarmonic,
                         "c^2(k) = c^2(2k) at kappa=" + std::to_string(kappa) +
                             ", bond=" + std::to_string(bond));
  }
  return {0.75 * c / long_wave, 0.75 * c / second};
}

WaveTrain wave_train(double amplitude, double kappa, double bond) {
  const auto [h0, h2] = harmonic_coeffs(kappa, bond);
  const double c = phase_speed(kappa, bond);
  const double a = amplitude;
  const double a2 = a * a;

  WaveTrain w;
  w.kappa = kappa;
  w.bond = bond;
  w.amplitude = a;
  w.h0 = h0;
  w.h2 = h2;
  w.eta = {a2 * (c * h0 - 0.25), a * c, a2 * (c * h2 - 0.25)};
  w.u = {a2 * h0, a, a2 * h2};
  w.speed = c + 1.5 * a2 * (h0 + 0.5 * h2 - 1.0 / (8.0 * c));
  return w;
}

std::vector<int> check_resonance_admissible(double kappa, double bond, int n_max) {
  if (n_max < 2) throw DomainError("n_max must be at least 2");
  const double c = phase_speed(kappa, bond);
  std::vector<int> hits;
  for (int n = 2; n <= n_max; ++n) {
    const double cn = phase_speed(n * kappa, bond);
    if (std::abs(c - cn) < tol::pole * (1.0 + c * c)) hits.push_back(n);
  }
  return hits;
}

namespace {

// Fourier polynomial on modes -M..M stored at offset M.
struct Exp {
  explicit Exp(int half) : half(half), v(2 * half + 1, 0.0) {}
  int half;
  std::vector<double> v;
  double& at(int n) { return v[n + half]; }
  double at(int n) const { return (n < -half || n > half) ? 0.0 : v[n + half]; }
};

Exp from_cosine(const CosineSeries& s, int half) {
  Exp e(half);
  e.at(0) = s[0];
  for (int n = 1; n <= 2; ++n) {
    e.at(n) = 0.5 * s[n];
    e.at(-n) = 0.5 * s[n];
  }
  return e;
}

Exp multiply(const Exp& f, const Exp& g, int half) {
  Exp out(half);
  for (int n = -half; n <= half; ++n) {
    double acc = 0.0;
    for (int m = -f.half; m <= f.half; ++m) acc += f.at(m) * g.at(n - m);
    out.at(n) = acc;
  }
  return out;
}

}  // namespace

double residual_periodic(const WaveTrain& wave, int modes) {
  if (modes < 4) throw DomainError("residual_periodic needs modes >= 4");
  const int half = modes;
  const Exp eta = from_cosine(wave.eta, half);
  const Exp u = from_cosine(wave.u, half);
  const Exp ue = multiply(u, eta, half);
  const Exp uu = multiply(u, u, half);

  double worst = 0.0;
  for (int n = 0; n <= modes; ++n) {
    const double mult = eval_dispersion_squared(wave.kappa * n, wave.bond);
    const double r1 = -wave.speed * eta.at(n) + mult * u.at(n) + ue.at(n);
    const double r2 = -wave.speed * u.at(n) + eta.at(n) + 0.5 * uu.at(n);
    // Cosine coefficient of mode n > 0 is twice the exponential one.
    const double weight = n == 0 ? 1.0 : 2.0;
    worst = std::max({worst, weight * std::abs(r1), weight * std::abs(r2)});
  }
  return worst;
}

namespace {

// Cosine coefficients 0..M of the product of two cosine series of length M+1.
std::vector<double> cos_product(const std::vector<double>& f, const std::vector<double>& g) {
  const int M = static_cast<int>(f.size()) - 1;
  auto e = [M](const std::vector<double>& s, int j) {
    j = std::abs(j);
    if (j > M) return 0.0;
    return j == 0 ? s[0] : 0.5 * s[j];
  };
  std::vector<double> out(f.size(), 0.0);
  for (int n = 0; n <= M; ++n) {
    double acc = 0.0;
    for (int m = -M; m <= M; ++m) acc += e(f, m) * e(g, n - m);
    out[n] = n == 0 ? acc : 2.0 * acc;
  }
  return out;
}

}  // namespace

PeriodicWave refine_periodic(const WaveTrain& wave, int modes) {
  if (modes < 4) throw DomainError("refine_periodic needs modes >= 4");
  const int M = modes;
  const double a = wave.amplitude;

  PeriodicWave out;
  out.kappa = wave.kappa;
  out.bond = wave.bond;
  out.amplitude = a;
  out.speed = wave.speed;
  out.eta.assign(M + 1, 0.0);
  out.u.assign(M + 1, 0.0);
  for (int n = 0; n <= 2; ++n) {
    out.eta[n] = wave.eta[n];
    out.u[n] = wave.u[n];
  }
  if (a == 0.0) return out;

  std::vector<double> mult(M + 1);
  for (int n = 0; n <= M; ++n) mult[n] = eval_dispersion_squared(wave.kappa * n, wave.bond);

  // Unknowns: eta_0..eta_M, u_0, u_2..u_M, c.
  const int dim = 2 * M + 2;
  auto u_slot = [M](int n) { return n == 0 ? M + 1 : M + n; };

  auto residual = [&](const std::vector<double>& eta, const std::vector<double>& u, double c) {
    const auto ue = cos_product(u, eta);
    const auto uu = cos_product(u, u);
    Eigen::VectorXd F(dim);
    for (int n = 0; n <= M; ++n) {
      F[n] = -c * eta[n] + mult[n] * u[n] + ue[n];
      F[M + 1 + n] = -c * u[n] + eta[n] + 0.5 * uu[n];
    }
    return F;
  };

  std::vector<double> unit(M + 1, 0.0);
  Eigen::VectorXd F = residual(out.eta, out.u, out.speed);
  for (int it = 0; it < 25 && F.cwiseAbs().maxCoeff() > 1e-17; ++it) {
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(dim, dim);
    for (int j = 0; j <= M; ++j) {
      std::fill(unit.begin(), unit.end(), 0.0);
      unit[j] = 1.0;
      const auto ue_j = cos_product(out.u, unit);
      const auto je_j = cos_product(unit, out.eta);
      for (int n = 0; n <= M; ++n) {
        const double d = n == j ? 1.0 : 0.0;
        J(n, j) = -out.speed * d + ue_j[n];
        J(M + 1 + n, j) = d;
        if (j != 1) {
          J(n, u_slot(j)) = mult[n] * d + je_j[n];
          J(M + 1 + n, u_slot(j)) = -out.speed * d + ue_j[n];
        }
      }
    }
    for (int n = 0; n <= M; ++n) {
      J(n, dim - 1) = -out.eta[n];
      J(M + 1 + n, dim - 1) = -out.u[n];
    }
    const Eigen::VectorXd step = J.fullPivLu().solve(F);
    for (int n = 0; n <= M; ++n) out.eta[n] -= step[n];
    for (int n = 0; n <= M; ++n) {
      if (n != 1) out.u[n] -= step[u_slot(n)];
    }
    out.speed -= step[dim - 1];
    F = residual(out.eta, out.u, out.speed);
    out.iterations = it + 1;
    if (step.cwiseAbs().maxCoeff() < 1e-18) break;
  }
  out.residual = F.cwiseAbs().maxCoeff();
  if (!(out.residual < 1e-13)) {
    throw NumericalError("Newton refinement of the periodic wave did not converge at kappa=" +
                         std::to_string(wave.kappa) + ", bond=" + std::to_string(wave.bond));
  }
  return out;
}

}  // namespace mistab

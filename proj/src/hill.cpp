#include "mistab/hill.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mistab/dispersion.hpp"
#include "mistab/numerics.hpp"

namespace mistab {

namespace {

HillProblem assemble_profiles(double xi, double kappa, double bond, double amplitude,
                              double speed, const std::vector<double>& eta,
                              const std::vector<double>& u, int n_modes) {
  if (n_modes < 8) throw DomainError("Hill truncation needs n_modes >= 8");
  const int N = n_modes;
  const int dim = 2 * N + 1;
  const int band = static_cast<int>(eta.size()) - 1;

  // Exponential coefficients of the profiles on |j| <= band.
  auto coeff = [band](const std::vector<double>& s, int j) {
    j = std::abs(j);
    if (j > band) return 0.0;
    return j == 0 ? s[0] : 0.5 * s[j];
  };

  HillProblem p;
  p.xi = xi;
  p.amplitude = amplitude;
  p.kappa = kappa;
  p.bond = bond;
  p.n_modes = N;
  p.matrix = Eigen::MatrixXcd::Zero(2 * dim, 2 * dim);

  const double c = speed;
  for (int r = 0; r < dim; ++r) {
    const int n = r - N;
    const cplx dz{0.0, n + xi};
    const double mult = eval_dispersion_squared(kappa * std::abs(n + xi), bond);
    for (int s = std::max(0, r - band); s <= std::min(dim - 1, r + band); ++s) {
      const int m = s - N;
      const double uc = coeff(u, n - m);
      const double ec = coeff(eta, n - m);
      const double diag = r == s ? 1.0 : 0.0;
      p.matrix(r, s) = dz * (c * diag - uc);
      p.matrix(r, dim + s) = dz * (-mult * diag - ec);
      p.matrix(dim + r, s) = dz * (-diag);
      p.matrix(dim + r, dim + s) = dz * (c * diag - uc);
    }
  }
  return p;
}

}  // namespace

HillProblem assemble(double xi, const WaveTrain& wave, int n_modes) {
  return assemble_profiles(xi, wave.kappa, wave.bond, wave.amplitude, wave.speed,
                           {wave.eta.begin(), wave.eta.end()}, {wave.u.begin(), wave.u.end()},
                           n_modes);
}

HillProblem assemble(double xi, const PeriodicWave& wave, int n_modes) {
  return assemble_profiles(xi, wave.kappa, wave.bond, wave.amplitude, wave.speed, wave.eta,
                           wave.u, n_modes);
}

HillProblem assemble(double xi, double amplitude, double kappa, double bond, int n_modes) {
  if (n_modes < 8) throw DomainError("Hill truncation needs n_modes >= 8");
  return assemble(xi, refine_periodic(wave_train(amplitude, kappa, bond)), n_modes);
}

Eigen::VectorXcd hill_spectrum(const HillProblem& problem) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(problem.matrix, false);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("Hill eigensolve failed at kappa=" + std::to_string(problem.kappa));
  }
  return solver.eigenvalues();
}

std::vector<cplx> near_origin(const Eigen::VectorXcd& spectrum, double xi, double amplitude) {
  const double radius = 10.0 * (std::abs(xi) + std::abs(amplitude));
  std::vector<cplx> out;
  for (Eigen::Index i = 0; i < spectrum.size(); ++i) {
    if (std::abs(spectrum[i]) <= radius) out.push_back(spectrum[i]);
  }
  return out;
}

double growth_rate(double xi, double amplitude, double kappa, double bond, int n_modes) {
  const auto problem = assemble(xi, amplitude, kappa, bond, n_modes);
  const auto near = near_origin(hill_spectrum(problem), xi, amplitude);
  double g = 0.0;
  for (const auto& lambda : near) g = std::max(g, lambda.real());
  return g;
}

double probe_growth(double kappa, double bond, const Probe& probe, int n_modes) {
  double worst = 0.0;
  double xi = probe.xi;
  for (int j = 0; j < probe.rungs; ++j, xi *= 0.1) {
    worst = std::max(worst, growth_rate(xi, probe.amplitude, kappa, bond, n_modes));
  }
  return worst;
}

}  // namespace mistab

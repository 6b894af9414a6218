#pragma once

#include <stdexcept>
#include <string>

namespace mistab {

// Shared tolerances. Every module that tests for a vanishing denominator or
// the T = 1/3 line reads them from here.
namespace tol {

/// |i3| (or a Stokes denominator) below pole * (1 + c^2) counts as resonant.
inline constexpr double pole = 1e-10;

/// |T - 1/3| below this is the inconclusive line.
inline constexpr double bond_one_third = 1e-9;

/// Bisection stopping width in kappa.
inline constexpr double root = 1e-10;

/// Below this kappa the tanh(k)/k family is evaluated from its Maclaurin series.
inline constexpr double series_threshold = 1e-2;

}  // namespace tol

inline constexpr double kOneThird = 1.0 / 3.0;

/// Violated precondition (nonpositive wave number, negative Bond number, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A denominator of the Stokes expansion or of the index vanishes.
class ResonanceError : public std::runtime_error {
 public:
  enum class Denominator { LongWave, SecondHarmonic };

  ResonanceError(Denominator which, const std::string& what)
      : std::runtime_error(what), which_(which) {}

  Denominator which() const noexcept { return which_; }

 private:
  Denominator which_;
};

/// The requested answer is not determined (T = 1/3).
class InconclusiveError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Eigensolver failure or a degenerate polynomial.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline bool near_one_third(double bond) {
  return bond > kOneThird - tol::bond_one_third &&
         bond < kOneThird + tol::bond_one_third;
}

}  // namespace mistab

#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "mistab/dispersion.hpp"

namespace mistab {

/// Model whose index is evaluated.
///
///   Whitham  unidirectional, u_t + c(|d_x|) u_x + u u_x = 0
///   FDCH     unidirectional full-dispersion Camassa-Holm
///   FDSW1    bidirectional, c^2(|d_x|) in the momentum equation
///   FDSW2    bidirectional, c^2(|d_x|) in the mass equation
enum class ModelId { Whitham, FDCH, FDSW1, FDSW2 };

/// Which factorization of i2 / i3 to return.
enum class Branch { Full, Minus, Plus };

std::string_view to_string(ModelId model);
/// Parses "whitham", "fdch", "fdsw1", "fdsw2" (case-insensitive). Throws DomainError.
ModelId parse_model(std::string_view name);
bool is_bidirectional(ModelId model);

enum class IndexFlag : unsigned {
  None = 0,
  NearPoleI3 = 1u << 0,
  BondOneThird = 1u << 1,
  OutsideValidity = 1u << 2,
};

constexpr IndexFlag operator|(IndexFlag a, IndexFlag b) {
  return static_cast<IndexFlag>(static_cast<unsigned>(a) | static_cast<unsigned>(b));
}
constexpr bool has_flag(IndexFlag set, IndexFlag f) {
  return (static_cast<unsigned>(set) & static_cast<unsigned>(f)) != 0;
}

enum class Classification { Stable, Unstable, NearPole, Inconclusive };

/// "S", "U", "NearPole", "Inconclusive".
std::string_view to_string(Classification c);

struct IndexReport {
  ModelId model = ModelId::FDSW2;
  double kappa = 0.0;
  double bond = 0.0;
  double i1 = 0.0;
  double i2 = 0.0;  // Full for bidirectional models, Minus otherwise
  double i3 = 0.0;  // likewise
  double i4 = 0.0;
  std::optional<double> delta;  // empty when flagged NearPoleI3
  int delta_sign = 0;           // product of factor signs, defined even at a pole
  IndexFlag flags = IndexFlag::None;

  Classification classification() const;
};

/// (k c)''. Mechanism R1: extremum of the group speed.
double factor_i1(double kappa, double bond);

/// Full: ((k c)')^2 - 1, Minus: (k c)' - 1, Plus: (k c)' + 1.
/// Mechanism R2: resonance of short and long waves.
double factor_i2(double kappa, double bond, Branch branch);

/// Full: c^2(k) - c^2(2k), Minus: c(k) - c(2k), Plus: c(k) + c(2k).
/// Mechanism R3: second-harmonic resonance.
double factor_i3(double kappa, double bond, Branch branch);

/// Model-specific nonlinear factor (mechanism R4).
double factor_i4(ModelId model, double kappa, double bond);

/// All four factors with the branches the model's index uses.
struct FactorValues {
  double i1, i2, i3, i4;
};
FactorValues factor_values(ModelId model, double kappa, double bond);

/// Branch the index of `model` uses for i2 and i3.
Branch index_branch(ModelId model);

/// Modulational instability index; delta < 0 means unstable.
IndexReport index(ModelId model, double kappa, double bond);

/// Consecutive harmonics n are checked for c(k) = c(nk) when flagging
/// OutsideValidity.
inline constexpr int kValidityHarmonics = 10;

}  // namespace mistab

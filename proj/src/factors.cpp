#include "mistab/factors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "mistab/numerics.hpp"
#include "mistab/stokes.hpp"

namespace mistab {

std::string_view to_string(ModelId model) {
  switch (model) {
    case ModelId::Whitham: return "whitham";
    case ModelId::FDCH: return "fdch";
    case ModelId::FDSW1: return "fdsw1";
    case ModelId::FDSW2: return "fdsw2";
  }
  return "unknown";
}

ModelId parse_model(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  if (lower == "whitham") return ModelId::Whitham;
  if (lower == "fdch") return ModelId::FDCH;
  if (lower == "fdsw1") return ModelId::FDSW1;
  if (lower == "fdsw2") return ModelId::FDSW2;
  throw DomainError("unknown model '" + std::string(name) +
                    "' (expected whitham, fdch, fdsw1 or fdsw2)");
}

bool is_bidirectional(ModelId model) {
  return model == ModelId::FDSW1 || model == ModelId::FDSW2;
}

Branch index_branch(ModelId model) {
  return is_bidirectional(model) ? Branch::Full : Branch::Minus;
}

std::string_view to_string(Classification c) {
  switch (c) {
    case Classification::Stable: return "S";
    case Classification::Unstable: return "U";
    case Classification::NearPole: return "NearPole";
    case Classification::Inconclusive: return "Inconclusive";
  }
  return "?";
}

Classification IndexReport::classification() const {
  if (has_flag(flags, IndexFlag::BondOneThird)) return Classification::Inconclusive;
  if (has_flag(flags, IndexFlag::NearPoleI3)) return Classification::NearPole;
  return delta_sign < 0 ? Classification::Unstable : Classification::Stable;
}

double factor_i1(double kappa, double bond) { return eval_dispersion(kappa, bond).dcg; }

double factor_i2(double kappa, double bond, Branch branch) {
  const double cg = eval_dispersion(kappa, bond).cg;
  switch (branch) {
    case Branch::Full: return (cg - 1.0) * (cg + 1.0);
    case Branch::Minus: return cg - 1.0;
    case Branch::Plus: return cg + 1.0;
  }
  return 0.0;
}

double factor_i3(double kappa, double bond, Branch branch) {
  const double c1 = phase_speed(kappa, bond);
  const double c2 = phase_speed(2.0 * kappa, bond);
  switch (branch) {
    case Branch::Full: return (c1 - c2) * (c1 + c2);
    case Branch::Minus: return c1 - c2;
    case Branch::Plus: return c1 + c2;
  }
  return 0.0;
}

namespace {

double i4_whitham(double i2m, double i3m) { return 2.0 * i3m + i2m; }

double i4_fdch(double kappa, double i2m, double i3m) {
  const double k2 = kappa * kappa;
  return 3.0 * i2m - i2m * i3m + 6.0 * i3m - k2 / 12.0 * (57.0 * i2m + 34.0 * i3m) +
         k2 * k2 / 108.0 * (198.0 * i2m + 35.0 * i3m);
}

// c^2(k) in the momentum equation. Second harmonic plus induced mean flow;
// see docs/index.md for the derivation and its check against the FDSW2 form.
double i4_fdsw1(const DispersionSample& s, double c2_2k) {
  const double c = s.c;
  const double c2 = s.c2;
  const double kdc = s.kappa * s.dc;
  return 3.0 * c2 + 15.0 * c2 * c2 - 6.0 * c2_2k * (c2 + 2.0) + 18.0 * c2 * c * kdc +
         kdc * kdc * (5.0 * c2 + 4.0 * c2_2k);
}

double i4_fdsw2(const DispersionSample& s, double i2, double i3) {
  const double c = s.c;
  const double c2 = s.c2;
  const double kdc = s.kappa * s.dc;
  return 9.0 * c2 * i2 + i3 * (3.0 + 15.0 * c2 + 6.0 * c * kdc - kdc * kdc);
}

struct Factors {
  DispersionSample s;
  double c_2k;
  double i1, i2, i3, i4;
};

Factors compute(ModelId model, double kappa, double bond) {
  Factors f;
  f.s = eval_dispersion(kappa, bond);
  f.c_2k = phase_speed(2.0 * kappa, bond);
  const double cg = f.s.cg;
  const double i2m = cg - 1.0;
  const double i2f = (cg - 1.0) * (cg + 1.0);
  const double i3m = f.s.c - f.c_2k;
  const double i3f = (f.s.c - f.c_2k) * (f.s.c + f.c_2k);

  f.i1 = f.s.dcg;
  switch (model) {
    case ModelId::Whitham:
      f.i2 = i2m;
      f.i3 = i3m;
      f.i4 = i4_whitham(i2m, i3m);
      break;
    case ModelId::FDCH:
      f.i2 = i2m;
      f.i3 = i3m;
      f.i4 = i4_fdch(kappa, i2m, i3m);
      break;
    case ModelId::FDSW1:
      f.i2 = i2f;
      f.i3 = i3f;
      f.i4 = i4_fdsw1(f.s, f.c_2k * f.c_2k);
      break;
    case ModelId::FDSW2:
      f.i2 = i2f;
      f.i3 = i3f;
      f.i4 = i4_fdsw2(f.s, i2f, i3f);
      break;
  }
  return f;
}

int sign_of(double x) { return (x > 0.0) - (x < 0.0); }

}  // namespace

FactorValues factor_values(ModelId model, double kappa, double bond) {
  const Factors f = compute(model, kappa, bond);
  return {f.i1, f.i2, f.i3, f.i4};
}

double factor_i4(ModelId model, double kappa, double bond) {
  return compute(model, kappa, bond).i4;
}

IndexReport index(ModelId model, double kappa, double bond) {
  const Factors f = compute(model, kappa, bond);

  IndexReport r;
  r.model = model;
  r.kappa = kappa;
  r.bond = bond;
  r.i1 = f.i1;
  r.i2 = f.i2;
  r.i3 = f.i3;
  r.i4 = f.i4;
  r.delta_sign = sign_of(f.i1) * sign_of(f.i2) * sign_of(f.i3) * sign_of(f.i4);

  // The pole test is on the full product for every model, so that the
  // unidirectional minus-branch shares the same band.
  const double i3_full = (f.s.c - f.c_2k) * (f.s.c + f.c_2k);
  if (std::abs(i3_full) < tol::pole * (1.0 + f.s.c2)) {
    r.flags = r.flags | IndexFlag::NearPoleI3;
  } else {
    r.delta = f.i1 * f.i2 * f.i4 / f.i3;
  }
  if (near_one_third(bond)) r.flags = r.flags | IndexFlag::BondOneThird;

  const auto resonant = check_resonance_admissible(kappa, bond, kValidityHarmonics);
  if (std::any_of(resonant.begin(), resonant.end(), [](int n) { return n > 2; })) {
    r.flags = r.flags | IndexFlag::OutsideValidity;
  }
  return r;
}

}  // namespace mistab

#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "mistab/factors.hpp"
#include "mistab/numerics.hpp"

namespace mistab {

enum class Factor { I1, I2, I3, I4 };

/// Mechanism label of a factor: R1..R4.
std::string_view mechanism_name(Factor f);

/// Factor value with the branch the model's index uses.
double factor_value(ModelId model, Factor which, double kappa, double bond);

struct RootScan {
  int grid_points = 2000;  ///< log-spaced sign-change scan
  double tolerance = tol::root;
};

/// Sorted roots of a factor on [k_lo, k_hi].
std::vector<double> find_factor_roots(ModelId model, Factor which, double bond, double k_lo,
                                      double k_hi, const RootScan& scan = {});

struct CriticalResult {
  ModelId model = ModelId::FDSW2;
  double bond = 0.0;
  std::optional<double> kappa_c;  ///< empty means Divergent
  double lo = 0.0;                ///< final bracket
  double hi = 0.0;
  int iterations = 0;
  double searched_to = 0.0;  ///< largest kappa scanned
  std::vector<double> i4_roots;
};

struct CriticalSearch {
  double k_lo = 1e-3;
  double k_max = 50.0;
  double k_extended = 200.0;
  bool allow_one_third = false;
};

/// Smallest i4 root (mechanism R4). Throws InconclusiveError at T = 1/3
/// unless the search allows it.
CriticalResult critical_wavenumber(ModelId model, double bond, const CriticalSearch& search = {});

enum class LimitVerdict { Converged, Divergent, Undetermined };
std::string_view to_string(LimitVerdict v);

struct LimitResult {
  ModelId model = ModelId::FDSW2;
  LimitVerdict verdict = LimitVerdict::Undetermined;
  std::vector<double> bonds;
  /// Capillary-scaled critical wave number k_c(T) sqrt(T); empty entries
  /// mark a divergent search at that T.
  std::vector<std::optional<double>> scaled;
  std::optional<double> estimate;      ///< value at the largest T
  std::optional<double> extrapolated;  ///< Aitken delta^2 of the last three
};

/// Large surface-tension behavior of k_c(T) sqrt(T) along an increasing
/// T sequence.
LimitResult large_T_limit(ModelId model, const std::vector<double>& bonds,
                          const CriticalSearch& search = {});

inline const std::vector<double> kDefaultLimitBonds{1.0, 10.0, 100.0, 1000.0};

struct KappaInterval {
  double lo = 0.0;
  double hi = 0.0;
  Classification label = Classification::Stable;  ///< Stable, Unstable or NearPole
};

/// Wave-number intervals delimited by every factor root on [k_lo, k_hi];
/// i3 roots appear as zero-width NearPole markers.
std::vector<KappaInterval> classify_intervals(ModelId model, double bond, double k_lo,
                                              double k_hi, const RootScan& scan = {});

struct DiagramNode {
  double kappa = 0.0;
  double kappa_sqrtT = 0.0;
  double bond = 0.0;
  Classification label = Classification::Stable;
};

struct CurvePoint {
  Factor mechanism = Factor::I4;
  double kappa = 0.0;
  double kappa_sqrtT = 0.0;
};

struct DiagramWindow {
  double k_lo = 0.0;  ///< exclusive
  double k_hi = 3.0;
  double y_lo = 0.0;  ///< y = kappa sqrt(T), inclusive
  double y_hi = 3.0;
  int nx = 600;
  int ny = 600;
  int curve_slopes = 400;  ///< lines through the origin used for tracing
  int threads = 1;
};

struct StabilityDiagram {
  ModelId model = ModelId::FDSW2;
  DiagramWindow window;
  std::vector<DiagramNode> grid;  ///< row-major: y outer, kappa inner
  std::vector<CurvePoint> curves;  ///< grouped by mechanism, then by slope, then kappa
};

/// Label of one (kappa, kappa sqrt(T)) point; errors become NearPole or
/// Inconclusive rather than propagating.
DiagramNode classify_node(ModelId model, double kappa, double kappa_sqrtT);

StabilityDiagram stability_diagram(ModelId model, const DiagramWindow& window = {});

/// Runs body(i) for i in [0, count) on `threads` workers.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body);

}  // namespace mistab

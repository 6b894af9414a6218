#include "mistab/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <string>
#include <thread>

namespace mistab {

std::string_view mechanism_name(Factor f) {
  switch (f) {
    case Factor::I1: return "R1";
    case Factor::I2: return "R2";
    case Factor::I3: return "R3";
    case Factor::I4: return "R4";
  }
  return "?";
}

std::string_view to_string(LimitVerdict v) {
  switch (v) {
    case LimitVerdict::Converged: return "Converged";
    case LimitVerdict::Divergent: return "Divergent";
    case LimitVerdict::Undetermined: return "Undetermined";
  }
  return "?";
}

namespace {

double pick(const FactorValues& f, Factor which) {
  switch (which) {
    case Factor::I1: return f.i1;
    case Factor::I2: return f.i2;
    case Factor::I3: return f.i3;
    case Factor::I4: return f.i4;
  }
  return 0.0;
}

struct Bracketed {
  double root;
  double lo;
  double hi;
  int iterations;
};

template <class F>
Bracketed bisect(F&& f, double lo, double hi, double flo, double tolerance) {
  int it = 0;
  while (hi - lo > tolerance && it < 200) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return {mid, mid, mid, it + 1};
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
    ++it;
  }
  return {0.5 * (lo + hi), lo, hi, it};
}

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> g(static_cast<std::size_t>(n));
  const double ratio = std::log(hi / lo);
  for (int i = 0; i < n; ++i) g[i] = lo * std::exp(ratio * i / (n - 1));
  g.front() = lo;
  g.back() = hi;
  return g;
}

// All four factors scanned together; returns brackets per factor.
std::array<std::vector<Bracketed>, 4> scan_all(ModelId model, double bond, double k_lo,
                                               double k_hi, const RootScan& scan) {
  if (!(k_lo > 0.0) || !(k_hi > k_lo)) {
    throw DomainError("root scan needs 0 < k_lo < k_hi");
  }
  if (scan.grid_points < 2) throw DomainError("root scan needs at least two grid points");
  const auto grid = log_grid(k_lo, k_hi, scan.grid_points);
  std::vector<FactorValues> vals(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) vals[i] = factor_values(model, grid[i], bond);

  std::array<std::vector<Bracketed>, 4> out;
  for (int w = 0; w < 4; ++w) {
    const auto which = static_cast<Factor>(w);
    auto f = [&](double k) { return pick(factor_values(model, k, bond), which); };
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
      const double a = pick(vals[i], which);
      const double b = pick(vals[i + 1], which);
      if (a == 0.0) {
        out[w].push_back({grid[i], grid[i], grid[i], 0});
      } else if ((a < 0.0) != (b < 0.0) && b != 0.0) {
        out[w].push_back(bisect(f, grid[i], grid[i + 1], a, scan.tolerance));
      }
    }
    if (pick(vals.back(), which) == 0.0) out[w].push_back({grid.back(), grid.back(), grid.back(), 0});
  }
  return out;
}

}  // namespace

double factor_value(ModelId model, Factor which, double kappa, double bond) {
  return pick(factor_values(model, kappa, bond), which);
}

std::vector<double> find_factor_roots(ModelId model, Factor which, double bond, double k_lo,
                                      double k_hi, const RootScan& scan) {
  const auto all = scan_all(model, bond, k_lo, k_hi, scan);
  std::vector<double> roots;
  for (const auto& b : all[static_cast<int>(which)]) roots.push_back(b.root);
  std::sort(roots.begin(), roots.end());
  return roots;
}

CriticalResult critical_wavenumber(ModelId model, double bond, const CriticalSearch& search) {
  if (near_one_third(bond) && !search.allow_one_third) {
    throw InconclusiveError("the index is inconclusive at T = 1/3");
  }
  CriticalResult r;
  r.model = model;
  r.bond = bond;

  auto attempt = [&](double lo, double hi) {
    r.searched_to = hi;
    auto brackets = scan_all(model, bond, lo, hi, {})[static_cast<int>(Factor::I4)];
    for (const auto& b : brackets) r.i4_roots.push_back(b.root);
    if (brackets.empty()) return false;
    const auto& first = brackets.front();
    r.kappa_c = first.root;
    r.lo = first.lo;
    r.hi = first.hi;
    r.iterations = first.iterations;
    return true;
  };

  if (!attempt(search.k_lo, search.k_max)) attempt(search.k_max, search.k_extended);
  return r;
}

LimitResult large_T_limit(ModelId model, const std::vector<double>& bonds,
                          const CriticalSearch& search) {
  if (bonds.size() < 3) throw DomainError("large_T_limit needs at least three values of T");
  if (!std::is_sorted(bonds.begin(), bonds.end()) ||
      std::adjacent_find(bonds.begin(), bonds.end()) != bonds.end()) {
    throw DomainError("T sequence must be strictly increasing");
  }

  LimitResult out;
  out.model = model;
  out.bonds = bonds;
  for (double T : bonds) {
    const auto crit = critical_wavenumber(model, T, search);
    if (crit.kappa_c) {
      out.scaled.push_back(*crit.kappa_c * std::sqrt(T));
    } else {
      out.scaled.push_back(std::nullopt);
    }
  }

  const std::size_t n = out.scaled.size();
  out.estimate = out.scaled.back();
  if (!out.scaled[n - 1] || !out.scaled[n - 2]) {
    out.verdict = LimitVerdict::Divergent;
    return out;
  }
  if (!out.scaled[n - 3]) {
    out.verdict = LimitVerdict::Undetermined;
    return out;
  }

  const double x0 = *out.scaled[n - 3], x1 = *out.scaled[n - 2], x2 = *out.scaled[n - 1];
  const double d_prev = x1 - x0;
  const double d_last = x2 - x1;
  if (d_last != d_prev) out.extrapolated = x2 - d_last * d_last / (d_last - d_prev);

  const bool settled = std::abs(d_last) < 1e-3;
  const bool contracting =
      std::abs(d_last) <= 0.5 * std::abs(d_prev) && std::abs(d_last) < 1e-2 * (1.0 + std::abs(x2));
  if (settled || contracting) {
    out.verdict = LimitVerdict::Converged;
  } else if (d_last > 0.1 && d_prev > 0.0) {
    out.verdict = LimitVerdict::Divergent;
  } else {
    out.verdict = LimitVerdict::Undetermined;
  }
  return out;
}

std::vector<KappaInterval> classify_intervals(ModelId model, double bond, double k_lo,
                                              double k_hi, const RootScan& scan) {
  if (near_one_third(bond)) throw InconclusiveError("the index is inconclusive at T = 1/3");
  const auto all = scan_all(model, bond, k_lo, k_hi, scan);

  struct Break {
    double k;
    bool pole;
  };
  std::vector<Break> breaks;
  for (int w = 0; w < 4; ++w) {
    for (const auto& b : all[w]) breaks.push_back({b.root, w == static_cast<int>(Factor::I3)});
  }
  std::sort(breaks.begin(), breaks.end(), [](const Break& a, const Break& b) { return a.k < b.k; });

  auto label_at = [&](double k) {
    return index(model, k, bond).delta_sign < 0 ? Classification::Unstable
                                                 : Classification::Stable;
  };

  std::vector<KappaInterval> out;
  double left = k_lo;
  auto close_segment = [&](double right) {
    if (right - left <= 2.0 * scan.tolerance) return;
    const auto label = label_at(0.5 * (left + right));
    if (!out.empty() && out.back().label == label) {
      out.back().hi = right;
    } else {
      out.push_back({left, right, label});
    }
    left = right;
  };
  for (const auto& b : breaks) {
    close_segment(b.k);
    if (b.pole) {
      out.push_back({b.k, b.k, Classification::NearPole});
      left = b.k;
    }
  }
  close_segment(k_hi);
  return out;
}

DiagramNode classify_node(ModelId model, double kappa, double kappa_sqrtT) {
  DiagramNode node;
  node.kappa = kappa;
  node.kappa_sqrtT = kappa_sqrtT;
  const double s = kappa_sqrtT / kappa;
  node.bond = s * s;
  try {
    node.label = index(model, kappa, node.bond).classification();
  } catch (const std::exception&) {
    node.label = Classification::Inconclusive;
  }
  return node;
}

void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body) {
  const auto workers = static_cast<std::size_t>(std::max(1, threads));
  if (workers == 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t t = 0; t < std::min(workers, count); ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

StabilityDiagram stability_diagram(ModelId model, const DiagramWindow& window) {
  if (!(window.k_hi > window.k_lo) || window.k_lo < 0.0 || !(window.y_hi >= window.y_lo) ||
      window.y_lo < 0.0 || window.nx < 1 || window.ny < 1) {
    throw DomainError("diagram window must have positive extent and resolution");
  }
  StabilityDiagram d;
  d.model = model;
  d.window = window;

  const auto nx = static_cast<std::size_t>(window.nx);
  const auto ny = static_cast<std::size_t>(window.ny);
  d.grid.resize(nx * ny);
  parallel_for(ny, window.threads, [&](std::size_t j) {
    const double y = ny == 1 ? window.y_lo
                             : window.y_lo + (window.y_hi - window.y_lo) * static_cast<double>(j) /
                                                 static_cast<double>(ny - 1);
    for (std::size_t i = 0; i < nx; ++i) {
      const double k = window.k_lo + (window.k_hi - window.k_lo) * static_cast<double>(i + 1) /
                                         static_cast<double>(nx);
      d.grid[j * nx + i] = classify_node(model, k, y);
    }
  });

  // Each slope s is the line y = s k, i.e. fixed T = s^2.
  const auto slopes = static_cast<std::size_t>(std::max(1, window.curve_slopes));
  std::vector<std::array<std::vector<double>, 4>> per_slope(slopes);
  std::vector<double> slope_of(slopes);
  parallel_for(slopes, window.threads, [&](std::size_t m) {
    const double theta = 0.5 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(slopes);
    const double s = std::tan(theta);
    slope_of[m] = s;
    double k_top = window.k_hi;
    if (s > 0.0) k_top = std::min(k_top, window.y_hi / s);
    const double k_bottom = std::max(1e-3, window.k_lo);
    if (!(k_top > k_bottom)) return;
    const auto all = scan_all(model, s * s, k_bottom, k_top, {});
    for (int w = 0; w < 4; ++w) {
      for (const auto& b : all[w]) {
        const double y = s * b.root;
        if (b.root > window.k_lo && y >= window.y_lo) per_slope[m][w].push_back(b.root);
      }
    }
  });

  for (int w = 0; w < 4; ++w) {
    for (std::size_t m = 0; m < slopes; ++m) {
      for (double k : per_slope[m][w]) {
        d.curves.push_back({static_cast<Factor>(w), k, slope_of[m] * k});
      }
    }
  }
  return d;
}

}  // namespace mistab

#include "cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "mistab/analysis.hpp"
#include "mistab/hill.hpp"

namespace mistab::cli {

using nlohmann::json;

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string model_name = "fdsw2";
  double bond = 0.0;
  std::string format;  // empty: human-readable text
  std::string out;
  int threads = 1;

  double kappa = 1.0;
  double xi = 1e-2;
  double amplitude = 1e-2;
  int n_modes = 32;

  bool limit = false;
  std::vector<double> bonds = kDefaultLimitBonds;
  double k_max = 50.0;

  double k_lo = 0.05;
  double k_hi = 50.0;

  DiagramWindow window;
  std::string curves;
};

void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw IoError("cannot open '" + cfg.out + "' for writing");
  f << text;
  if (!f) throw IoError("write to '" + cfg.out + "' failed");
}

std::string flags_text(IndexFlag flags) {
  std::string s;
  auto add = [&](IndexFlag f, const char* name) {
    if (!has_flag(flags, f)) return;
    if (!s.empty()) s += ';';
    s += name;
  };
  add(IndexFlag::NearPoleI3, "NearPoleI3");
  add(IndexFlag::BondOneThird, "BondOneThird");
  add(IndexFlag::OutsideValidity, "OutsideValidity");
  return s;
}

json flags_json(IndexFlag flags) {
  json a = json::array();
  if (has_flag(flags, IndexFlag::NearPoleI3)) a.push_back("NearPoleI3");
  if (has_flag(flags, IndexFlag::BondOneThird)) a.push_back("BondOneThird");
  if (has_flag(flags, IndexFlag::OutsideValidity)) a.push_back("OutsideValidity");
  return a;
}

std::string opt_number(const std::optional<double>& v, const char* none) {
  return v ? format_number(*v) : none;
}

json opt_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

void require(bool ok, const std::string& what) {
  if (!ok) throw DomainError(what);
}

std::string cmd_index(const RunConfig& cfg) {
  const auto model = parse_model(cfg.model_name);
  require(cfg.kappa > 0.0, "--kappa must be positive");
  require(cfg.bond >= 0.0, "--bond must be nonnegative");
  const auto r = index(model, cfg.kappa, cfg.bond);
  const auto label = std::string(to_string(r.classification()));

  if (cfg.format == "json") {
    json j = {{"model", std::string(to_string(model))},
              {"kappa", r.kappa},
              {"bond", r.bond},
              {"i1", r.i1},
              {"i2", r.i2},
              {"i3", r.i3},
              {"i4", r.i4},
              {"delta", opt_json(r.delta)},
              {"delta_sign", r.delta_sign},
              {"flags", flags_json(r.flags)},
              {"classification", label}};
    return j.dump(2) + "\n";
  }
  if (cfg.format == "csv") {
    std::string s = "model,kappa,bond,i1,i2,i3,i4,delta,flags,classification\n";
    s += std::string(to_string(model)) + ',' + format_number(r.kappa) + ',' +
         format_number(r.bond) + ',' + format_number(r.i1) + ',' + format_number(r.i2) + ',' +
         format_number(r.i3) + ',' + format_number(r.i4) + ',' + opt_number(r.delta, "") + ',' +
         flags_text(r.flags) + ',' + label + '\n';
    return s;
  }
  std::ostringstream o;
  o << "model           " << to_string(model) << '\n'
    << "kappa           " << format_number(r.kappa) << '\n'
    << "bond            " << format_number(r.bond) << '\n'
    << "i1              " << format_number(r.i1) << '\n'
    << "i2              " << format_number(r.i2) << '\n'
    << "i3              " << format_number(r.i3) << '\n'
    << "i4              " << format_number(r.i4) << '\n'
    << "delta           " << opt_number(r.delta, "undefined") << '\n'
    << "flags           " << (r.flags == IndexFlag::None ? "none" : flags_text(r.flags)) << '\n'
    << "classification  " << label << '\n';
  return o.str();
}

std::string cmd_critical(const RunConfig& cfg) {
  const auto model = parse_model(cfg.model_name);
  require(cfg.k_max >= 20.0, "--kmax must be at least 20");
  CriticalSearch search;
  search.k_max = cfg.k_max;
  search.k_extended = std::max(200.0, 4.0 * cfg.k_max);

  if (cfg.limit) {
    const auto r = large_T_limit(model, cfg.bonds, search);
    if (cfg.format == "json") {
      json rows = json::array();
      for (std::size_t i = 0; i < r.bonds.size(); ++i) {
        rows.push_back({{"bond", r.bonds[i]}, {"kappa_c_sqrtT", opt_json(r.scaled[i])}});
      }
      json j = {{"model", std::string(to_string(model))},
                {"verdict", std::string(to_string(r.verdict))},
                {"estimate", opt_json(r.estimate)},
                {"extrapolated", opt_json(r.extrapolated)},
                {"sequence", rows}};
      return j.dump(2) + "\n";
    }
    std::ostringstream o;
    if (cfg.format == "csv") {
      o << "bond,kappa_c_sqrtT\n";
      for (std::size_t i = 0; i < r.bonds.size(); ++i) {
        o << format_number(r.bonds[i]) << ',' << opt_number(r.scaled[i], "Divergent") << '\n';
      }
      return o.str();
    }
    o << "model " << to_string(model) << '\n';
    o << "bond                    kappa_c*sqrt(T)\n";
    for (std::size_t i = 0; i < r.bonds.size(); ++i) {
      char line[96];
      std::snprintf(line, sizeof line, "%-23s %s\n", format_number(r.bonds[i]).c_str(),
                    opt_number(r.scaled[i], "Divergent").c_str());
      o << line;
    }
    o << "verdict " << to_string(r.verdict) << '\n';
    if (r.verdict == LimitVerdict::Converged) o << "limit   " << opt_number(r.estimate, "-") << '\n';
    return o.str();
  }

  require(cfg.bond >= 0.0, "--bond must be nonnegative");
  const auto r = critical_wavenumber(model, cfg.bond, search);
  if (cfg.format == "json") {
    json j = {{"model", std::string(to_string(model))},
              {"bond", r.bond},
              {"kappa_c", opt_json(r.kappa_c)},
              {"divergent", !r.kappa_c.has_value()},
              {"bracket", json::array({r.lo, r.hi})},
              {"iterations", r.iterations},
              {"searched_to", r.searched_to}};
    return j.dump(2) + "\n";
  }
  if (cfg.format == "csv") {
    return "model,bond,kappa_c\n" + std::string(to_string(model)) + ',' + format_number(r.bond) +
           ',' + opt_number(r.kappa_c, "Divergent") + '\n';
  }
  std::ostringstream o;
  o << "model    " << to_string(model) << '\n'
    << "bond     " << format_number(r.bond) << '\n'
    << "kappa_c  " << opt_number(r.kappa_c, "Divergent") << '\n';
  if (r.kappa_c) o << "bracket  [" << format_number(r.lo) << ", " << format_number(r.hi) << "]\n";
  o << "searched " << format_number(r.searched_to) << '\n';
  return o.str();
}

std::string curves_path(const RunConfig& cfg) {
  if (!cfg.curves.empty()) return cfg.curves;
  std::filesystem::path p(cfg.out);
  const auto stem = p.stem().string();
  const auto ext = p.has_extension() ? p.extension().string() : std::string(".csv");
  return (p.parent_path() / (stem + "_curves" + ext)).string();
}

std::string cmd_diagram(const RunConfig& cfg, std::ostream& out) {
  const auto model = parse_model(cfg.model_name);
  require(!cfg.out.empty(), "diagram needs --out <path>");
  require(cfg.format.empty() || cfg.format == "csv", "diagram writes csv only");
  DiagramWindow w = cfg.window;
  w.threads = cfg.threads;
  const auto d = stability_diagram(model, w);

  std::string grid = "kappa,kappa_sqrtT,bond,label\n";
  for (const auto& n : d.grid) {
    grid += format_number(n.kappa);
    grid += ',';
    grid += format_number(n.kappa_sqrtT);
    grid += ',';
    grid += format_number(n.bond);
    grid += ',';
    grid += to_string(n.label);
    grid += '\n';
  }
  std::string curves = "mechanism,kappa,kappa_sqrtT\n";
  for (const auto& p : d.curves) {
    curves += mechanism_name(p.mechanism);
    curves += ',';
    curves += format_number(p.kappa);
    curves += ',';
    curves += format_number(p.kappa_sqrtT);
    curves += '\n';
  }

  emit(cfg, grid, out);
  RunConfig curves_cfg = cfg;
  curves_cfg.out = curves_path(cfg);
  emit(curves_cfg, curves, out);
  return "grid    " + cfg.out + " (" + std::to_string(d.grid.size()) + " nodes)\ncurves  " +
         curves_cfg.out + " (" + std::to_string(d.curves.size()) + " points)\n";
}

std::string cmd_hill(const RunConfig& cfg) {
  const auto model = parse_model(cfg.model_name);
  require(model == ModelId::FDSW2, "hill is implemented for --model fdsw2");
  require(cfg.kappa > 0.0, "--kappa must be positive");
  require(cfg.bond >= 0.0, "--bond must be nonnegative");
  require(std::abs(cfg.xi) <= 0.5, "--xi must satisfy |xi| <= 1/2");
  require(cfg.n_modes >= 8, "--modes must be at least 8");

  const double g = growth_rate(cfg.xi, cfg.amplitude, cfg.kappa, cfg.bond, cfg.n_modes);
  const auto r = index(model, cfg.kappa, cfg.bond);
  const bool hill_unstable = g > kGrowthThreshold;
  const bool index_unstable = r.delta_sign < 0;
  const bool flagged = r.flags != IndexFlag::None;
  // Zero amplitude has a neutral spectrum, so only the stable side can agree.
  const bool agrees = !flagged && (cfg.amplitude == 0.0 ? !hill_unstable
                                                        : hill_unstable == index_unstable);
  const char* verdict = flagged ? "UNDETERMINED" : (agrees ? "AGREES" : "DISAGREES");

  if (cfg.format == "json") {
    json j = {{"xi", cfg.xi},         {"amplitude", cfg.amplitude},
              {"kappa", cfg.kappa},   {"bond", cfg.bond},
              {"n_modes", cfg.n_modes}, {"growth_rate", g},
              {"delta", opt_json(r.delta)}, {"verdict", verdict}};
    return j.dump(2) + "\n";
  }
  if (cfg.format == "csv") {
    return "xi,amplitude,kappa,bond,n_modes,growth_rate,delta,verdict\n" + format_number(cfg.xi) +
           ',' + format_number(cfg.amplitude) + ',' + format_number(cfg.kappa) + ',' +
           format_number(cfg.bond) + ',' + std::to_string(cfg.n_modes) + ',' + format_number(g) +
           ',' + opt_number(r.delta, "") + ',' + verdict + '\n';
  }
  std::ostringstream o;
  o << "growth_rate  " << format_number(g) << '\n'
    << "delta        " << opt_number(r.delta, "undefined") << '\n'
    << "verdict      " << verdict << '\n';
  return o.str();
}

std::string cmd_intervals(const RunConfig& cfg) {
  const auto model = parse_model(cfg.model_name);
  require(cfg.k_lo > 0.0 && cfg.k_hi > cfg.k_lo, "need 0 < --kmin < --kmax");
  const auto iv = classify_intervals(model, cfg.bond, cfg.k_lo, cfg.k_hi);
  if (cfg.format == "json") {
    json a = json::array();
    for (const auto& i : iv) {
      a.push_back({{"lo", i.lo}, {"hi", i.hi}, {"label", std::string(to_string(i.label))}});
    }
    return json({{"model", std::string(to_string(model))}, {"bond", cfg.bond}, {"intervals", a}})
               .dump(2) +
           "\n";
  }
  std::string s = "lo,hi,label\n";
  for (const auto& i : iv) {
    s += format_number(i.lo) + ',' + format_number(i.hi) + ',' + std::string(to_string(i.label)) +
         '\n';
  }
  return s;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Modulational instability of small periodic waves in full-dispersion models", "mistab"};
  app.require_subcommand(1);
  app.fallthrough();

  app.add_option("--model", cfg.model_name, "whitham | fdch | fdsw1 | fdsw2")
      ->check(CLI::IsMember({"whitham", "fdch", "fdsw1", "fdsw2"}, CLI::ignore_case));
  app.add_option("--bond", cfg.bond, "surface tension coefficient T >= 0");
  app.add_option("--format", cfg.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", cfg.out, "output path");
  app.add_option("--threads", cfg.threads, "worker threads")->check(CLI::PositiveNumber);

  auto* idx = app.add_subcommand("index", "evaluate i1..i4 and the index at one wave number");
  idx->add_option("--kappa", cfg.kappa, "wave number")->required();

  auto* crit = app.add_subcommand("critical", "critical wave number or its large-T limit");
  crit->add_flag("--limit", cfg.limit, "run the increasing-T protocol on kappa_c*sqrt(T)");
  crit->add_option("--bonds", cfg.bonds, "T sequence for --limit")->delimiter(',');
  crit->add_option("--kmax", cfg.k_max, "initial search bound");

  auto* dia = app.add_subcommand("diagram", "stability diagram in the (kappa, kappa*sqrt(T)) plane");
  dia->add_option("--kmin", cfg.window.k_lo, "kappa lower bound (exclusive)");
  dia->add_option("--kmax", cfg.window.k_hi, "kappa upper bound");
  dia->add_option("--ymin", cfg.window.y_lo, "kappa*sqrt(T) lower bound");
  dia->add_option("--ymax", cfg.window.y_hi, "kappa*sqrt(T) upper bound");
  dia->add_option("--nx", cfg.window.nx, "grid columns")->check(CLI::PositiveNumber);
  dia->add_option("--ny", cfg.window.ny, "grid rows")->check(CLI::PositiveNumber);
  dia->add_option("--slopes", cfg.window.curve_slopes, "lines used to trace curves")
      ->check(CLI::PositiveNumber);
  dia->add_option("--curves", cfg.curves, "curves output path (default <out>_curves.csv)");

  auto* hill = app.add_subcommand("hill", "Hill's-method growth rate near the origin");
  hill->add_option("--xi", cfg.xi, "Floquet exponent");
  hill->add_option("--amplitude", cfg.amplitude, "wave amplitude a");
  hill->add_option("--kappa", cfg.kappa, "wave number")->required();
  hill->add_option("--modes", cfg.n_modes, "truncation half-width N");

  auto* inter = app.add_subcommand("intervals", "stable/unstable kappa intervals at fixed T");
  inter->add_option("--kmin", cfg.k_lo, "lower bound");
  inter->add_option("--kmax", cfg.k_hi, "upper bound");

  std::vector<std::string> rest(args.rbegin(), args.rend());
  if (!rest.empty()) rest.pop_back();  // program name
  try {
    app.parse(rest);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalid;
  }

  try {
    if (idx->parsed()) {
      emit(cfg, cmd_index(cfg), out);
    } else if (crit->parsed()) {
      emit(cfg, cmd_critical(cfg), out);
    } else if (dia->parsed()) {
      out << cmd_diagram(cfg, out);
    } else if (hill->parsed()) {
      emit(cfg, cmd_hill(cfg), out);
    } else if (inter->parsed()) {
      emit(cfg, cmd_intervals(cfg), out);
    }
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalid;
  } catch (const InconclusiveError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalid;
  } catch (const ResonanceError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalid;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kOk;
}

}  // namespace mistab::cli

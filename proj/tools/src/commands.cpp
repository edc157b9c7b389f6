// Copyright 2026 The qtesd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qtesd/cli/commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>

#include "qtesd/cli/contour.hpp"
#include "qtesd/cli/format.hpp"
#include "qtesd/cli/state_spec.hpp"
#include "qtesd/eigen.hpp"
#include "qtesd/random.hpp"

namespace qtesd::cli {

DecayRates RateOptions::resolve() const {
  try {
    if (k) return rates_with_interference(gamma, gamma2, *k);
    DecayRates r{gamma, gamma1, gamma2};
    r.validate();
    return r;
  } catch (const std::domain_error& e) {
    throw CliError(e.what());
  }
}

std::vector<double> parse_grid(const std::string& text) {
  const auto c1 = text.find(':');
  const auto c2 = c1 == std::string::npos ? c1 : text.find(':', c1 + 1);
  if (c2 == std::string::npos || text.find(':', c2 + 1) != std::string::npos)
    throw CliError("grid '" + text + "' must be start:stop:count");
  auto real = [&](std::string_view s) {
    double v = 0.0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size() || !std::isfinite(v))
      throw CliError("grid '" + text + "': invalid number '" + std::string(s) + "'");
    return v;
  };
  const std::string_view sv(text);
  const double start = real(sv.substr(0, c1));
  const double stop = real(sv.substr(c1 + 1, c2 - c1 - 1));
  const auto count_text = sv.substr(c2 + 1);
  std::size_t count = 0;
  auto [p, ec] = std::from_chars(count_text.data(), count_text.data() + count_text.size(), count);
  if (ec != std::errc() || p != count_text.data() + count_text.size() || count == 0)
    throw CliError("grid '" + text + "': count must be a positive integer");
  if (count > 1 && !(stop > start)) throw CliError("grid '" + text + "': stop must exceed start");
  return linspace(start, stop, count);
}

namespace {

ParsedState parse_or_throw(const std::string& spec) {
  try {
    return parse_state_spec(spec);
  } catch (const SpecParseError& e) {
    throw CliError(std::string("invalid --state: ") + e.what());
  }
}

std::optional<double> analytic_negativity(const StateFamily& family, const DecayRates& rates, double t) {
  switch (family.tag()) {
    case FamilyTag::Phi1: return negativity_phi1_closed(family.pure_params().beta, rates, t);
    case FamilyTag::Phi2Plus:
    case FamilyTag::Phi2Minus:
      return negativity_phi2_closed(family.pure_params().alpha, family.pure_params().beta, rates, t);
    case FamilyTag::MixedAC: return negativity(evolve_mixed_analytic(family.mixed_params(), rates, t));
    default: return std::nullopt;
  }
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw CliError("cannot write '" + path.string() + "'");
  return f;
}

void finish(std::ofstream& f, const std::filesystem::path& path) {
  f.flush();
  if (!f) throw CliError("write failed for '" + path.string() + "'");
}

std::string label_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

}  // namespace

double cmd_negativity(const std::string& spec) { return negativity(parse_or_throw(spec).family.initial_state()); }

void write_trajectory_csv(const StateFamily& family, const DecayRates& rates, double t_max, double dt,
                          std::size_t stride, std::ostream& out) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw CliError("--dt must be positive");
  if (!(t_max >= 0.0) || !std::isfinite(t_max)) throw CliError("--t-max must be >= 0");
  if (stride == 0) throw CliError("--stride must be >= 1");
  const auto traj = evolve_numeric(family.initial_state(), rates, t_max, dt, stride);
  CsvWriter csv(out, {"t", "negativity_analytic", "negativity_numeric", "rho_trace", "min_eigenvalue"});
  for (std::size_t n = 0; n < traj.times.size(); ++n) {
    const double t = traj.times[n];
    const auto analytic = analytic_negativity(family, rates, t);
    const auto& m = traj.states[n].matrix();
    csv.row({format_number(t), analytic ? format_number(*analytic) : std::string(),
             format_number(traj.negativities[n]), format_number(m.trace().real()),
             format_number(hermitian_eigenvalues(m)[0])});
  }
}

void cmd_evolve(const EvolveRequest& request, std::ostream& out) {
  const auto parsed = parse_or_throw(request.state);
  write_trajectory_csv(parsed.family, request.rates.resolve(), request.t_max, request.dt, request.stride, out);
}

ScanMode parse_scan_mode(const std::string& text) {
  if (text == "beta") return ScanMode::Beta;
  if (text == "mixed-c") return ScanMode::MixedC;
  throw CliError("unknown scan mode '" + text + "' (expected beta or mixed-c)");
}

BoundaryScan cmd_scan(const ScanRequest& request, std::ostream& out) {
  const DecayRates rates = request.rates.resolve();
  BoundaryScan scan;
  if (request.mode == ScanMode::Beta) {
    const auto grid = parse_grid(request.grid.value_or("0.5:0.99:50"));
    for (std::size_t n = 0; n < grid.size(); ++n)
      if (!(grid[n] > 0.0 && grid[n] < 1.0))
        throw CliError("grid point " + std::to_string(n) + " (beta=" + format_number(grid[n]) +
                       ") must lie in (0, 1)");
    scan = scan_beta_boundary(rates, grid);
  } else {
    if (!(request.b > 0.0) || !(request.b < 1.0 / 3.0)) throw CliError("--b must lie in (0, 1/3)");
    const double c_max = 1.0 - 3.0 * request.b;
    const auto grid = parse_grid(request.grid.value_or("0:" + format_number(c_max) + ":60"));
    for (std::size_t n = 0; n < grid.size(); ++n) {
      try {
        (void)MixedFamilyParams::from_bc(request.b, grid[n]);
      } catch (const std::domain_error& e) {
        throw CliError("grid point " + std::to_string(n) + " (c=" + format_number(grid[n]) + ") is invalid: " +
                       e.what());
      }
    }
    scan = scan_c_boundary(request.b, rates, grid);
  }
  CsvWriter csv(out, {scan.swept, "kind", "death_time"});
  for (std::size_t n = 0; n < scan.grid.size(); ++n) {
    const auto& r = scan.reports[n];
    csv.row({format_number(scan.grid[n]), kind_name(r.kind), r.death_time ? format_number(*r.death_time) : ""});
  }
  csv.row({"threshold", scan.threshold ? format_number(*scan.threshold) : "none", ""});
  return scan;
}

namespace {

struct ContourCurve {
  std::string label;
  std::string title;
  std::string y_axis;
  std::function<double(double, double)> field;
};

std::size_t write_contour(const ContourCurve& curve, const std::filesystem::path& path) {
  const auto grid =
      ScalarGrid::sample(kFigureGridSize, kFigureGridSize, 0.0, kFigureAxisMax, 0.0, kFigureAxisMax, curve.field);
  const auto lines = contour_lines(grid, 0.0);
  auto f = open_for_write(path);
  CsvWriter csv(f, {"segment", "gamma_t", curve.y_axis});
  for (std::size_t s = 0; s < lines.size(); ++s)
    for (const auto& [x, y] : lines[s]) csv.row({std::to_string(s), format_number(x), format_number(y)});
  finish(f, path);
  return lines.size();
}

// Largest PT eigenvalue magnitude on the negative side; positive iff entangled.
double mixed_entanglement_field(const MixedFamilyParams& p, const DecayRates& rates) {
  const auto rho = evolve_mixed_analytic(p, rates, 1.0);
  return -hermitian_eigenvalues(partial_transpose(rho))[0];
}

std::vector<std::filesystem::path> contour_figure(int id, const std::filesystem::path& dir,
                                                  const std::vector<ContourCurve>& curves) {
  std::vector<std::filesystem::path> written;
  std::ostringstream gp;
  gp << "set datafile separator ','\n"
     << "set key outside\n"
     << "set xrange [0:" << format_number(kFigureAxisMax) << "]\n"
     << "set yrange [0:" << format_number(kFigureAxisMax) << "]\n"
     << "set xlabel 'gamma t'\n";
  std::vector<std::string> plots;
  std::string y_label;
  for (const auto& curve : curves) {
    const auto name = "fig" + std::to_string(id) + "_" + curve.label + ".csv";
    const auto path = dir / name;
    const std::size_t n = write_contour(curve, path);
    written.push_back(path);
    y_label = curve.y_axis;
    for (std::size_t s = 0; s < n; ++s)
      plots.push_back("'" + name + "' using 2:($1==" + std::to_string(s) + "?$3:1/0) with lines lc " +
                      std::to_string(plots.size() + 1 > 0 ? written.size() : 0) +
                      (s == 0 ? " title '" + curve.title + "'" : " notitle"));
  }
  gp << "set ylabel '" << (y_label == "gamma1_t" ? "gamma1 t" : "gamma1 t / gamma2 t") << "'\n";
  gp << "plot ";
  for (std::size_t k = 0; k < plots.size(); ++k) gp << (k ? ", \\\n     " : "") << plots[k];
  gp << "\n";
  const auto gp_path = dir / ("fig" + std::to_string(id) + ".gp");
  auto f = open_for_write(gp_path);
  f << gp.str();
  finish(f, gp_path);
  written.push_back(gp_path);
  return written;
}

std::vector<ContourCurve> mixed_curves(double b, std::initializer_list<double> cs) {
  std::vector<ContourCurve> curves;
  for (int k : {1, 0})
    for (double c : cs) {
      const auto params = MixedFamilyParams::from_bc(b, c);
      const std::string y_axis = k == 1 ? "gamma1_t" : "gamma2_t";
      curves.push_back({"k" + std::to_string(k) + "_c" + label_number(c),
                        "k=" + std::to_string(k) + ", c=" + label_number(c), y_axis,
                        [params, k](double x, double y) {
                          const DecayRates rates = k == 1 ? DecayRates{x, y, y} : DecayRates{x, 0.0, y};
                          return mixed_entanglement_field(params, rates);
                        }});
    }
  return curves;
}

}  // namespace

std::vector<std::filesystem::path> cmd_figure(int id, const std::filesystem::path& dir) {
  if (id < 1 || id > 4) throw CliError("figure id must be 1, 2, 3 or 4");
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) throw CliError("cannot create directory '" + dir.string() + "'");

  switch (id) {
    case 1: {
      std::vector<ContourCurve> curves;
      for (double beta : {0.8, 0.9, 0.95})
        curves.push_back({"beta" + label_number(beta), "beta=" + label_number(beta), "gamma1_t",
                          [beta](double x, double y) { return phi1_signed_negativity(beta, {x, y, 0.0}, 1.0); }});
      return contour_figure(1, dir, curves);
    }
    case 2: {
      std::vector<std::filesystem::path> written;
      const double amp = 1.0 / std::sqrt(2.0);
      const auto family = StateFamily::pure(FamilyTag::Phi2Plus, amp, amp);
      std::ostringstream gp;
      gp << "set datafile separator ','\nset xlabel 't'\nset ylabel 'negativity'\nplot ";
      for (int k : {1, 0}) {
        const auto name = "fig2_k" + std::to_string(k) + ".csv";
        const auto path = dir / name;
        auto f = open_for_write(path);
        write_trajectory_csv(family, rates_with_interference(1.0, 1.0, k), 5.0, kDefaultTimeStep, 10, f);
        finish(f, path);
        written.push_back(path);
        gp << (k == 1 ? "" : ", \\\n     ") << "'" << name << "' using 1:2 with lines title 'k=" << k << "'";
      }
      gp << "\n";
      const auto gp_path = dir / "fig2.gp";
      auto f = open_for_write(gp_path);
      f << gp.str();
      finish(f, gp_path);
      written.push_back(gp_path);
      return written;
    }
    case 3: return contour_figure(3, dir, mixed_curves(0.02, {0.15, 0.2}));
    default: return contour_figure(4, dir, mixed_curves(0.06, {0.25, 0.4}));
  }
}

namespace {

struct CheckResult {
  double max_error = 0.0;
  double tolerance = 0.0;
};

std::vector<double> sample_times(double t_max, std::size_t n) { return linspace(0.0, t_max, n); }

double analytic_vs_numeric(const StateFamily& family, const DecayRates& rates, double dt,
                           const std::function<DensityMatrix(double)>& analytic) {
  const auto traj = evolve_numeric(family.initial_state(), rates, 5.0, dt, 1);
  double err = 0.0;
  for (std::size_t n = 0; n < traj.times.size(); ++n)
    err = std::max(err, max_abs_diff(traj.states[n].matrix(), analytic(traj.times[n]).matrix()));
  return err;
}

}  // namespace

bool cmd_validate(const ValidateOptions& options, std::ostream& out) {
  const double dt = options.integrator_dt;
  std::mt19937_64 rng(20260101);
  std::vector<std::pair<std::string, std::function<CheckResult()>>> checks;

  checks.emplace_back("phi1_analytic_vs_numeric", [&] {
    const DecayRates rates{1.0, 0.7, 0.4};
    const double a = 0.6, b = 0.8;
    return CheckResult{analytic_vs_numeric(StateFamily::pure(FamilyTag::Phi1, a, b), rates, dt,
                                           [&](double t) { return evolve_phi1_analytic(a, b, rates, t); }),
                       1e-6};
  });
  checks.emplace_back("phi2_analytic_vs_numeric", [&] {
    const DecayRates rates{1.0, 0.3, 0.8};
    const double a = 0.8, b = 0.6;
    return CheckResult{analytic_vs_numeric(StateFamily::pure(FamilyTag::Phi2Minus, a, b), rates, dt,
                                           [&](double t) { return evolve_phi2_analytic(a, -b, rates, t); }),
                       1e-6};
  });
  checks.emplace_back("mixed_analytic_vs_numeric", [&] {
    const DecayRates rates{1.0, 0.5, 0.9};
    const auto p = MixedFamilyParams::from_bc(0.06, 0.4);
    return CheckResult{analytic_vs_numeric(StateFamily::mixed(p), rates, dt,
                                           [&](double t) { return evolve_mixed_analytic(p, rates, t); }),
                       1e-6};
  });
  checks.emplace_back("closed_form_negativity", [&] {
    double err = 0.0;
    std::uniform_real_distribution<double> u(0.05, 0.995), r(0.1, 2.0);
    for (int n = 0; n < 50; ++n) {
      const double beta = u(rng), alpha = std::sqrt(1.0 - beta * beta);
      const DecayRates rates{r(rng), r(rng), r(rng)};
      for (double t : sample_times(3.0, 31)) {
        err = std::max(err, std::abs(negativity_phi1_closed(beta, rates, t) -
                                     negativity(evolve_phi1_analytic(alpha, beta, rates, t))));
        err = std::max(err, std::abs(negativity_phi2_closed(alpha, beta, rates, t) -
                                     negativity(evolve_phi2_analytic(alpha, beta, rates, t))));
      }
    }
    return CheckResult{err, 1e-10};
  });
  checks.emplace_back("pt_spectrum_oracle", [&] {
    double err = 0.0;
    for (int n = 0; n < 200; ++n) {
      const auto psi = random_pure_state(rng);
      const auto numeric = hermitian_eigenvalues(partial_transpose(pure_to_density(psi)));
      const auto closed = pt_spectrum_pure(psi);
      for (std::size_t k = 0; k < 6; ++k) err = std::max(err, std::abs(numeric[k] - closed[k]));
    }
    return CheckResult{err, 1e-10};
  });
  checks.emplace_back("local_unitary_invariance", [&] {
    double err = 0.0;
    for (int n = 0; n < 100; ++n) {
      const auto rho = random_density_matrix(rng, 1 + n % 6);
      const auto moved = apply_local(rho, random_unitary<2>(rng), random_unitary<3>(rng));
      err = std::max(err, std::abs(negativity(rho) - negativity(moved)));
    }
    return CheckResult{err, 1e-10};
  });
  checks.emplace_back("trace_preservation", [&] {
    double err = 0.0;
    std::uniform_real_distribution<double> r(0.1, 2.0);
    for (int n = 0; n < 5; ++n) {
      const auto traj = evolve_numeric(random_density_matrix(rng), {r(rng), r(rng), r(rng)}, 5.0, dt, 50);
      for (const auto& s : traj.states) {
        err = std::max(err, std::abs(s.matrix().trace().real() - 1.0));
        err = std::max(err, hermiticity_defect(s.matrix()));
      }
    }
    return CheckResult{err, 1e-9};
  });
  checks.emplace_back("positivity_preservation", [&] {
    double worst = 0.0;
    std::uniform_real_distribution<double> r(0.1, 2.0);
    for (int n = 0; n < 5; ++n) {
      const auto traj = evolve_numeric(random_density_matrix(rng, 1 + n), {r(rng), r(rng), r(rng)}, 5.0, dt, 50);
      for (const auto& s : traj.states) worst = std::max(worst, -hermitian_eigenvalues(s.matrix())[0]);
    }
    return CheckResult{worst, 1e-8};
  });
  checks.emplace_back("beta_threshold", [&] {
    const auto scan = scan_beta_boundary({1.0, 1.0, 0.0}, linspace(0.5, 0.99, 50));
    return CheckResult{scan.threshold ? std::abs(*scan.threshold - 1.0 / std::sqrt(2.0)) : INFINITY, 1e-3};
  });
  const struct {
    double b, k, expected;
  } mixed[] = {{0.02, 1.0, 0.302}, {0.02, 0.0, 0.2775}, {0.06, 1.0, 0.5493}, {0.06, 0.0, 0.46295}};
  for (const auto& m : mixed) {
    checks.emplace_back("mixed_threshold_b" + label_number(m.b) + "_k" + label_number(m.k), [m] {
      const auto scan = scan_c_boundary(m.b, rates_with_interference(1.0, 1.0, m.k),
                                        linspace(0.0, 1.0 - 3.0 * m.b, 60));
      return CheckResult{scan.threshold ? std::abs(*scan.threshold - m.expected) : INFINITY, 5e-3};
    });
  }

  bool all = true;
  for (const auto& [name, run] : checks) {
    try {
      const auto r = run();
      const bool pass = r.max_error <= r.tolerance;
      all = all && pass;
      out << (pass ? "PASS " : "FAIL ") << name << " max_error=" << format_number(r.max_error)
          << " tolerance=" << format_number(r.tolerance) << '\n';
    } catch (const std::exception& e) {
      all = false;
      out << "FAIL " << name << " error=" << e.what() << '\n';
    }
  }
  return all;
}

}  // namespace qtesd::cli

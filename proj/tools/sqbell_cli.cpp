// Command-line front end: shape parameters, correlators, Bell profiles,
// violation maps, collapse curves, thresholds and a self-check suite.
//
// Exit codes: 0 success, 1 numerical failure, 2 usage error.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "sqbell/asymptotic_limits.hpp"
#include "sqbell/bell.hpp"
#include "sqbell/correlators.hpp"
#include "sqbell/errors.hpp"
#include "sqbell/oracles.hpp"
#include "sqbell/parallel.hpp"
#include "sqbell/scan.hpp"

using namespace sqbell;
using nlohmann::json;

namespace {

constexpr double pi = std::numbers::pi;

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Range {
  double lo = 0.0, hi = 0.0;
};

Range parse_range(const std::string& s, const char* what) {
  const auto colon = s.find(':');
  if (colon == std::string::npos) throw UsageError(std::string(what) + " must be written lo:hi, got '" + s + "'");
  try {
    std::size_t n1 = 0, n2 = 0;
    const std::string a = s.substr(0, colon), b = s.substr(colon + 1);
    Range r{std::stod(a, &n1), std::stod(b, &n2)};
    if (n1 != a.size() || n2 != b.size()) throw std::invalid_argument("trailing characters");
    if (!(r.hi >= r.lo)) throw UsageError(std::string(what) + " needs lo <= hi");
    return r;
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception&) {
    throw UsageError(std::string(what) + " must be written lo:hi with numbers, got '" + s + "'");
  }
}

std::pair<int, int> parse_grid(const std::string& s) {
  const auto x = s.find_first_of("xX");
  try {
    if (x == std::string::npos) throw std::invalid_argument("no x");
    std::size_t n1 = 0, n2 = 0;
    const std::string a = s.substr(0, x), b = s.substr(x + 1);
    const int nr = std::stoi(a, &n1), np = std::stoi(b, &n2);
    if (n1 != a.size() || n2 != b.size() || nr < 1 || np < 1) throw std::invalid_argument("bad");
    return {nr, np};
  } catch (const std::exception&) {
    throw UsageError("--grid must be written NxM with positive integers, got '" + s + "'");
  }
}

// Writes through a file when a path is given, stdout otherwise.
void emit(const std::string& path, const std::function<void(std::ostream&)>& body) {
  if (path.empty() || path == "-") {
    body(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  body(f);
  if (!f) throw std::runtime_error("error while writing '" + path + "'");
}

json triple_json(const CorrelatorTriple& t) { return {{"szsz", t.szsz}, {"sxsx", t.sxsx}, {"sysy", t.sysy}}; }

// ---------------------------------------------------------------- validate

struct Check {
  std::string name;
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

std::vector<Check> run_validation(bool full, int threads) {
  std::vector<Check> out;
  auto add = [&](std::string name, bool pass, std::string detail) {
    out.push_back({std::move(name), pass, std::move(detail)});
    std::cerr << (pass ? "PASS " : "FAIL ") << out.back().name << ": " << out.back().detail << std::endl;
  };

  // Philox4x32-10 known-answer vectors.
  {
    const auto z = philox4x32({0, 0, 0, 0}, {0, 0});
    const auto p = philox4x32({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u}, {0xa4093822u, 0x299f31d0u});
    const bool ok = z == std::array<std::uint32_t, 4>{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u} &&
                    p == std::array<std::uint32_t, 4>{0xd16cfe09u, 0x94fdcceb, 0x5001e420u, 0x24126ea1u};
    add("philox known answers", ok, ok ? "both vectors match" : "mismatch");
  }

  // Monte-Carlo oracle for zz.
  {
    const std::vector<std::array<double, 3>> pts =
        full ? std::vector<std::array<double, 3>>{{1, 0, 1}, {0.5, 0, 1}, {2, 0, 2.8284271247461903},
                                                  {1, 0.5, 1}, {1.5, pi / 4, 2}, {0.8, 1.2, 0.7}}
             : std::vector<std::array<double, 3>>{{1, 0, 1}, {1, 0.5, 1}};
    const std::int64_t n = full ? 10000000 : 1000000;
    for (const auto& q : pts) {
      const SqueezingParams p{q[0], q[1]};
      const LatticeBinning b{q[2]};
      const double ex = szsz_exact(p, b);
      const auto mc = mc_szsz(p, b, n, 20240601, threads);
      const double z = std::abs(mc.mean - ex) / mc.std_error;
      add("zz exact vs Monte-Carlo at r=" + fmt("%g, phi=%g, ell=%g", q[0], q[1], q[2]), z < 3.0,
          fmt("exact %.6f, MC %.6f, |z| = %.2f", ex, mc.mean, z));
    }
  }

  // Grid-quadrature oracle for xx.
  {
    const std::vector<std::array<double, 3>> pts =
        full ? std::vector<std::array<double, 3>>{{0.5, 0, 1}, {1, pi / 6, 1}, {1, 0, 0.5}, {0.8, 0.3, 1.5}}
             : std::vector<std::array<double, 3>>{{0.5, 0, 1}};
    for (const auto& q : pts) {
      const SqueezingParams p{q[0], q[1]};
      const LatticeBinning b{q[2]};
      const double ex = sxsx_exact(p, b);
      const double qd = quad_sxsx(p, b, 1.5 * quad_min_box(p), full ? 200 : 100, threads);
      add("xx exact vs grid quadrature at r=" + fmt("%g, phi=%g, ell=%g", q[0], q[1], q[2]),
          std::abs(ex - qd) < 1e-4, fmt("exact %.8f, quadrature %.8f", ex, qd));
    }
  }

  // Duality and rotation invariants.
  {
    double worst = 0.0;
    for (double r : {0.4, 1.3}) {
      for (double phi : {0.1, 0.6}) {
        for (double l2 : {-1.0, 0.5, 2.0}) {
          const LatticeBinning b{std::exp2(l2)};
          const auto t = exact_triple({r, phi}, b);
          const auto d = exact_triple({r, pi / 2 - phi}, b);
          worst = std::max({worst, std::abs(t.szsz + d.szsz), std::abs(t.sxsx - d.sxsx), std::abs(t.sysy + d.sysy)});
        }
      }
    }
    add("duality phi -> pi/2 - phi", worst < 1e-7, fmt("largest residual %.2e", worst));
  }

  // Large-ell plateau and Cirel'son bound along a profile.
  {
    double worst = 0.0;
    for (double r : {0.5, 1.0, 2.0}) {
      const auto t = exact_triple({r, 0.0}, {64.0});
      worst = std::max(worst, std::abs(bell_optimal(t) - 4.0 / pi * std::atan(std::sinh(2.0 * r))));
    }
    add("large-ell plateau at phi = 0", worst < 1e-3, fmt("largest deviation %.2e", worst));
    ProfileOptions po;
    po.threads = threads;
    const auto prof = bell_profile({2.0, 0.0}, -4.0, 8.0, full ? 0.05 : 0.25, po);
    double top = 0.0;
    for (const auto& pt : prof.points) top = std::max(top, pt.bell);
    add("Cirel'son bound on the (2, 0) profile", top <= 2.0 * std::sqrt(2.0) + 5e-3 && top > 2.0,
        fmt("profile maximum %.6f", top));
  }

  if (full) {
    const auto th = threshold_r(0.0);
    add("threshold in r at phi = 0", th && std::abs(*th - 1.12) <= 0.02,
        th ? fmt("r = %.4f", *th) : std::string("none found"));
    std::vector<double> xs;
    for (int i = 0; i <= 80; ++i) xs.push_back(0.2 + 0.0035 * i);
    const auto c = collapse_curve(xs, 5.0, {}, threads);
    const auto x = collapse_crossing(c);
    add("collapse crossing at r_ref = 5", x && std::abs(*x - 0.34) <= 0.02,
        x ? fmt("x = %.4f", *x) : std::string("no crossing"));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bell-inequality tests with pseudo-spin operators on two-mode squeezed states"};
  app.require_subcommand(1);
  int threads = default_threads();
  app.add_option("--threads", threads, "Worker threads (default: SQBELL_THREADS or all cores)")
      ->check(CLI::PositiveNumber);

  double r = 0.0, phi = 0.0;
  auto add_state = [&](CLI::App* sc) {
    sc->add_option("--r", r, "Squeezing parameter r >= 0")->required();
    sc->add_option("--phi", phi, "Squeezing angle in radians")->required();
  };

  auto* gamma_cmd = app.add_subcommand("gamma", "Print the shape parameters and the Gaussian coefficients");
  add_state(gamma_cmd);

  double log2_ell = 0.0;
  std::string backend_name = "auto";
  long q_lim = 0, index_cap = 0;
  auto* corr_cmd = app.add_subcommand("correlators", "Print the correlator triple at one bin width");
  add_state(corr_cmd);
  corr_cmd->add_option("--log2-ell", log2_ell, "Bin width as log2(ell)")->required();
  corr_cmd->add_option("--backend", backend_name, "exact | approx | large_squeezing | dual_saddle | auto");
  corr_cmd->add_option("--q-lim", q_lim, "Truncation of the approximation sums (0 = default)")
      ->check(CLI::NonNegativeNumber);
  corr_cmd->add_option("--index-cap", index_cap, "Index cap of the exact sums (0 = default)")
      ->check(CLI::NonNegativeNumber);

  std::string range_s = "-4:8", angles_name = "optimal", out_path;
  double step = 0.05;
  auto* prof_cmd = app.add_subcommand("bell-profile", "Bell value as a function of log2(ell), CSV");
  add_state(prof_cmd);
  prof_cmd->add_option("--log2-ell", range_s, "Range lo:hi of log2(ell)");
  prof_cmd->add_option("--step", step, "Step in log2(ell)")->check(CLI::PositiveNumber);
  prof_cmd->add_option("--angles", angles_name, "optimal | standard");
  prof_cmd->add_option("--backend", backend_name, "Correlator backend");
  prof_cmd->add_option("--out", out_path, "Output CSV file (default stdout)");

  std::string r_range = "0:5", phi_range = "0:0.7853981633974483", grid_s = "300x300", mode_name = "bump",
              spacing_name = "linear";
  double phi_floor = 0.0;
  std::string csv_path, json_path;
  auto* map_cmd = app.add_subcommand("bell-map", "Violation map over (r, phi), CSV and JSON");
  map_cmd->add_option("--r", r_range, "Range lo:hi of r");
  map_cmd->add_option("--phi", phi_range, "Range lo:hi of phi");
  map_cmd->add_option("--grid", grid_s, "Grid size NxM (r points x phi points)");
  map_cmd->add_option("--mode", mode_name, "bump | full");
  map_cmd->add_option("--phi-spacing", spacing_name, "linear | geometric");
  map_cmd->add_option("--phi-floor", phi_floor, "Smallest nonzero phi of a geometric axis (default hi * 1e-4)");
  map_cmd->add_option("--backend", backend_name, "Correlator backend");
  map_cmd->add_option("--csv", csv_path, "CSV output file (default stdout)");
  map_cmd->add_option("--json", json_path, "JSON output file");

  std::string x_range = "0.01:10", x_spacing = "geometric";
  int x_points = 200;
  double r_ref = 5.0;
  auto* col_cmd = app.add_subcommand("collapse", "Bump height against x = e^r phi in the large-squeezing backend");
  col_cmd->add_option("--x", x_range, "Range lo:hi of x");
  col_cmd->add_option("--points", x_points, "Number of x values")->check(CLI::PositiveNumber);
  col_cmd->add_option("--spacing", x_spacing, "linear | geometric");
  col_cmd->add_option("--r-ref", r_ref, "Reference squeezing parameter");
  col_cmd->add_option("--csv", csv_path, "CSV output file (default stdout)");
  col_cmd->add_option("--json", json_path, "JSON output file");

  auto* th_cmd = app.add_subcommand("threshold", "Smallest r with a violating bump at fixed phi");
  th_cmd->add_option("--phi", phi, "Squeezing angle in [0, pi/4]")->required();
  th_cmd->add_option("--backend", backend_name, "Correlator backend");

  std::string level = "quick";
  auto* val_cmd = app.add_subcommand("validate", "Run the oracle and invariant checks");
  val_cmd->add_option("--level", level, "quick | full")->check(CLI::IsMember({"quick", "full"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (gamma_cmd->parsed()) {
      const SqueezingParams p{r, phi};
      validate(p);
      const GammaSet g = gamma_set(p);
      const auto [A, B] = coefficients(p);
      json j{{"r", r},
             {"phi", phi},
             {"gamma1", g.gamma1},
             {"gamma2", g.gamma2},
             {"gamma3", g.gamma3},
             {"gamma4", g.gamma4},
             {"A", {{"re", A.real()}, {"im", A.imag()}}},
             {"B", {{"re", B.real()}, {"im", B.imag()}}}};
      std::cout << j.dump(1) << '\n';
    } else if (corr_cmd->parsed()) {
      const SqueezingParams p{r, phi};
      validate(p);
      CorrelatorOptions opt;
      opt.approx.q_lim = q_lim;
      opt.trunc.index_cap = index_cap;
      const auto res = correlators(p, {std::exp2(log2_ell)}, parse_backend(backend_name), opt);
      json j{{"r", r},
             {"phi", phi},
             {"log2_ell", log2_ell},
             {"correlators", triple_json(res.triple)},
             {"bell_optimal", bell_optimal(res.triple)},
             {"bell_standard", bell_expectation(res.triple, standard_angles())},
             {"backend", to_string(res.backend)},
             {"regime", to_string(res.regime)},
             {"quality", to_string(res.quality)}};
      std::cout << j.dump(1) << '\n';
    } else if (prof_cmd->parsed()) {
      const SqueezingParams p{r, phi};
      validate(p);
      const Range lr = parse_range(range_s, "--log2-ell");
      ProfileOptions po;
      po.backend = parse_backend(backend_name);
      po.angles = parse_angles_mode(angles_name);
      po.threads = threads;
      const auto prof = bell_profile(p, lr.lo, lr.hi, step, po);
      emit(out_path, [&](std::ostream& os) {
        os << "# sqbell bell_profile schema_version=" << kSchemaVersion << "\n";
        os << "log2_ell,bell,backend,quality\n";
        for (const auto& pt : prof.points)
          os << format_number(pt.log2_ell) << ',' << format_number(pt.bell) << ',' << to_string(pt.backend) << ','
             << to_string(pt.quality) << '\n';
      });
      for (const auto& pt : prof.points)
        if (pt.quality == Quality::Failed) {
          std::cerr << "sqbell: backend failed at log2(ell) = " << pt.log2_ell << "\n";
          return 1;
        }
    } else if (map_cmd->parsed()) {
      const Range rr = parse_range(r_range, "--r"), pr = parse_range(phi_range, "--phi");
      const auto [nr, np] = parse_grid(grid_s);
      MapOptions mo;
      mo.mode = parse_map_mode(mode_name);
      mo.bump.backend = parse_backend(backend_name);
      mo.threads = threads;
      const auto map = violation_map(make_axis(rr.lo, rr.hi, nr),
                                     make_axis(pr.lo, pr.hi, np, parse_axis_spacing(spacing_name), phi_floor), mo);
      emit(csv_path, [&](std::ostream& os) { write_map_csv(os, map); });
      if (!json_path.empty()) emit(json_path, [&](std::ostream& os) { write_map_json(os, map); });
      std::size_t failed = 0;
      for (auto q : map.quality) failed += q == Quality::Failed;
      if (failed) {
        std::cerr << "sqbell: " << failed << " map cells failed; see the quality column\n";
        return 1;
      }
    } else if (col_cmd->parsed()) {
      const Range xr = parse_range(x_range, "--x");
      const auto xs = make_axis(xr.lo, xr.hi, x_points, parse_axis_spacing(x_spacing), xr.lo > 0 ? xr.lo : 0.0);
      const auto c = collapse_curve(xs, r_ref, {}, threads);
      if (c.regime_warning) std::cerr << "sqbell: warning: r_ref < 4 lies outside the deep large-squeezing regime\n";
      emit(csv_path, [&](std::ostream& os) { write_collapse_csv(os, c); });
      if (!json_path.empty()) emit(json_path, [&](std::ostream& os) { write_collapse_json(os, c); });
      if (const auto x = collapse_crossing(c)) std::cerr << "sqbell: crossing of 2 at x = " << *x << "\n";
    } else if (th_cmd->parsed()) {
      ThresholdOptions to;
      to.bump.backend = parse_backend(backend_name);
      const auto th = threshold_r(phi, to);
      json j{{"phi", phi}, {"r_threshold", th ? json(*th) : json(nullptr)}};
      std::cout << j.dump(1) << '\n';
    } else if (val_cmd->parsed()) {
      const auto t0 = std::chrono::steady_clock::now();
      const auto checks = run_validation(level == "full", threads);
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      std::size_t failed = 0;
      json arr = json::array();
      for (const auto& c : checks) {
        failed += !c.pass;
        arr.push_back({{"check", c.name}, {"pass", c.pass}, {"detail", c.detail}});
      }
      std::cout << json{{"level", level}, {"seconds", secs}, {"failed", failed}, {"checks", arr}}.dump(1) << '\n';
      return failed ? 1 : 0;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "sqbell: usage error: " << e.what() << "\n" << app.help();
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "sqbell: numerical failure: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

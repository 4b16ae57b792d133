#include "polydots/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "polydots/errors.hpp"
#include "polydots/parallel.hpp"

#ifndef POLYDOTS_CORPUS_DIR
#define POLYDOTS_CORPUS_DIR "corpus"
#endif

namespace polydots {

namespace {

bool near(double got, double want, double rel, double abs_tol = 0.0) {
  return std::abs(got - want) <= abs_tol + rel * std::max(1.0, std::abs(want));
}

void fail(SuiteResult& r, const std::string& invariant, const std::string& detail) {
  r.passed = false;
  r.failures.push_back(invariant + ": " + detail);
}

std::string num(double x) { return format_number(x); }

int minimum_points(const StationarySet& set) {
  int n = 0;
  for (const auto& p : set.points) {
    if (p.kind == PointKind::minimum) n += p.multiplicity;
  }
  return n;
}

// ---------------------------------------------------------------------------
// Corpus expectations

void check_expectations(const PotentialSpec& spec, const Json& expect, SuiteResult& r) {
  const StationarySet set = stationary_points(spec);
  for (const auto& [key, want] : expect.items()) {
    if (key == "stationary_points") {
      if (want.contains("orbits") && want.at("orbits").get<int>() != int(set.points.size())) {
        fail(r, "stationary_points", "expected " + want.at("orbits").dump() + " orbits, got " +
                                         std::to_string(set.points.size()));
      }
      if (want.contains("points") && want.at("points").get<int>() != set.total_points()) {
        fail(r, "stationary_points", "expected " + want.at("points").dump() + " points, got " +
                                         std::to_string(set.total_points()));
      }
      if (want.contains("minima_points") &&
          want.at("minima_points").get<int>() != minimum_points(set)) {
        fail(r, "stationary_points", "expected " + want.at("minima_points").dump() +
                                         " minima, got " + std::to_string(minimum_points(set)));
      }
    } else if (key == "values") {
      for (const Json& v : want) {
        const std::string label = v.at("label").get<std::string>();
        const StationaryPoint* p = set.find(label);
        if (!p) {
          fail(r, "stationary_points", "orbit '" + label + "' missing");
          continue;
        }
        if (v.contains("value") && !near(p->value, v.at("value").get<double>(), 1e-10)) {
          fail(r, "stationary_points", "value of '" + label + "' is " + num(p->value) +
                                           ", expected " + num(v.at("value").get<double>()));
        }
        if (v.contains("kind") && v.at("kind").get<std::string>() != to_string(p->kind)) {
          fail(r, "classify", "'" + label + "' is a " + std::string(to_string(p->kind)) +
                                  ", expected " + v.at("kind").get<std::string>());
        }
      }
    } else if (key == "off_axis_roots_2d") {
      std::vector<PlanarRoot> got;
      try {
        got = off_axis_roots_2d(spec);
      } catch (const Error& e) {
        fail(r, "off_axis_roots_2d", e.what());
        continue;
      }
      if (got.size() != want.size()) {
        fail(r, "off_axis_roots_2d", "expected " + std::to_string(want.size()) +
                                         " roots, got " + std::to_string(got.size()));
        continue;
      }
      for (std::size_t i = 0; i < got.size(); ++i) {
        const Json& w = want[i];
        if (!near(got[i].x2, w.at("x2").get<double>(), 1e-9) ||
            !near(got[i].y2, w.at("y2").get<double>(), 1e-9) ||
            !near(got[i].r2, w.at("r2").get<double>(), 1e-9)) {
          fail(r, "off_axis_roots_2d",
               "root " + std::to_string(i) + " is (" + num(got[i].x2) + ", " + num(got[i].y2) +
                   ", " + num(got[i].r2) + "), expected " + w.dump());
        }
      }
    } else if (key == "quadratic_aux") {
      const RawParams& raw = spec.raw();
      const QuadraticAux aux = quadratic_aux(raw.a, raw.b, raw.c, raw.d, raw.u);
      const double tol = want.value("tol", 1e-9);
      if (want.contains("disc") && !near(aux.disc, want.at("disc").get<double>(), 0.0, tol)) {
        fail(r, "quadratic_aux", "disc is " + num(aux.disc) + ", expected " +
                                     num(want.at("disc").get<double>()));
      }
    } else if (key == "dominant_minimum" || key == "classical_dominant") {
      const auto kind =
          key == "dominant_minimum" ? BoundaryKind::quantum : BoundaryKind::classical;
      const Dominance d = dominant_of(ground_candidates(spec, set), kind);
      const auto labels = want.get<std::vector<std::string>>();
      if (d.labels != labels) fail(r, key, "got " + d.joined() + ", expected " + Json(labels).dump());
    } else if (key == "warnings") {
      if (want.get<int>() != int(set.warnings.size())) {
        fail(r, "stationary_points", "expected " + want.dump() + " warnings, got " +
                                         std::to_string(set.warnings.size()));
      }
    } else if (key == "oracle") {
      if (!want.get<bool>()) continue;
      const auto oracle = newton_stationary(spec, default_newton_grid(spec));
      const OrbitDiff diff = compare_orbits(set.points, oracle);
      for (const auto& m : diff.missing) fail(r, "newton_stationary", "oracle misses " + m.label);
      for (const auto& s : diff.spurious) {
        fail(r, "stationary_points", "closed form misses an orbit near (" +
                                         num(s.location(0)) + ", ...) of kind " +
                                         std::string(to_string(s.kind)));
      }
    } else {
      fail(r, "corpus", "unknown expectation '" + key + "'");
    }
  }
}

// ---------------------------------------------------------------------------
// Random draws

struct Draws {
  std::mt19937_64 rng;
  explicit Draws(unsigned seed) : rng(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
};

// Generic draws only: every stationary point must be non-degenerate.
bool generic(const StationarySet& set) {
  for (const auto& p : set.points) {
    const double big = p.hessian_eigs.cwiseAbs().maxCoeff();
    if (p.hessian_eigs.cwiseAbs().minCoeff() < 1e-4 * big) return false;
  }
  return true;
}

PotentialSpec draw_spec(Family family, Draws& d) {
  for (;;) {
    try {
      PotentialSpec spec = [&] {
        switch (family) {
          case Family::cusp2d: {
            const double b = d.uniform(0.5, 1.5);
            const double a = b + d.uniform(0.1, 1.0);
            return PotentialSpec::cusp2d(a * a, b * b);
          }
          case Family::cusp3d: {
            const double g = d.uniform(0.5, 1.5);
            const double b = g + d.uniform(0.1, 1.0);
            const double a = b + d.uniform(0.1, 1.0);
            return PotentialSpec::cusp3d(a * a, b * b, g * g);
          }
          case Family::butterfly1d: {
            ShapeParams sh;
            sh.axes = {AxisShape{d.uniform(0.3, 2.0), d.uniform(0.3, 2.0)}};
            return PotentialSpec::from_shape(family, sh);
          }
          default: {
            ShapeParams sh;
            const int dim = dimension_of(family);
            for (int j = 0; j < dim; ++j) {
              sh.axes.push_back(AxisShape{d.uniform(0.3, 2.0), d.uniform(0.3, 2.0)});
            }
            sh.u = d.uniform(-3.0, 3.0);
            if (dim == 3) {
              sh.v = d.uniform(-3.0, 3.0);
              sh.w = d.uniform(-3.0, 3.0);
            }
            return PotentialSpec::from_shape(family, sh);
          }
        }
      }();
      const StationarySet set = stationary_points(spec);
      if (generic(set)) return spec;
    } catch (const Error&) {
      // Singular couplings: draw again.
    }
  }
}

SuiteResult oracle_suite(const VerifyOptions& options) {
  SuiteResult r;
  r.name = "closed_form_vs_oracle";
  Draws draws(options.seed);
  std::vector<PotentialSpec> specs;
  for (Family f : {Family::cusp2d, Family::cusp3d, Family::butterfly1d, Family::butterfly2d,
                   Family::butterfly3d}) {
    for (int i = 0; i < options.draws; ++i) specs.push_back(draw_spec(f, draws));
  }
  std::vector<std::vector<std::string>> failures(specs.size());
  parallel_for(specs.size(), options.workers, [&](std::size_t i) {
    const PotentialSpec& spec = specs[i];
    const StationarySet set = stationary_points(spec);
    const std::string tag = std::string(to_string(spec.family())) + " draw " + std::to_string(i);
    for (const auto& p : set.points) {
      const double g = gradient(spec, p.location).norm();
      const double bound = 1e-10 * (1.0 + std::pow(p.location.norm(), 5));
      if (!(g < bound)) {
        failures[i].push_back("gradient_residual: " + tag + " orbit " + p.label + " |grad| = " +
                              num(g));
      }
    }
    const auto oracle = newton_stationary(spec, default_newton_grid(spec));
    const OrbitDiff diff = compare_orbits(set.points, oracle);
    for (const auto& m : diff.missing) {
      failures[i].push_back("newton_stationary: " + tag + " oracle misses " + m.label);
    }
    for (const auto& s : diff.spurious) {
      failures[i].push_back("stationary_points: " + tag + " misses a " +
                            std::string(to_string(s.kind)) + " in subfamily " +
                            std::string(to_string(s.subfamily)));
    }
  });
  for (const auto& f : failures) {
    for (const auto& msg : f) {
      r.passed = false;
      r.failures.push_back(msg);
    }
  }
  r.detail["specs"] = specs.size();
  return r;
}

SuiteResult lemma_suite(const VerifyOptions& options) {
  SuiteResult r;
  r.name = "lemmas";
  const double xi_star = lemma1_boundary();
  const double exact = 0.5 * std::sqrt(3.0 * std::sqrt(2.0) - 4.0);
  r.detail["lemma1_threshold"] = xi_star;
  if (!near(xi_star, exact, 0.0, 1e-12) || !near(lemma1_reality(0.2).threshold, exact, 0, 1e-15)) {
    fail(r, "lemma1_reality", "bisected threshold " + num(xi_star) + " differs from " + num(exact));
  }
  if (!near(xi_star, 0.2462928572, 0.0, 1e-9)) {
    fail(r, "lemma1_reality", "threshold " + num(xi_star) + " is not 0.2462928572");
  }
  Draws draws(options.seed + 1);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double p = draws.uniform(0.5, 5.0), q = draws.uniform(0.5, 5.0), s = draws.uniform(0.5, 5.0);
    const double bound = std::sqrt(3.0 * (p + q + s));
    const double u = draws.uniform(0.0, 2.0 * bound);
    const auto roots = large_coupling_isotropic_roots(u, p, q, s);
    const bool real_positive = roots && roots->first > 0.0 && roots->second > 0.0;
    if (real_positive != lemma2_reality(u, p, q, s).real_roots || real_positive != (u >= bound)) {
      fail(r, "lemma2_reality", "u = " + num(u) + ", bound = " + num(bound));
    }
    if (!roots) continue;
    for (double r2 : {roots->first, roots->second}) {
      // Large-coupling system: u(R² − X_i²) = R⁴ + p_i for each axis.
      const double r4 = r2 * r2;
      const double sum = 3.0 * r2 - (3.0 * r4 + p + q + s) / u;
      worst = std::max(worst, std::abs(sum - r2) / std::max(1.0, r2));
    }
  }
  r.detail["lemma2_backsubstitution"] = worst;
  if (!(worst < 1e-9)) fail(r, "large_coupling_isotropic_roots", "residual " + num(worst));
  return r;
}

SuiteResult fd_suite() {
  SuiteResult r;
  r.name = "fd_convergence";
  auto harmonic = [](const Point& p) { return p(0) * p(0); };
  std::vector<double> errors;
  for (int n : {251, 501, 1001}) {
    const EigenSolution sol = fd_eigensolve(harmonic, GridSpec::uniform(1, 10.0, n), 1);
    errors.push_back(std::abs(sol.energies[0] - 1.0));
  }
  const double r1 = errors[0] / errors[1], r2 = errors[1] / errors[2];
  r.detail["ratios"] = Json::array({r1, r2});
  if (!(std::abs(r1 - 4.0) < 0.8 && std::abs(r2 - 4.0) < 0.8)) {
    fail(r, "fd_eigensolve", "convergence ratios " + num(r1) + ", " + num(r2) + " are not ~4");
  }
  return r;
}

SuiteResult boundary_suite(const VerifyOptions& options) {
  SuiteResult r;
  r.name = "relocalization_boundary";
  const double beta = 2.0;
  ShapeParams sh;
  sh.axes = {AxisShape{1.5 * 1.5, beta * beta}};
  const ParamPath path{PotentialSpec::from_shape(Family::butterfly1d, sh), {{"alpha", 1.5, 2.2}}, 71};
  ScanOptions scan;
  scan.workers = options.workers;
  const ScanReport report = scan_line(path, scan);
  const double expected = bisect_root(
      [&](double a) {
        const double g = std::sqrt(a * a + 2 * beta * beta);
        return (a * a - beta * beta) * g * g * g * g + 2 * std::sqrt(3.0) * beta * g -
               std::sqrt(3.0) * a * g;
      },
      1.5, 2.2, 1e-14);
  bool quantum = false, classical = false;
  for (const auto& b : report.boundaries) {
    if (b.kind == BoundaryKind::quantum && near(b.location[0], expected, 0.0, 1e-9)) quantum = true;
    if (b.kind == BoundaryKind::classical && near(b.location[0], beta, 0.0, 1e-9)) classical = true;
  }
  r.detail["quantum_expected"] = expected;
  r.detail["boundaries"] = report.boundaries.size();
  if (!quantum) fail(r, "locate_boundary", "quantum boundary not at " + num(expected));
  if (!classical) fail(r, "locate_boundary", "classical boundary not at alpha = beta");
  if (report.boundaries.size() != 2) {
    fail(r, "scan_line", std::to_string(report.boundaries.size()) + " boundaries, expected 2");
  }
  return r;
}

}  // namespace

std::filesystem::path default_corpus_dir() { return POLYDOTS_CORPUS_DIR; }

SuiteResult check_corpus_file(const std::filesystem::path& file) {
  SuiteResult r;
  r.name = "corpus:" + file.filename().string();
  try {
    const Json j = load_json_file(file);
    const PotentialSpec spec = spec_from_json(j);
    if (j.contains("expect")) check_expectations(spec, j.at("expect"), r);
  } catch (const std::exception& e) {
    fail(r, "spec_from_json", e.what());
  }
  return r;
}

Verdict run_verification(const VerifyOptions& options) {
  Verdict v;
  v.seed = options.seed;
  std::vector<std::filesystem::path> files;
  if (!options.corpus.empty()) {
    if (!std::filesystem::is_directory(options.corpus)) {
      throw UsageError("corpus directory '" + options.corpus.string() + "' does not exist");
    }
    for (const auto& entry : std::filesystem::directory_iterator(options.corpus)) {
      if (entry.path().extension() == ".json") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
  }
  for (const auto& f : files) v.suites.push_back(check_corpus_file(f));
  v.suites.push_back(oracle_suite(options));
  v.suites.push_back(lemma_suite(options));
  v.suites.push_back(fd_suite());
  v.suites.push_back(boundary_suite(options));
  for (const auto& s : v.suites) v.passed = v.passed && s.passed;
  return v;
}

Json Verdict::to_json() const {
  Json j;
  j["seed"] = seed;
  j["passed"] = passed;
  Json suites_json = Json::array();
  for (const auto& s : suites) {
    suites_json.push_back(Json{{"name", s.name},
                               {"passed", s.passed},
                               {"failures", s.failures},
                               {"detail", s.detail}});
  }
  j["suites"] = suites_json;
  return j;
}

std::vector<std::string> Verdict::failures() const {
  std::vector<std::string> out;
  for (const auto& s : suites) {
    for (const auto& f : s.failures) out.push_back(s.name + ": " + f);
  }
  return out;
}

}  // namespace polydots

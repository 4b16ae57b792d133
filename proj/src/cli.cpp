#include "polydots/cli.hpp"

#include <atomic>
#include <cmath>
#include <csignal>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "polydots/errors.hpp"
#include "polydots/verify.hpp"

namespace polydots {

namespace {

std::atomic<bool> g_interrupted{false};

extern "C" void on_sigint(int) { g_interrupted.store(true); }

namespace fs = std::filesystem;

struct SpecFlags {
  std::string family;
  std::string alpha, beta, gamma;  // comma lists: one value (isotropic) or one per axis
  std::optional<double> a, b, c, d, u, v, w, p, q, s;
  std::string spec_file;
};

struct OutputFlags {
  std::string dir;
  bool json = false;
  bool csv = false;

  bool want_json() const { return json || !csv; }
  bool want_csv() const { return csv || !json; }
};

std::vector<double> parse_list(const std::string& text, const std::string& flag) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("--" + flag + ": '" + item + "' is not a number");
    }
  }
  if (out.empty()) throw UsageError("--" + flag + ": empty value");
  return out;
}

Json spec_json_from_flags(const SpecFlags& f) {
  if (f.family.empty()) throw UsageError("give --spec FILE or --family with its parameters");
  const Family family = parse_family(f.family);
  const int dim = dimension_of(family);
  Json j;
  j["family"] = f.family;
  const bool any_shape = !f.alpha.empty() || !f.beta.empty() || !f.gamma.empty();
  const std::pair<const char*, const std::optional<double>*> raw_flags[] = {
      {"a", &f.a}, {"b", &f.b}, {"c", &f.c}, {"d", &f.d}, {"p", &f.p}, {"q", &f.q}, {"s", &f.s}};
  const std::pair<const char*, const std::optional<double>*> couplings[] = {
      {"u", &f.u}, {"v", &f.v}, {"w", &f.w}};
  bool any_raw = false;
  for (const auto& [_, value] : raw_flags) any_raw = any_raw || value->has_value();

  if (any_shape && any_raw) {
    throw UsageError("mix of shape flags (--alpha/--beta/--gamma) and raw flags (--a, --c, ...)");
  }
  if (any_shape) {
    Json shape = Json::object();
    if (is_cusp(family)) {
      const std::pair<const char*, const std::string*> names[] = {
          {"alpha", &f.alpha}, {"beta", &f.beta}, {"gamma", &f.gamma}};
      for (const auto& [name, text] : names) {
        if (text->empty()) continue;
        const auto values = parse_list(*text, name);
        if (values.size() != 1) throw UsageError(std::string("--") + name + " takes one value for cusp families");
        shape[name] = values[0];
      }
    } else {
      Json axes = Json::array();
      for (int k = 0; k < dim; ++k) axes.push_back(Json::object());
      const std::pair<const char*, const std::string*> names[] = {
          {"alpha", &f.alpha}, {"beta", &f.beta}, {"gamma", &f.gamma}};
      for (const auto& [name, text] : names) {
        if (text->empty()) continue;
        const auto values = parse_list(*text, name);
        if (values.size() != 1 && static_cast<int>(values.size()) != dim) {
          throw UsageError(std::string("--") + name + " needs 1 or " + std::to_string(dim) +
                           " comma-separated values");
        }
        for (int k = 0; k < dim; ++k) axes[k][name] = values.size() == 1 ? values[0] : values[k];
      }
      shape["axes"] = axes;
      for (const auto& [name, value] : couplings) {
        if (value->has_value()) shape[name] = **value;
      }
    }
    j["shape"] = shape;
  } else {
    Json raw = Json::object();
    for (const auto& [name, value] : raw_flags) {
      if (value->has_value()) raw[name] = **value;
    }
    for (const auto& [name, value] : couplings) {
      if (value->has_value()) raw[name] = **value;
    }
    // Couplings default to zero when only the axis coefficients are given.
    for (auto n : raw_param_names(family)) {
      const std::string key(n);
      if (!raw.contains(key) && (key == "u" || key == "v" || key == "w")) raw[key] = 0.0;
    }
    j["raw"] = raw;
  }
  return j;
}

PotentialSpec resolve_spec(const SpecFlags& f) {
  const bool any_inline =
      !f.family.empty() || !f.alpha.empty() || !f.beta.empty() || !f.gamma.empty() || f.a ||
      f.b || f.c || f.d || f.u || f.v || f.w || f.p || f.q || f.s;
  if (!f.spec_file.empty()) {
    if (any_inline) throw UsageError("give either --spec FILE or inline parameters, not both");
    return load_spec_file(f.spec_file);
  }
  return spec_from_json(spec_json_from_flags(f));
}

void add_spec_flags(CLI::App* app, SpecFlags& f) {
  app->add_option("--family", f.family,
                  "cusp2d | cusp3d | butterfly1d | butterfly2d | butterfly3d");
  app->add_option("--alpha", f.alpha, "shape alpha (position); comma list for per-axis values");
  app->add_option("--beta", f.beta, "shape beta (position); comma list for per-axis values");
  app->add_option("--gamma", f.gamma, "shape gamma (position); comma list for per-axis values");
  app->add_option("--a", f.a, "raw quartic coupling (butterfly1d: x^4 coefficient)");
  app->add_option("--b", f.b, "raw quartic coupling, y axis");
  app->add_option("--c", f.c, "raw quadratic coupling (butterfly3d: z quartic)");
  app->add_option("--d", f.d, "raw quadratic coupling, y axis (butterfly2d)");
  app->add_option("--u", f.u, "cross coupling x^2 y^2");
  app->add_option("--v", f.v, "cross coupling x^2 z^2");
  app->add_option("--w", f.w, "cross coupling y^2 z^2");
  app->add_option("--p", f.p, "butterfly3d quadratic coupling, x axis");
  app->add_option("--q", f.q, "butterfly3d quadratic coupling, y axis");
  app->add_option("--s", f.s, "butterfly3d quadratic coupling, z axis");
  app->add_option("--spec", f.spec_file, "spec JSON file (instead of inline flags)");
}

void add_output_flags(CLI::App* app, OutputFlags& o) {
  app->add_option("--out", o.dir, "output directory (default: $POLYDOTS_OUT or .)");
  app->add_flag("--json", o.json, "write JSON reports (default: JSON and CSV)");
  app->add_flag("--csv", o.csv, "write CSV reports (default: JSON and CSV)");
}

fs::path output_dir(const OutputFlags& o) {
  if (!o.dir.empty()) return o.dir;
  if (const char* env = std::getenv("POLYDOTS_OUT"); env && *env) return env;
  return ".";
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string fixed(double x, int precision = 6) {
  if (!std::isfinite(x)) return format_number(x);
  std::ostringstream os;
  os << std::setprecision(precision) << x;
  return os.str();
}

void print_table(const StationarySet& set, std::ostream& out) {
  out << std::left << std::setw(9) << "label" << std::setw(12) << "kind" << std::setw(5) << "mult"
      << std::setw(44) << "location" << "value\n";
  for (const auto& p : set.points) {
    std::string loc = "(";
    for (Eigen::Index k = 0; k < p.location.size(); ++k) {
      loc += (k ? ", " : "") + std::string(p.location(k) == 0 ? "0" : "±" + fixed(p.location(k), 8));
    }
    loc += ")";
    out << std::setw(9) << p.label << std::setw(12) << to_string(p.kind) << std::setw(5)
        << p.multiplicity << std::setw(44) << loc << fixed(p.value, 10) << "\n";
  }
  out << set.points.size() << " orbits, " << set.total_points() << " points\n";
}

// ---------------------------------------------------------------------------
// Commands

int cmd_analyze(const SpecFlags& sf, const OutputFlags& of, std::ostream& out, std::ostream& err) {
  const PotentialSpec spec = resolve_spec(sf);
  const StationarySet set = stationary_points(spec);
  const fs::path dir = output_dir(of);
  if (of.want_json()) write_text_file(dir / "stationary.json", dump(stationary_to_json(spec, set)));
  if (of.want_csv()) write_text_file(dir / "stationary.csv", stationary_to_csv(set));
  print_table(set, out);
  bool no_real_shape = false;
  for (const auto& w : set.warnings) {
    err << "warning: " << w << "\n";
    no_real_shape = no_real_shape || w.rfind("NoRealShape", 0) == 0;
  }
  return no_real_shape ? kExitNoRealShape : kExitOk;
}

int cmd_spectrum(const SpecFlags& sf, const OutputFlags& of, std::optional<double> emax,
                 std::ostream& out, std::ostream& err) {
  const PotentialSpec spec = resolve_spec(sf);
  const StationarySet set = stationary_points(spec);
  const auto candidates = ground_candidates(spec, set);
  const Dominance dom = dominant_of(candidates, BoundaryKind::quantum);
  const double e_max = emax.value_or(dom.energy + 10.0);
  const fs::path dir = output_dir(of);
  if (of.want_json()) {
    write_text_file(dir / "spectrum.json", dump(spectrum_to_json(spec, candidates, e_max)));
  }
  if (of.want_csv()) write_text_file(dir / "spectrum.csv", spectrum_to_csv(candidates, e_max));
  for (const auto& c : candidates) {
    out << c.label << " (x" << c.multiplicity << "): v0 = " << fixed(c.well.v0, 10)
        << ", omega = [";
    for (Eigen::Index i = 0; i < c.well.frequencies.size(); ++i) {
      out << (i ? ", " : "") << fixed(c.well.frequencies(i), 10);
    }
    out << "], ground estimate = " << fixed(c.ground_estimate, 10) << "\n";
    if (!c.well.reliable()) {
      err << "warning: well " << c.label << " has confinement margin "
          << fixed(c.well.confinement_margin) << " below twice its zero-point energy "
          << fixed(2 * c.well.zero_point()) << "; the harmonic estimate is unreliable\n";
    }
  }
  out << "dominant: " << dom.joined() << (dom.tie() ? " (tie)" : "") << "\n";
  for (const auto& w : set.warnings) err << "warning: " << w << "\n";
  return kExitOk;
}

struct ScanFlags {
  std::string param, param2;
  std::optional<double> from, to, from2, to2;
  int steps = 101;
  int resolution = 0;
  bool lemma1 = false;
  int workers = 1;
  double tol = 1e-10;
};

void write_scan(const ScanReport& report, const fs::path& dir, const OutputFlags& of) {
  write_text_file(dir / "boundaries.json", dump(boundaries_to_json(report)));
  if (of.want_csv()) write_text_file(dir / "scan.csv", scan_to_csv(report));
  if (of.json) write_text_file(dir / "scan.json", dump(scan_to_json(report)));
}

int cmd_scan(const SpecFlags& sf, const OutputFlags& of, const ScanFlags& f, std::ostream& out,
             std::ostream& err) {
  ScanOptions options;
  options.workers = f.workers;
  options.gap_tol = f.tol;
  options.cancel = &g_interrupted;
  const fs::path dir = output_dir(of);

  if (f.lemma1) {
    // Existence boundary of the small-coupling bulk roots, from the closed
    // criterion and from re-enumerating stationary points along ξ = α/β.
    const double xi_star = lemma1_boundary();
    ShapeParams sh;
    sh.axes.assign(3, AxisShape{0.15 * 0.15, 1.0});
    const ParamPath path{PotentialSpec::from_shape(Family::butterfly3d, sh),
                         {{"alpha", 0.15, 0.35}},
                         std::max(f.steps, 2)};
    ScanReport report = scan_line(path, options);
    Json j = boundaries_to_json(report);
    j["lemma1"] = Json{{"threshold", xi_star},
                       {"closed_form", 0.5 * std::sqrt(3.0 * std::sqrt(2.0) - 4.0)}};
    write_text_file(dir / "boundaries.json", dump(j));
    if (of.want_csv()) write_text_file(dir / "scan.csv", scan_to_csv(report));
    out << "lemma1 existence boundary xi* = " << format_number(xi_star) << "\n";
    for (const auto& c : report.structure_changes) {
      out << "stationary set changes at alpha/beta = " << format_number(c.location[0]) << "\n";
    }
    return report.partial ? kExitUsage : kExitOk;
  }

  const PotentialSpec spec = resolve_spec(sf);
  if (f.param.empty() || !f.from || !f.to) {
    throw UsageError("scan needs --param NAME --from X --to Y (or --lemma1)");
  }
  if (!f.param2.empty()) {
    if (!f.from2 || !f.to2) throw UsageError("--param2 needs --from2 and --to2");
    const int res = f.resolution > 0 ? f.resolution : 41;
    const SubdomainMap map = scan_grid(spec, GridAxis{f.param, *f.from, *f.to},
                                       GridAxis{f.param2, *f.from2, *f.to2}, res, options);
    write_text_file(dir / "raster_quantum.csv", raster_to_csv(map, BoundaryKind::quantum));
    write_text_file(dir / "raster_classical.csv", raster_to_csv(map, BoundaryKind::classical));
    write_text_file(dir / "polylines.json", dump(polylines_to_json(map)));
    out << map.polylines.size() << " boundary polylines on a " << res << "x" << res << " raster\n";
    if (map.partial) err << "warning: interrupted; raster is partial\n";
    return kExitOk;
  }
  const ParamPath path{spec, {{f.param, *f.from, *f.to}}, f.steps};
  const ScanReport report = scan_line(path, options);
  write_scan(report, dir, of);
  out << report.header << "\n";
  for (const auto& b : report.boundaries) {
    out << to_string(b.kind) << " boundary at " << f.param << " = " << format_number(b.location[0])
        << " (" << b.label_a << " -> " << b.label_b << ")\n";
  }
  for (const auto& c : report.structure_changes) {
    out << "stationary set changes at " << f.param << " = " << format_number(c.location[0]) << "\n";
  }
  if (report.boundaries.empty()) out << "no boundary\n";
  for (const auto& w : report.warnings) err << "warning: " << w << "\n";
  return kExitOk;
}

struct GridFlags {
  std::string window;
  int points = 81;
  std::optional<double> clip;
  bool clip_strict = false;
  std::string plane = "xy";
  double slice = 0;
};

int cmd_grid(const SpecFlags& sf, const OutputFlags& of, const GridFlags& g, std::ostream& out) {
  const PotentialSpec spec = resolve_spec(sf);
  PlaneWindow window;
  window.points = g.points;
  window.clip = g.clip;
  window.clip_inclusive = !g.clip_strict;
  window.slice = g.slice;
  if (g.plane == "xy") {
    window.axes = {0, 1};
  } else if (g.plane == "xz") {
    window.axes = {0, 2};
  } else if (g.plane == "yz") {
    window.axes = {1, 2};
  } else {
    throw UsageError("--plane must be xy, xz or yz");
  }
  if (spec.dimension() == 2 && g.plane != "xy") throw UsageError("2D specs only have the xy plane");
  if (!g.window.empty()) {
    const auto b = parse_list(g.window, "window");
    if (b.size() != 4) throw UsageError("--window needs xmin,xmax,ymin,ymax");
    window.bounds = {b[0], b[1], b[2], b[3]};
  } else {
    double extent = 1.0;
    for (const auto& p : stationary_points(spec).points) extent = std::max(extent, p.location.maxCoeff());
    const double half = 1.25 * extent;
    window.bounds = {-half, half, -half, half};
  }
  const PlaneGrid grid = sample_plane(spec, window);
  const fs::path dir = output_dir(of);
  write_text_file(dir / "grid.csv", plane_to_csv(grid));
  Json meta;
  meta["spec"] = spec_to_json(spec);
  meta["plane"] = g.plane;
  meta["slice"] = g.slice;
  meta["window"] = window.bounds;
  meta["points"] = window.points;
  meta["clip"] = g.clip ? Json(*g.clip) : Json(nullptr);
  meta["clip_rule"] = g.clip_strict ? "V < clip" : "V <= clip";
  write_text_file(dir / "grid.json", dump(meta));
  out << "wrote " << window.points << "x" << window.points << " grid to " << (dir / "grid.csv").string()
      << "\n";
  return kExitOk;
}

struct OracleFlags {
  int k = 0;
  std::optional<int> grid_n;
  std::optional<double> grid_L;
  bool richardson = false;
  double tol = 0.1;
  unsigned seed = 12345;
};

int cmd_oracle(const SpecFlags& sf, const OutputFlags& of, const OracleFlags& o,
               std::ostream& out, std::ostream& err) {
  const PotentialSpec spec = resolve_spec(sf);
  const StationarySet set = stationary_points(spec);
  const GridSpec seeds = default_newton_grid(spec);
  const auto found = newton_stationary(spec, seeds);
  const OrbitDiff diff = compare_orbits(set.points, found);
  const fs::path dir = output_dir(of);
  Json j;
  j["spec"] = spec_to_json(spec);
  j["newton_orbits"] = found.size();
  j["closed_form_orbits"] = set.points.size();
  Json missing = Json::array(), spurious = Json::array();
  for (const auto& m : diff.missing) missing.push_back(m.label);
  for (const auto& s : diff.spurious) {
    Json loc = Json::array();
    for (Eigen::Index i = 0; i < s.location.size(); ++i) loc.push_back(s.location(i));
    spurious.push_back(Json{{"subfamily", std::string(to_string(s.subfamily))}, {"location", loc}});
  }
  j["missing"] = missing;
  j["spurious"] = spurious;
  out << "newton oracle: " << found.size() << " orbits, closed form: " << set.points.size()
      << (diff.empty() ? " (agree)" : " (DISAGREE)") << "\n";

  if (o.k > 0) {
    const int dim = spec.dimension();
    GridSpec grid = GridSpec::uniform(
        dim, o.grid_L.value_or(1.5 * seeds.half_width[0]),
        o.grid_n.value_or(dim == 1 ? 2001 : dim == 2 ? 201 : 40));
    FdOptions fd;
    fd.tol_scale = o.tol;
    fd.seed = o.seed;
    const PotentialFn fn = [&spec](const Point& p) { return evaluate(spec, p); };
    const EigenSolution sol = fd_eigensolve(fn, grid, o.k, fd);
    Json ej = eigen_to_json(sol);
    if (o.richardson) ej["richardson"] = richardson_energies(fn, grid, o.k, fd);
    std::vector<StationaryPoint> wells;
    for (const auto& p : set.points) {
      if (p.kind == PointKind::minimum) wells.push_back(p);
    }
    if (!wells.empty()) {
      const LocalizationWeights lw = localization(sol, wells);
      Json weights = Json::object();
      for (std::size_t i = 0; i < lw.labels.size(); ++i) weights[lw.labels[i]] = lw.weights[i];
      ej["localization"] = Json{{"radius", lw.radius}, {"weights", weights}, {"leftover", lw.leftover}};
      out << "ground state localized on " << lw.labels[lw.dominant()] << " (weight "
          << fixed(lw.weights[lw.dominant()]) << ")\n";
    }
    j["eigen"] = ej;
    if (of.want_csv()) write_text_file(dir / "eigen_grid.csv", eigen_dump_csv(sol, fn));
    out << "lowest energies:";
    for (double e : sol.energies) out << " " << fixed(e, 10);
    out << "\n";
    for (const auto& w : sol.warnings) err << "warning: " << w << "\n";
  }
  write_text_file(dir / "oracle.json", dump(j));
  return kExitOk;
}

int cmd_verify(const OutputFlags& of, unsigned seed, const std::string& corpus, int workers,
               std::ostream& out, std::ostream& err) {
  VerifyOptions options;
  options.seed = seed;
  options.corpus = corpus.empty() ? default_corpus_dir() : fs::path(corpus);
  options.workers = workers;
  const Verdict verdict = run_verification(options);
  const fs::path dir = output_dir(of);
  write_text_file(dir / "verdict.json", dump(verdict.to_json()));
  for (const auto& s : verdict.suites) out << (s.passed ? "PASS " : "FAIL ") << s.name << "\n";
  if (!verdict.passed) {
    for (const auto& f : verdict.failures()) err << "failed: " << f << "\n";
    return kExitVerifyFailed;
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stationary points, harmonic spectra and relocalization boundaries of cusp and "
               "butterfly potentials.\n"
               "Energies use -Laplacian(psi) + V psi = E psi.\n"
               "Exit codes: 0 ok, 1 malformed input, 2 complex on-axis roots, 3 verify failed.\n"
               "POLYDOTS_OUT sets the default output directory.",
               "polydots"};
  app.require_subcommand(1);

  SpecFlags sf;
  OutputFlags of;
  auto* analyze = app.add_subcommand("analyze", "enumerate and classify stationary points");
  auto* spectrum = app.add_subcommand("spectrum", "harmonic well models and level estimates");
  auto* scan = app.add_subcommand("scan", "scan a parameter and refine catastrophe boundaries");
  auto* grid = app.add_subcommand("grid", "dump V on a plane window for plotting");
  auto* oracle = app.add_subcommand("oracle", "Newton stationary search and FD eigensolver");
  auto* verify = app.add_subcommand("verify", "run the property suites; exit 3 on failure");
  for (auto* sub : {analyze, spectrum, scan, grid, oracle}) add_spec_flags(sub, sf);
  for (auto* sub : {analyze, spectrum, scan, grid, oracle, verify}) add_output_flags(sub, of);

  std::optional<double> emax;
  spectrum->add_option("--emax", emax, "highest level energy to list (default: ground + 10)");

  ScanFlags scan_flags;
  scan->add_option("--param", scan_flags.param, "parameter to vary (raw or shape name)");
  scan->add_option("--from", scan_flags.from, "start value");
  scan->add_option("--to", scan_flags.to, "end value");
  scan->add_option("--steps", scan_flags.steps, "samples along the path")->check(CLI::Range(2, 1000000));
  scan->add_option("--param2", scan_flags.param2, "second parameter: raster over both");
  scan->add_option("--from2", scan_flags.from2, "start of the second parameter");
  scan->add_option("--to2", scan_flags.to2, "end of the second parameter");
  scan->add_option("--resolution", scan_flags.resolution, "raster points per axis (default 41)");
  scan->add_flag("--lemma1", scan_flags.lemma1, "existence boundary of the isotropic bulk orbits");
  scan->add_option("--workers", scan_flags.workers, "worker threads")->check(CLI::PositiveNumber);
  scan->add_option("--tol", scan_flags.tol, "energy-gap tolerance of the bisection");

  GridFlags grid_flags;
  grid->add_option("--window", grid_flags.window, "xmin,xmax,ymin,ymax");
  grid->add_option("--grid-n", grid_flags.points, "nodes per axis");
  grid->add_option("--clip", grid_flags.clip, "write nan where V exceeds this value");
  grid->add_flag("--clip-strict", grid_flags.clip_strict, "keep only V < clip (default V <= clip)");
  grid->add_option("--plane", grid_flags.plane, "xy | xz | yz (3D specs)");
  grid->add_option("--slice", grid_flags.slice, "value of the coordinate normal to the plane");

  OracleFlags oracle_flags;
  oracle->add_option("--k", oracle_flags.k, "eigenpairs to compute (0: stationary oracle only)");
  oracle->add_option("--grid-n", oracle_flags.grid_n, "FD nodes per axis");
  oracle->add_option("--grid-L", oracle_flags.grid_L, "FD half width of the box");
  oracle->add_option("--tol", oracle_flags.tol, "residual tolerance scale");
  oracle->add_option("--seed", oracle_flags.seed, "start-block seed");
  oracle->add_flag("--richardson", oracle_flags.richardson, "add Richardson-extrapolated energies");

  unsigned verify_seed = 1;
  std::string corpus;
  int verify_workers = 1;
  verify->add_option("--seed", verify_seed, "seed of the random property draws");
  verify->add_option("--corpus", corpus, "spec corpus directory (default: shipped corpus)");
  verify->add_option("--workers", verify_workers, "worker threads")->check(CLI::PositiveNumber);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  g_interrupted.store(false);
  auto previous = std::signal(SIGINT, on_sigint);
  int code = kExitOk;
  try {
    if (*analyze) code = cmd_analyze(sf, of, out, err);
    if (*spectrum) code = cmd_spectrum(sf, of, emax, out, err);
    if (*scan) code = cmd_scan(sf, of, scan_flags, out, err);
    if (*grid) code = cmd_grid(sf, of, grid_flags, out);
    if (*oracle) code = cmd_oracle(sf, of, oracle_flags, out, err);
    if (*verify) code = cmd_verify(of, verify_seed, corpus, verify_workers, out, err);
  } catch (const Error& e) {
    err << "error (" << to_string(e.code()) << "): " << e.what() << "\n";
    code = kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    code = kExitUsage;
  }
  std::signal(SIGINT, previous);
  return code;
}

}  // namespace polydots

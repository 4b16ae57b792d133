#include "polydots/serialize.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "polydots/errors.hpp"

namespace polydots {

namespace {

constexpr const char* kAxisNames = "xyz";

[[noreturn]] void field_error(const std::string& path, const std::string& what) {
  throw UsageError("field '" + path + "': " + what);
}

double number_at(const Json& obj, const std::string& key, const std::string& path) {
  const Json& v = obj.at(key);
  if (!v.is_number()) field_error(path + key, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) field_error(path + key, "must be finite");
  return x;
}

void require_object(const Json& j, const std::string& path) {
  if (!j.is_object()) field_error(path.empty() ? "<root>" : path, "expected an object");
}

void reject_unknown(const Json& obj, const std::set<std::string>& allowed,
                    const std::string& path) {
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.count(key)) field_error(path + key, "unknown field");
  }
}

Json number_or_null(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

Json vec_json(const Vec& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(number_or_null(v(i)));
  return out;
}

Json vec_json(const std::vector<double>& v) {
  Json out = Json::array();
  for (double x : v) out.push_back(number_or_null(x));
  return out;
}

// Any two of alpha/beta/gamma (positions) or alpha2/beta2/gamma2 (squares);
// all three are accepted when they satisfy γ² = α² + 2β² (as written by
// spec_to_json).
AxisShape axis_shape_from_json(const Json& j, const std::string& path) {
  require_object(j, path);
  reject_unknown(j, {"alpha", "beta", "gamma", "alpha2", "beta2", "gamma2"}, path + ".");
  std::optional<double> sq[3];
  const char* stems[3] = {"alpha", "beta", "gamma"};
  for (int k = 0; k < 3; ++k) {
    const std::string name = stems[k];
    const bool pos = j.contains(name), squared = j.contains(name + "2");
    if (pos && squared) field_error(path + "." + name, "give either " + name + " or " + name + "2");
    if (pos) {
      const double x = number_at(j, name, path + ".");
      sq[k] = x * x;
    } else if (squared) {
      sq[k] = number_at(j, name + "2", path + ".");
    }
  }
  const int given = int(sq[0].has_value()) + int(sq[1].has_value()) + int(sq[2].has_value());
  if (given < 2) field_error(path, "two of alpha, beta, gamma are required");
  if (given == 3) {
    const double g2 = *sq[0] + 2.0 * *sq[1];
    if (std::abs(g2 - *sq[2]) > 1e-9 * std::max(1.0, std::abs(g2))) {
      field_error(path, "gamma^2 must equal alpha^2 + 2 beta^2");
    }
  }
  AxisShape out;
  if (sq[0] && sq[1]) {
    out = AxisShape{*sq[0], *sq[1]};
  } else if (sq[0] && sq[2]) {
    out = AxisShape{*sq[0], 0.5 * (*sq[2] - *sq[0])};
  } else {
    out = AxisShape{*sq[2] - 2.0 * *sq[1], *sq[1]};
  }
  if (!(out.alpha2 > 0.0)) field_error(path, "alpha^2 must be positive");
  if (!(out.beta2 > 0.0)) field_error(path, "beta^2 must be positive (gamma > alpha)");
  return out;
}

PotentialSpec shape_from_json(Family family, const Json& j) {
  const std::string path = "shape.";
  require_object(j, "shape");
  const int dim = dimension_of(family);
  ShapeParams shape;
  if (is_cusp(family)) {
    std::set<std::string> names = {"alpha", "beta"};
    if (dim == 3) names.insert("gamma");
    reject_unknown(j, names, path);
    const char* stems[3] = {"alpha", "beta", "gamma"};
    for (int k = 0; k < dim; ++k) {
      if (!j.contains(stems[k])) field_error(path + stems[k], "missing");
      const double x = number_at(j, stems[k], path);
      if (!(x > 0.0)) field_error(path + stems[k], "must be positive");
      shape.axes.push_back(AxisShape{x * x, 0.0});
    }
    return PotentialSpec::from_shape(family, shape);
  }
  std::set<std::string> couplings;
  if (dim >= 2) couplings.insert("u");
  if (dim == 3) couplings.insert({"v", "w"});
  if (j.contains("axes")) {
    std::set<std::string> allowed = couplings;
    allowed.insert("axes");
    reject_unknown(j, allowed, path);
    const Json& axes = j.at("axes");
    if (!axes.is_array() || static_cast<int>(axes.size()) != dim) {
      field_error(path + "axes", "expected an array of " + std::to_string(dim) + " axes");
    }
    for (int k = 0; k < dim; ++k) {
      shape.axes.push_back(axis_shape_from_json(axes[k], path + "axes[" + std::to_string(k) + "]"));
    }
  } else {
    Json axis = Json::object();
    for (const auto& [key, value] : j.items()) {
      if (!couplings.count(key)) axis[key] = value;
    }
    const AxisShape iso = axis_shape_from_json(axis, "shape");
    shape.axes.assign(dim, iso);
  }
  shape.u = j.contains("u") ? number_at(j, "u", path) : 0.0;
  shape.v = j.contains("v") ? number_at(j, "v", path) : 0.0;
  shape.w = j.contains("w") ? number_at(j, "w", path) : 0.0;
  return PotentialSpec::from_shape(family, shape);
}

PotentialSpec raw_from_json(Family family, const Json& j) {
  require_object(j, "raw");
  std::set<std::string> names;
  for (auto n : raw_param_names(family)) names.insert(std::string(n));
  reject_unknown(j, names, "raw.");
  RawParams raw;
  for (auto n : raw_param_names(family)) {
    const std::string key(n);
    if (!j.contains(key)) field_error("raw." + key, "missing");
    raw.set(n, number_at(j, key, "raw."));
  }
  return PotentialSpec::from_raw(family, raw);
}

bool close(double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(a)); }

int line_of(const std::string& text, std::size_t byte, int& column) {
  int line = 1;
  column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return line;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError(path.string() + ": cannot open file");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string labels_field(const Dominance& d) { return d.joined(); }

}  // namespace

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError(path.string() + ": cannot write file");
  out << text;
}

// ---------------------------------------------------------------------------
// Specs

Json spec_to_json(const PotentialSpec& spec) {
  Json j;
  j["family"] = std::string(to_string(spec.family()));
  Json raw = Json::object();
  for (auto n : raw_param_names(spec.family())) raw[std::string(n)] = spec.raw().get(n);
  j["raw"] = raw;
  const int dim = spec.dimension();
  const ShapeParams& sh = spec.shape();
  Json shape = Json::object();
  if (is_cusp(spec.family())) {
    const char* stems[3] = {"alpha", "beta", "gamma"};
    for (int k = 0; k < dim; ++k) shape[stems[k]] = std::sqrt(sh.axes[k]->alpha2);
  } else {
    Json axes = Json::array();
    for (int k = 0; k < dim; ++k) {
      if (!sh.axes[k]) {
        axes.push_back(nullptr);
        continue;
      }
      axes.push_back(Json{{"alpha2", sh.axes[k]->alpha2},
                          {"beta2", sh.axes[k]->beta2},
                          {"gamma2", sh.axes[k]->gamma2()}});
    }
    shape["axes"] = axes;
    if (dim >= 2) shape["u"] = sh.u;
    if (dim == 3) {
      shape["v"] = sh.v;
      shape["w"] = sh.w;
    }
  }
  j["shape"] = shape;
  return j;
}

PotentialSpec spec_from_json(const Json& j) {
  require_object(j, "");
  reject_unknown(j, {"family", "raw", "shape", "name", "description", "expect"}, "");
  if (!j.contains("family") || !j.at("family").is_string()) {
    field_error("family", "expected a family name string");
  }
  const Family family = parse_family(j.at("family").get<std::string>());
  const bool has_raw = j.contains("raw"), has_shape = j.contains("shape");
  if (!has_raw && !has_shape) field_error("raw", "either raw or shape is required");
  if (has_raw) {
    PotentialSpec spec = raw_from_json(family, j.at("raw"));
    if (has_shape) {
      // Written specs carry both views; the shape block may contain nulls for
      // axes without a real shape, so only compare the axes it specifies.
      Json shape = j.at("shape");
      if (!is_cusp(family) && shape.contains("axes") && shape.at("axes").is_array()) {
        for (std::size_t k = 0; k < shape.at("axes").size(); ++k) {
          const Json& ax = shape.at("axes")[k];
          if (ax.is_null()) {
            if (spec.shape().axes[k]) field_error("shape.axes", "null axis but raw has a shape");
            continue;
          }
          const AxisShape got = axis_shape_from_json(ax, "shape.axes[" + std::to_string(k) + "]");
          const auto& want = spec.shape().axes[k];
          if (!want || !close(got.alpha2, want->alpha2) || !close(got.beta2, want->beta2)) {
            field_error("shape.axes[" + std::to_string(k) + "]", "disagrees with raw");
          }
        }
      } else {
        const PotentialSpec other = shape_from_json(family, shape);
        for (auto n : raw_param_names(family)) {
          if (!close(other.raw().get(n), spec.raw().get(n))) {
            field_error("shape", "disagrees with raw." + std::string(n));
          }
        }
      }
    }
    return spec;
  }
  return shape_from_json(family, j.at("shape"));
}

Json load_json_file(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    int column = 0;
    const int line = line_of(text, e.byte == 0 ? 0 : e.byte - 1, column);
    std::ostringstream os;
    os << path.string() << ":" << line << ":" << column << ": malformed JSON ("
       << e.what() << ")";
    throw UsageError(os.str());
  }
}

PotentialSpec load_spec_file(const std::filesystem::path& path) {
  const Json j = load_json_file(path);
  try {
    return spec_from_json(j);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(path.string() + ": " + e.what());
  } catch (const Error& e) {
    throw UsageError(path.string() + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------
// Stationary points

Json stationary_to_json(const PotentialSpec& spec, const StationarySet& set) {
  Json j;
  j["spec"] = spec_to_json(spec);
  j["orbits"] = set.points.size();
  j["points"] = set.total_points();
  j["warnings"] = set.warnings;
  Json pts = Json::array();
  for (const auto& p : set.points) {
    pts.push_back(Json{{"label", p.label},
                       {"subfamily", std::string(to_string(p.subfamily))},
                       {"kind", std::string(to_string(p.kind))},
                       {"multiplicity", p.multiplicity},
                       {"location", vec_json(p.location)},
                       {"value", p.value},
                       {"hessian_eigs", vec_json(p.hessian_eigs)}});
  }
  j["stationary_points"] = pts;
  return j;
}

std::string stationary_to_csv(const StationarySet& set) {
  std::ostringstream os;
  const int dim = set.points.empty() ? 0 : static_cast<int>(set.points.front().location.size());
  os << "label,subfamily,kind,multiplicity";
  for (int k = 0; k < dim; ++k) os << ',' << kAxisNames[k];
  os << ",value";
  for (int k = 0; k < dim; ++k) os << ",eig" << k;
  os << '\n';
  for (const auto& p : set.points) {
    os << p.label << ',' << to_string(p.subfamily) << ',' << to_string(p.kind) << ','
       << p.multiplicity;
    for (int k = 0; k < dim; ++k) os << ',' << format_number(p.location(k));
    os << ',' << format_number(p.value);
    for (int k = 0; k < dim; ++k) os << ',' << format_number(p.hessian_eigs(k));
    os << '\n';
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Spectra

Json spectrum_to_json(const PotentialSpec& spec, const std::vector<GroundCandidate>& candidates,
                      double e_max) {
  Json j;
  j["spec"] = spec_to_json(spec);
  j["convention"] = "-Laplacian(psi) + V psi = E psi; E = v0 + sum_i (2 n_i + 1) omega_i, "
                    "omega_i = sqrt(h_i / 2)";
  j["e_max"] = number_or_null(e_max);
  Json wells = Json::array();
  for (const auto& c : candidates) {
    Json levels_json = Json::array();
    for (const auto& l : levels(c.well, e_max)) {
      levels_json.push_back(Json{{"n", l.quantum_numbers}, {"energy", l.energy}});
    }
    wells.push_back(Json{{"label", c.label},
                         {"multiplicity", c.multiplicity},
                         {"location", vec_json(c.well.minimum.location)},
                         {"v0", c.well.v0},
                         {"stiffnesses", vec_json(c.well.stiffnesses)},
                         {"frequencies", vec_json(c.well.frequencies)},
                         {"ground_estimate", c.ground_estimate},
                         {"confinement_margin", number_or_null(c.well.confinement_margin)},
                         {"reliable", c.well.reliable()},
                         {"levels", levels_json}});
  }
  j["wells"] = wells;
  const Dominance q = dominant_of(candidates, BoundaryKind::quantum);
  const Dominance cl = dominant_of(candidates, BoundaryKind::classical);
  j["dominant"] = Json{{"labels", q.labels}, {"energy", q.energy}, {"tie", q.tie()}};
  j["classical_dominant"] = Json{{"labels", cl.labels}, {"energy", cl.energy}, {"tie", cl.tie()}};
  return j;
}

std::string spectrum_to_csv(const std::vector<GroundCandidate>& candidates, double e_max) {
  std::ostringstream os;
  os << "label,n,energy\n";
  for (const auto& c : candidates) {
    for (const auto& l : levels(c.well, e_max)) {
      os << c.label << ',';
      for (std::size_t i = 0; i < l.quantum_numbers.size(); ++i) {
        os << (i ? ";" : "") << l.quantum_numbers[i];
      }
      os << ',' << format_number(l.energy) << '\n';
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Scans

namespace {

Json boundary_json(const CatastropheBoundary& b) {
  return Json{{"kind", std::string(to_string(b.kind))},
              {"t", b.t},
              {"location", vec_json(b.location)},
              {"label_a", b.label_a},
              {"label_b", b.label_b},
              {"gap_slope", number_or_null(b.gap_slope)},
              {"gap_at_location", number_or_null(b.gap_at_location)}};
}

}  // namespace

Json boundaries_to_json(const ScanReport& report) {
  Json j;
  j["header"] = report.header;
  j["parameters"] = report.parameters;
  j["partial"] = report.partial;
  Json list = Json::array();
  for (const auto& b : report.boundaries) list.push_back(boundary_json(b));
  j["boundaries"] = list;
  Json changes = Json::array();
  for (const auto& c : report.structure_changes) {
    changes.push_back(Json{{"t", c.t},
                           {"location", vec_json(c.location)},
                           {"before", c.before},
                           {"after", c.after}});
  }
  j["structure_changes"] = changes;
  j["warnings"] = report.warnings;
  return j;
}

Json scan_to_json(const ScanReport& report) {
  Json j = boundaries_to_json(report);
  Json samples = Json::array();
  for (const auto& s : report.samples) {
    Json cands = Json::array();
    for (const auto& c : s.candidates) {
      cands.push_back(Json{{"label", c.label},
                           {"multiplicity", c.multiplicity},
                           {"quantum", c.quantum},
                           {"classical", c.classical}});
    }
    Json sj{{"t", s.t}, {"values", vec_json(s.values)}, {"ok", s.ok}};
    if (!s.ok) sj["error"] = s.error;
    sj["quantum"] = s.quantum.labels;
    sj["classical"] = s.classical.labels;
    sj["candidates"] = cands;
    sj["signature"] = s.signature;
    samples.push_back(sj);
  }
  j["samples"] = samples;
  return j;
}

std::string scan_to_csv(const ScanReport& report) {
  std::ostringstream os;
  os << "t";
  for (const auto& p : report.parameters) os << ',' << p;
  os << ",ok,quantum_label,classical_label,quantum_energies,classical_energies,error\n";
  for (const auto& s : report.samples) {
    os << format_number(s.t);
    for (double v : s.values) os << ',' << format_number(v);
    os << ',' << (s.ok ? 1 : 0) << ',' << labels_field(s.quantum) << ','
       << labels_field(s.classical) << ',';
    for (std::size_t i = 0; i < s.candidates.size(); ++i) {
      os << (i ? ";" : "") << s.candidates[i].label << '=' << format_number(s.candidates[i].quantum);
    }
    os << ',';
    for (std::size_t i = 0; i < s.candidates.size(); ++i) {
      os << (i ? ";" : "") << s.candidates[i].label << '='
         << format_number(s.candidates[i].classical);
    }
    os << ',';
    if (!s.ok) {
      std::string e = s.error;
      for (char& ch : e) {
        if (ch == ',' || ch == '\n') ch = ' ';
      }
      os << e;
    }
    os << '\n';
  }
  return os.str();
}

std::string raster_to_csv(const SubdomainMap& map, BoundaryKind kind) {
  const auto& labels = kind == BoundaryKind::quantum ? map.quantum : map.classical;
  std::ostringstream os;
  os << map.y.name << '\\' << map.x.name;
  for (double x : map.xs) os << ',' << format_number(x);
  os << '\n';
  const int n = map.resolution;
  for (int iy = 0; iy < n; ++iy) {
    os << format_number(map.ys[iy]);
    for (int ix = 0; ix < n; ++ix) os << ',' << labels[iy * n + ix];
    os << '\n';
  }
  return os.str();
}

Json polylines_to_json(const SubdomainMap& map) {
  Json j;
  j["x"] = Json{{"name", map.x.name}, {"lo", map.x.lo}, {"hi", map.x.hi}};
  j["y"] = Json{{"name", map.y.name}, {"lo", map.y.lo}, {"hi", map.y.hi}};
  j["resolution"] = map.resolution;
  j["partial"] = map.partial;
  Json lines = Json::array();
  for (const auto& pl : map.polylines) {
    Json verts = Json::array();
    for (const auto& v : pl.line.vertices) verts.push_back(Json::array({v[0], v[1]}));
    lines.push_back(Json{{"kind", std::string(to_string(pl.kind))},
                         {"label_a", pl.label_a},
                         {"label_b", pl.label_b},
                         {"closed", pl.line.closed},
                         {"vertices", verts}});
  }
  j["polylines"] = lines;
  return j;
}

// ---------------------------------------------------------------------------
// Eigen-solutions

std::string eigen_dump_csv(const EigenSolution& solution, const PotentialFn& potential) {
  std::ostringstream os;
  const int dim = solution.grid.dim;
  for (int k = 0; k < dim; ++k) os << (k ? "," : "") << kAxisNames[k];
  os << ",V";
  for (Eigen::Index i = 0; i < solution.states.cols(); ++i) os << ",psi" << i;
  os << '\n';
  for (std::size_t n = 0; n < solution.unknowns(); ++n) {
    const Point p = solution.node(n);
    for (int k = 0; k < dim; ++k) os << (k ? "," : "") << format_number(p(k));
    os << ',' << format_number(potential(p));
    for (Eigen::Index i = 0; i < solution.states.cols(); ++i) {
      os << ',' << format_number(solution.states(static_cast<Eigen::Index>(n), i));
    }
    os << '\n';
  }
  return os.str();
}

Json eigen_to_json(const EigenSolution& solution) {
  Json grid;
  grid["dim"] = solution.grid.dim;
  Json axes = Json::array();
  for (int k = 0; k < solution.grid.dim; ++k) {
    axes.push_back(Json{{"half_width", solution.grid.half_width[k]},
                        {"points", solution.grid.points[k]},
                        {"spacing", solution.grid.spacing(k)}});
  }
  grid["axes"] = axes;
  return Json{{"grid", grid},
              {"energies", vec_json(solution.energies)},
              {"residuals", vec_json(solution.residuals)},
              {"converged", solution.converged},
              {"iterations", solution.iterations},
              {"warnings", solution.warnings}};
}

// ---------------------------------------------------------------------------
// Potential slices

void PlaneWindow::validate(int dimension) const {
  if (!(bounds[1] > bounds[0]) || !(bounds[3] > bounds[2])) {
    throw UsageError("window must have xmax > xmin and ymax > ymin");
  }
  for (double b : bounds) {
    if (!std::isfinite(b)) throw UsageError("window bounds must be finite");
  }
  if (points < 2) throw UsageError("a window needs at least 2 points per axis");
  if (dimension < 2) throw UsageError("plane dumps need a 2D or 3D potential");
  if (axes[0] == axes[1] || axes[0] < 0 || axes[1] < 0 || axes[0] >= dimension ||
      axes[1] >= dimension) {
    throw UsageError("plane axes do not exist for this dimension");
  }
}

double PlaneWindow::coord(int axis, int i) const {
  const double lo = bounds[2 * axis], hi = bounds[2 * axis + 1];
  if (i == points - 1) return hi;
  return lo + (hi - lo) * i / (points - 1);
}

PlaneGrid sample_plane(const PotentialSpec& spec, const PlaneWindow& window) {
  window.validate(spec.dimension());
  PlaneGrid grid;
  for (int i = 0; i < window.points; ++i) {
    grid.xs.push_back(window.coord(0, i));
    grid.ys.push_back(window.coord(1, i));
  }
  Point p = Point::Constant(spec.dimension(), window.slice);
  grid.values.reserve(static_cast<std::size_t>(window.points) * window.points);
  for (double y : grid.ys) {
    for (double x : grid.xs) {
      p(window.axes[0]) = x;
      p(window.axes[1]) = y;
      double v = evaluate(spec, p);
      if (window.clip) {
        const bool keep = window.clip_inclusive ? v <= *window.clip : v < *window.clip;
        if (!keep) v = std::numeric_limits<double>::quiet_NaN();
      }
      grid.values.push_back(v);
    }
  }
  return grid;
}

std::string plane_to_csv(const PlaneGrid& grid) {
  std::ostringstream os;
  os << "y\\x";
  for (double x : grid.xs) os << ',' << format_number(x);
  os << '\n';
  for (std::size_t iy = 0; iy < grid.ys.size(); ++iy) {
    os << format_number(grid.ys[iy]);
    for (std::size_t ix = 0; ix < grid.xs.size(); ++ix) {
      os << ',' << format_number(grid.values[iy * grid.xs.size() + ix]);
    }
    os << '\n';
  }
  return os.str();
}

PlaneGrid plane_from_csv(const std::string& text) {
  auto parse = [](const std::string& cell) {
    if (cell == "nan") return std::numeric_limits<double>::quiet_NaN();
    if (cell == "inf") return std::numeric_limits<double>::infinity();
    if (cell == "-inf") return -std::numeric_limits<double>::infinity();
    double x = 0;
    const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), x);
    if (res.ec != std::errc() || res.ptr != cell.data() + cell.size()) {
      throw UsageError("bad number '" + cell + "' in grid CSV");
    }
    return x;
  };
  PlaneGrid grid;
  std::istringstream in(text);
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (header) {
      for (std::size_t i = 1; i < cells.size(); ++i) grid.xs.push_back(parse(cells[i]));
      header = false;
      continue;
    }
    if (cells.size() != grid.xs.size() + 1) throw UsageError("ragged row in grid CSV");
    grid.ys.push_back(parse(cells[0]));
    for (std::size_t i = 1; i < cells.size(); ++i) grid.values.push_back(parse(cells[i]));
  }
  return grid;
}

}  // namespace polydots

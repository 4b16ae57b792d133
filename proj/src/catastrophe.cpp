#include "polydots/catastrophe.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "polydots/errors.hpp"
#include "polydots/parallel.hpp"

namespace polydots {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double energy_of(const CandidateEnergy& c, BoundaryKind kind) {
  return kind == BoundaryKind::quantum ? c.quantum : c.classical;
}

const Dominance& dominance_of(const Sample& s, BoundaryKind kind) {
  return kind == BoundaryKind::quantum ? s.quantum : s.classical;
}

// Gap E_a − E_b from one evaluated sample. A missing label counts as +∞;
// when both are missing, a (the low-side winner) is taken to have lost.
double gap_from(const Sample& s, const std::string& a, const std::string& b, BoundaryKind kind) {
  if (!s.ok) return std::numeric_limits<double>::quiet_NaN();
  const CandidateEnergy* ca = s.candidate(a);
  const CandidateEnergy* cb = s.candidate(b);
  if (!ca) return kInf;
  if (!cb) return -kInf;
  return energy_of(*ca, kind) - energy_of(*cb, kind);
}

int sign_of(double g) { return g > 0 ? 1 : (g < 0 ? -1 : 0); }

// Picks the competing pair across a label change: a member that loses
// dominance and one that gains it, falling back to the first entries.
std::pair<std::string, std::string> competing_pair(const Dominance& lo, const Dominance& hi) {
  std::vector<std::string> lost, gained;
  std::set_difference(lo.labels.begin(), lo.labels.end(), hi.labels.begin(), hi.labels.end(),
                      std::back_inserter(lost));
  std::set_difference(hi.labels.begin(), hi.labels.end(), lo.labels.begin(), lo.labels.end(),
                      std::back_inserter(gained));
  const std::string a = lost.empty() ? lo.labels.front() : lost.front();
  const std::string b = gained.empty() ? hi.labels.front() : gained.front();
  return {a, b};
}

bool cancelled(const ScanOptions& options) {
  return options.cancel && options.cancel->load(std::memory_order_relaxed);
}

std::string signature_of(const StationarySet& set) {
  std::vector<std::string> parts;
  for (const auto& p : set.points) {
    parts.push_back(p.label + "=" + std::string(to_string(p.kind)));
  }
  std::sort(parts.begin(), parts.end());
  std::string out;
  for (const auto& s : parts) {
    if (!out.empty()) out += ';';
    out += s;
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Paths

void ParamPath::validate() const {
  if (steps < 2) throw UsageError("a path needs at least 2 steps");
  if (varied.empty()) throw UsageError("a path needs at least one varied parameter");
  for (const auto& v : varied) {
    if (!PotentialSpec::is_raw_param(base.family(), v.name) &&
        !PotentialSpec::is_shape_param(base.family(), v.name)) {
      throw UsageError("parameter '" + v.name + "' does not exist for " +
                       std::string(to_string(base.family())));
    }
    if (!(v.start != v.end) || !std::isfinite(v.start) || !std::isfinite(v.end)) {
      throw UsageError("parameter '" + v.name + "' needs finite, distinct start and end");
    }
  }
}

std::vector<double> ParamPath::values_at(double t) const {
  std::vector<double> out;
  out.reserve(varied.size());
  for (const auto& v : varied) out.push_back(v.start + t * (v.end - v.start));
  return out;
}

PotentialSpec ParamPath::at(double t) const {
  PotentialSpec spec = base;
  const auto values = values_at(t);
  for (std::size_t i = 0; i < varied.size(); ++i) spec = spec.with_param(varied[i].name, values[i]);
  return spec;
}

bool ParamPath::shape_space() const {
  return std::any_of(varied.begin(), varied.end(), [&](const VariedParam& v) {
    return PotentialSpec::is_shape_param(base.family(), v.name);
  });
}

namespace {

std::string shortest(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

}  // namespace

std::string ParamPath::header() const {
  std::ostringstream os;
  os << to_string(base.family()) << ": linear in " << (shape_space() ? "shape" : "raw")
     << " space, " << steps << " steps;";
  for (const auto& v : varied) {
    os << ' ' << v.name << " from " << shortest(v.start) << " to " << shortest(v.end);
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Samples

const CandidateEnergy* Sample::candidate(const std::string& label) const {
  for (const auto& c : candidates) {
    if (c.label == label) return &c;
  }
  return nullptr;
}

namespace {

Sample analyse(const PotentialSpec& spec) {
  Sample s;
  try {
    const StationarySet set = stationary_points(spec);
    s.warnings = set.warnings;
    s.signature = signature_of(set);
    const auto cands = ground_candidates(spec, set);
    for (const auto& c : cands) {
      s.candidates.push_back(
          CandidateEnergy{c.label, c.multiplicity, c.ground_estimate, c.classical_value});
    }
    s.quantum = dominant_of(cands, BoundaryKind::quantum);
    s.classical = dominant_of(cands, BoundaryKind::classical);
    s.ok = true;
  } catch (const Error& e) {
    s.ok = false;
    s.error = std::string(to_string(e.code())) + ": " + e.what();
  }
  return s;
}

}  // namespace

Sample evaluate_sample(const ParamPath& path, double t) {
  Sample s;
  try {
    s = analyse(path.at(t));
  } catch (const Error& e) {
    s.ok = false;
    s.error = std::string(to_string(e.code())) + ": " + e.what();
  }
  s.t = t;
  s.values = path.values_at(t);
  return s;
}

double candidate_gap(const ParamPath& path, double t, const std::string& label_a,
                     const std::string& label_b, BoundaryKind kind) {
  return gap_from(evaluate_sample(path, t), label_a, label_b, kind);
}

// ---------------------------------------------------------------------------
// Root finding

double bisect_root(const std::function<double(double)>& f, double lo, double hi, double xtol,
                   double ftol) {
  double flo = f(lo);
  double fhi = f(hi);
  if (std::abs(flo) <= ftol) return lo;
  if (std::abs(fhi) <= ftol) return hi;
  if (std::isnan(flo) || std::isnan(fhi) || sign_of(flo) == sign_of(fhi)) {
    throw UsageError("bisect_root: the bracket does not change sign");
  }
  while (std::abs(hi - lo) > xtol) {
    double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    double fm = f(mid);
    if (std::isnan(fm)) {
      // Step off an isolated singular point; if the bracket has shrunk onto
      // it, the singular point is the answer.
      mid = lo + 0.4 * (hi - lo);
      fm = f(mid);
      if (std::isnan(fm)) return 0.5 * (lo + hi);
    }
    if (std::abs(fm) <= ftol || fm == 0.0) return mid;
    if (sign_of(fm) == sign_of(flo)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
      fhi = fm;
    }
  }
  if (std::isfinite(flo) && std::isfinite(fhi)) {
    const double secant = lo - flo * (hi - lo) / (fhi - flo);
    if (secant >= std::min(lo, hi) && secant <= std::max(lo, hi)) return secant;
  }
  return 0.5 * (lo + hi);
}

double lemma1_boundary() {
  return bisect_root([](double xi) { return xi * xi * (2.0 + xi * xi) - 0.125; }, 0.0, 1.0,
                     1e-15);
}

// ---------------------------------------------------------------------------
// Boundaries

CatastropheBoundary locate_boundary(const ParamPath& path, const Sample& lo, const Sample& hi,
                                    BoundaryKind kind, const ScanOptions& options) {
  if (!lo.ok || !hi.ok) throw UsageError("locate_boundary needs two analysed samples");
  const Dominance& dlo = dominance_of(lo, kind);
  const Dominance& dhi = dominance_of(hi, kind);
  if (dlo.labels == dhi.labels) {
    throw UsageError("locate_boundary: both ends have the same dominant label");
  }
  const auto [a, b] = competing_pair(dlo, dhi);
  auto gap = [&, a = a, b = b](double t) { return candidate_gap(path, t, a, b, kind); };

  // Presample the bracket: a second sign change means the scan is too coarse.
  constexpr int kPresamples = 8;
  int changes = 0;
  int prev = sign_of(gap_from(lo, a, b, kind));
  for (int i = 1; i <= kPresamples; ++i) {
    const double t = lo.t + (hi.t - lo.t) * i / kPresamples;
    const double g = i == kPresamples ? gap_from(hi, a, b, kind) : gap(t);
    const int sg = sign_of(g);
    if (sg != 0 && prev != 0 && sg != prev) ++changes;
    if (sg != 0) prev = sg;
  }
  if (changes > 1) {
    std::ostringstream os;
    os << "gap " << a << " - " << b << " changes sign " << changes << " times in ["
       << path.values_at(lo.t).front() << ", " << path.values_at(hi.t).front()
       << "]; rescan with more steps";
    throw SplitBracket(os.str());
  }

  const double range = path.varied.front().end - path.varied.front().start;
  const double t_tol = options.width_tol / std::abs(range);
  CatastropheBoundary out;
  out.kind = kind;
  out.label_a = a;
  out.label_b = b;
  out.t = bisect_root(gap, lo.t, hi.t, t_tol, options.gap_tol);
  out.location = path.values_at(out.t);
  out.gap_at_location = gap(out.t);
  const double dt = std::max(1e-7, 1e-4 * std::abs(hi.t - lo.t));
  const double gp = gap(out.t + dt);
  const double gm = gap(out.t - dt);
  out.gap_slope = (gp - gm) / (2.0 * dt * range);
  return out;
}

namespace {

StructureChange locate_structure_change(const ParamPath& path, const Sample& lo,
                                        const Sample& hi, const ScanOptions& options) {
  const double range = path.varied.front().end - path.varied.front().start;
  const double t_tol = options.width_tol / std::abs(range);
  double tl = lo.t, th = hi.t;
  std::string after = hi.ok ? hi.signature : hi.error;
  while (th - tl > t_tol) {
    const double mid = 0.5 * (tl + th);
    if (mid == tl || mid == th) break;
    const Sample s = evaluate_sample(path, mid);
    if (s.ok && s.signature == lo.signature) {
      tl = mid;
    } else {
      th = mid;
      after = s.ok ? s.signature : s.error;
    }
  }
  StructureChange out;
  out.t = 0.5 * (tl + th);
  out.location = path.values_at(out.t);
  out.before = lo.signature;
  out.after = after;
  return out;
}

}  // namespace

ScanReport scan_line(const ParamPath& path, const ScanOptions& options) {
  path.validate();
  ScanReport report;
  report.header = path.header();
  for (const auto& v : path.varied) report.parameters.push_back(v.name);
  report.samples.resize(static_cast<std::size_t>(path.steps));
  std::vector<char> done(report.samples.size(), 0);
  parallel_for(report.samples.size(), options.workers, [&](std::size_t i) {
    if (cancelled(options)) return;
    report.samples[i] = evaluate_sample(path, path.t_of(static_cast<int>(i)));
    done[i] = 1;
  });
  if (std::find(done.begin(), done.end(), 0) != done.end()) {
    report.partial = true;
    std::vector<Sample> kept;
    for (std::size_t i = 0; i < done.size(); ++i) {
      if (done[i]) kept.push_back(std::move(report.samples[i]));
    }
    report.samples = std::move(kept);
    report.warnings.push_back("scan interrupted; samples and boundaries are incomplete");
    return report;
  }

  const Sample* prev = nullptr;
  for (const Sample& s : report.samples) {
    if (!s.ok) {
      report.warnings.push_back("sample t=" + std::to_string(s.t) + " failed: " + s.error);
      continue;
    }
    if (prev) {
      for (BoundaryKind kind : {BoundaryKind::quantum, BoundaryKind::classical}) {
        if (dominance_of(*prev, kind).labels != dominance_of(s, kind).labels) {
          report.boundaries.push_back(locate_boundary(path, *prev, s, kind, options));
        }
      }
      if (prev->signature != s.signature) {
        report.structure_changes.push_back(locate_structure_change(path, *prev, s, options));
      }
    }
    prev = &s;
  }
  std::stable_sort(report.boundaries.begin(), report.boundaries.end(),
                   [](const CatastropheBoundary& x, const CatastropheBoundary& y) {
                     return x.t < y.t;
                   });
  // A sample sitting exactly on a crossing (a tie) brackets the same
  // boundary from both sides; keep one.
  const double t_tol =
      10.0 * options.width_tol / std::abs(path.varied.front().end - path.varied.front().start);
  std::vector<CatastropheBoundary> unique;
  for (auto& b : report.boundaries) {
    const bool dup = std::any_of(unique.begin(), unique.end(), [&](const CatastropheBoundary& u) {
      return u.kind == b.kind && std::abs(u.t - b.t) <= t_tol &&
             std::minmax(u.label_a, u.label_b) == std::minmax(b.label_a, b.label_b);
    });
    if (!dup) unique.push_back(std::move(b));
  }
  report.boundaries = std::move(unique);
  return report;
}

// ---------------------------------------------------------------------------
// Rasters

std::string error_label(const std::string& error) {
  return "error:" + error.substr(0, error.find(':'));
}

SubdomainMap scan_grid(const PotentialSpec& base, const GridAxis& x, const GridAxis& y,
                       int resolution, const ScanOptions& options) {
  if (resolution < 2) throw UsageError("scan_grid needs resolution >= 2");
  for (const GridAxis* ax : {&x, &y}) {
    if (!PotentialSpec::is_raw_param(base.family(), ax->name) &&
        !PotentialSpec::is_shape_param(base.family(), ax->name)) {
      throw UsageError("parameter '" + ax->name + "' does not exist for " +
                       std::string(to_string(base.family())));
    }
    if (!(ax->lo != ax->hi)) throw UsageError("grid axis '" + ax->name + "' has zero width");
  }
  if (x.name == y.name) throw UsageError("grid axes must be different parameters");

  SubdomainMap map;
  map.x = x;
  map.y = y;
  map.resolution = resolution;
  // Same formula as ParamPath::values_at so rasters and line scans agree bitwise.
  for (int i = 0; i < resolution; ++i) {
    const double t = static_cast<double>(i) / (resolution - 1);
    map.xs.push_back(x.lo + t * (x.hi - x.lo));
    map.ys.push_back(y.lo + t * (y.hi - y.lo));
  }
  const std::size_t cells = static_cast<std::size_t>(resolution) * resolution;
  std::vector<Sample> samples(cells);
  std::vector<char> done(cells, 0);
  parallel_for(cells, options.workers, [&](std::size_t idx) {
    if (cancelled(options)) return;
    const std::size_t ix = idx % resolution;
    const std::size_t iy = idx / resolution;
    try {
      samples[idx] = analyse(base.with_param(x.name, map.xs[ix]).with_param(y.name, map.ys[iy]));
    } catch (const Error& e) {
      samples[idx].ok = false;
      samples[idx].error = std::string(to_string(e.code())) + ": " + e.what();
    }
    samples[idx].values = {map.xs[ix], map.ys[iy]};
    done[idx] = 1;
  });
  map.partial = std::find(done.begin(), done.end(), 0) != done.end();

  map.quantum.resize(cells);
  map.classical.resize(cells);
  map.signature.resize(cells);
  for (std::size_t i = 0; i < cells; ++i) {
    const Sample& s = samples[i];
    if (!done[i]) {
      map.quantum[i] = map.classical[i] = map.signature[i] = "cancelled";
    } else if (!s.ok) {
      map.quantum[i] = map.classical[i] = map.signature[i] = error_label(s.error);
    } else {
      map.quantum[i] = s.quantum.joined();
      map.classical[i] = s.classical.joined();
      map.signature[i] = s.signature;
    }
  }

  // One zero contour of E_a − E_b per pair of labels that meet in the raster,
  // restricted to cells whose corners carry only those labels (or their
  // tie, which marks a node sitting on the boundary itself).
  const int n = resolution;
  auto members = [](const std::string& joined) {
    std::set<std::string> out;
    std::size_t start = 0;
    while (true) {
      const std::size_t bar = joined.find('|', start);
      out.insert(joined.substr(start, bar - start));
      if (bar == std::string::npos) break;
      start = bar + 1;
    }
    return out;
  };
  auto subset = [](const std::set<std::string>& x, const std::set<std::string>& y) {
    return std::includes(y.begin(), y.end(), x.begin(), x.end());
  };
  for (BoundaryKind kind : {BoundaryKind::quantum, BoundaryKind::classical}) {
    const auto& labels = kind == BoundaryKind::quantum ? map.quantum : map.classical;
    std::set<std::pair<std::string, std::string>> pairs;
    // Pairs are collected over cell corners, not edges: when the boundary
    // runs through the nodes themselves, the two pure labels only meet
    // across cell diagonals.
    for (int iy = 0; iy + 1 < n; ++iy) {
      for (int ix = 0; ix + 1 < n; ++ix) {
        std::size_t corners[4];
        bool all_ok = true;
        for (int c = 0; c < 4; ++c) {
          corners[c] = (iy + c / 2) * n + ix + c % 2;
          all_ok = all_ok && samples[corners[c]].ok;
        }
        if (!all_ok) continue;
        for (int c0 = 0; c0 < 4; ++c0) {
          for (int c1 = c0 + 1; c1 < 4; ++c1) {
            const std::string& l0 = labels[corners[c0]];
            const std::string& l1 = labels[corners[c1]];
            if (l0 == l1) continue;
            const auto m0 = members(l0), m1 = members(l1);
            if (subset(m0, m1) || subset(m1, m0)) continue;  // one side is a tie on the boundary
            pairs.insert(std::minmax(l0, l1));
          }
        }
      }
    }
    for (const auto& [la, lb] : pairs) {
      // Energy of a tie set is that of its first member.
      const std::string a = la.substr(0, la.find('|'));
      const std::string b = lb.substr(0, lb.find('|'));
      std::set<std::string> allowed = members(la);
      allowed.merge(members(lb));
      std::vector<double> field(cells, std::numeric_limits<double>::quiet_NaN());
      for (std::size_t i = 0; i < cells; ++i) {
        const double g = gap_from(samples[i], a, b, kind);
        if (std::isfinite(g)) field[i] = g;
      }
      auto in_pair = [&](int ix, int iy) {
        bool mixed = false;
        const std::string& first = labels[iy * n + ix];
        for (int c = 0; c < 4; ++c) {
          const std::string& l = labels[(iy + c / 2) * n + ix + c % 2];
          if (!samples[(iy + c / 2) * n + ix + c % 2].ok || !subset(members(l), allowed)) {
            return false;
          }
          mixed = mixed || l != first;
        }
        return mixed;
      };
      for (Polyline& line : zero_contours(map.xs, map.ys, field, in_pair)) {
        map.polylines.push_back(LabelPolyline{kind, la, lb, std::move(line)});
      }
    }
  }
  return map;
}

}  // namespace polydots

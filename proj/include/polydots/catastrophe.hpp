#pragma once

#include <array>
#include <atomic>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "polydots/contour.hpp"
#include "polydots/spectra.hpp"

namespace polydots {

struct VariedParam {
  std::string name;
  double start = 0;
  double end = 0;
};

/// Straight path t ∈ [0, 1] through parameter space. Each varied parameter
/// moves linearly from start to end; raw names move in raw space, shape
/// names in shape space (see PotentialSpec::with_param).
struct ParamPath {
  PotentialSpec base;
  std::vector<VariedParam> varied;
  int steps = 2;

  void validate() const;
  double t_of(int step) const { return static_cast<double>(step) / (steps - 1); }
  std::vector<double> values_at(double t) const;
  PotentialSpec at(double t) const;
  bool shape_space() const;
  /// One-line description of the interpolation, written into reports.
  std::string header() const;
};

struct CandidateEnergy {
  std::string label;
  int multiplicity = 1;
  double quantum = 0;    // harmonic ground estimate
  double classical = 0;  // depth of the minimum
};

struct Sample {
  double t = 0;
  std::vector<double> values;
  bool ok = false;
  std::string error;  // "<code>: <message>" when !ok
  std::vector<CandidateEnergy> candidates;
  Dominance quantum;
  Dominance classical;
  /// Labels and kinds of every stationary orbit; changes mark a
  /// restructuring of the landscape (orbits appearing or changing kind).
  std::string signature;
  std::vector<std::string> warnings;

  const CandidateEnergy* candidate(const std::string& label) const;
};

struct CatastropheBoundary {
  BoundaryKind kind = BoundaryKind::quantum;
  double t = 0;
  std::vector<double> location;
  std::string label_a;  // dominant on the low-t side
  std::string label_b;  // dominant on the high-t side
  /// d(E_a − E_b)/d(first varied parameter) at the crossing.
  double gap_slope = 0;
  double gap_at_location = 0;
};

struct StructureChange {
  double t = 0;
  std::vector<double> location;
  std::string before;
  std::string after;
};

struct ScanOptions {
  int workers = 1;
  double gap_tol = 1e-10;
  double width_tol = 1e-12;
  /// Polled between samples; when set the report is returned partial.
  const std::atomic<bool>* cancel = nullptr;
};

struct ScanReport {
  std::string header;
  std::vector<std::string> parameters;
  std::vector<Sample> samples;
  std::vector<CatastropheBoundary> boundaries;
  std::vector<StructureChange> structure_changes;
  std::vector<std::string> warnings;
  bool partial = false;
};

/// Stationary enumeration, candidates and both dominance decisions at one
/// point of the path. Library errors are recorded on the sample.
Sample evaluate_sample(const ParamPath& path, double t);

ScanReport scan_line(const ParamPath& path, const ScanOptions& options = {});

/// Refines the crossing between two adjacent samples with different
/// dominant labels. The gap E_a − E_b is negative at `lo` and positive at
/// `hi`; a label absent from the landscape counts as +∞. Throws SplitBracket
/// when presampling sees more than one sign change.
CatastropheBoundary locate_boundary(const ParamPath& path, const Sample& lo, const Sample& hi,
                                    BoundaryKind kind, const ScanOptions& options = {});

/// Signed gap E_a − E_b of one kind at path position t.
double candidate_gap(const ParamPath& path, double t, const std::string& label_a,
                     const std::string& label_b, BoundaryKind kind);

/// Root of a scalar function bracketed by [lo, hi] (opposite signs), by
/// bisection to |f| < ftol or width < xtol, finished with a secant step.
double bisect_root(const std::function<double(double)>& f, double lo, double hi,
                   double xtol = 1e-12, double ftol = 0.0);

/// Lemma-1 existence boundary ξ*: root of ξ²(2+ξ²) − 1/8.
double lemma1_boundary();

struct GridAxis {
  std::string name;
  double lo = 0;
  double hi = 0;
};

struct LabelPolyline {
  BoundaryKind kind = BoundaryKind::quantum;
  std::string label_a;
  std::string label_b;
  Polyline line;
};

/// Raster cell label used when a cell could not be analysed.
std::string error_label(const std::string& error);

struct SubdomainMap {
  GridAxis x, y;
  int resolution = 0;
  std::vector<double> xs, ys;
  /// Row-major [iy][ix] dominant labels ("a|b" for ties).
  std::vector<std::string> quantum, classical, signature;
  std::vector<LabelPolyline> polylines;
  bool partial = false;
};

SubdomainMap scan_grid(const PotentialSpec& base, const GridAxis& x, const GridAxis& y,
                       int resolution, const ScanOptions& options = {});

}  // namespace polydots

#pragma once

#include <array>
#include <filesystem>
#include <string>

#include "json.hpp"
#include "polydots/catastrophe.hpp"
#include "polydots/oracle.hpp"

namespace polydots {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Specs
//
// {"family": "butterfly2d", "raw": {"a": ..., ...}, "shape": {...}}
//
// Either side may be omitted on input. Shape blocks:
//   cusp:      {"alpha": 1.4, "beta": 1}              (axis positions)
//   butterfly: {"axes": [{"alpha": 1, "gamma": 1.9}, ...], "u": ..., "v": ..., "w": ...}
//              or the isotropic shorthand {"alpha": 1, "gamma": 1.9, "u": ...}
// Each butterfly axis takes any two of alpha/beta/gamma (positions) or
// alpha2/beta2/gamma2 (squares). When both blocks are present, raw wins and
// the shape block must agree with it.

Json spec_to_json(const PotentialSpec& spec);
/// Throws UsageError naming the offending field.
PotentialSpec spec_from_json(const Json& j);
/// Parses a spec file; diagnostics carry "file:line:column" or the field path.
PotentialSpec load_spec_file(const std::filesystem::path& path);
Json load_json_file(const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Reports

Json stationary_to_json(const PotentialSpec& spec, const StationarySet& set);
std::string stationary_to_csv(const StationarySet& set);

Json spectrum_to_json(const PotentialSpec& spec, const std::vector<GroundCandidate>& candidates,
                      double e_max);
std::string spectrum_to_csv(const std::vector<GroundCandidate>& candidates, double e_max);

Json boundaries_to_json(const ScanReport& report);
Json scan_to_json(const ScanReport& report);
std::string scan_to_csv(const ScanReport& report);

/// Label raster as a CSV matrix: header row of x values, one row per y.
std::string raster_to_csv(const SubdomainMap& map, BoundaryKind kind);
Json polylines_to_json(const SubdomainMap& map);

/// Columns x[,y[,z]], V, psi0, ..., one row per interior node.
std::string eigen_dump_csv(const EigenSolution& solution, const PotentialFn& potential);
Json eigen_to_json(const EigenSolution& solution);

/// Sampled V on a rectangular window of a coordinate plane.
struct PlaneWindow {
  std::array<double, 4> bounds{-2, 2, -2, 2};  // xmin, xmax, ymin, ymax
  int points = 81;                             // nodes per axis, endpoints included
  std::array<int, 2> axes{0, 1};               // coordinates spanned by the plane
  double slice = 0;                            // value of the remaining coordinate (3D)
  /// Values above the clip level are written as "nan".
  std::optional<double> clip;
  bool clip_inclusive = true;  // keep V ≤ clip (true) or V < clip (false)

  void validate(int dimension) const;
  double coord(int axis, int i) const;
};

struct PlaneGrid {
  std::vector<double> xs, ys;
  std::vector<double> values;  // row-major [iy][ix]; NaN where clipped
};

PlaneGrid sample_plane(const PotentialSpec& spec, const PlaneWindow& window);
std::string plane_to_csv(const PlaneGrid& grid);
/// Inverse of plane_to_csv, used by tests and downstream tooling.
PlaneGrid plane_from_csv(const std::string& text);

/// Shortest decimal that round-trips the double ("nan", "inf", "-inf" for
/// non-finite values).
std::string format_number(double x);

void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace polydots

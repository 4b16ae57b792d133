#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "polydots/potentials.hpp"

namespace polydots {

enum class Subfamily { origin, axis_x, axis_y, axis_z, plane_xy, plane_xz, plane_yz, bulk };
enum class PointKind { minimum, maximum, saddle, degenerate };

std::string_view to_string(Subfamily subfamily);
std::string_view to_string(PointKind kind);

/// One sign orbit of stationary points. `location` is the representative with
/// non-negative coordinates; `multiplicity` counts the orbit members.
struct StationaryPoint {
  Point location;
  Subfamily subfamily = Subfamily::origin;
  double value = 0;
  Vec hessian_eigs;  // ascending
  PointKind kind = PointKind::degenerate;
  int multiplicity = 1;
  /// Stable name of the branch, e.g. "origin", "x:gamma", "xy:-", "xyz:+".
  std::string label;
};

struct StationarySet {
  std::vector<StationaryPoint> points;  // sorted by value ascending
  std::vector<std::string> warnings;

  int total_points() const;
  const StationaryPoint* find(std::string_view label) const;
};

/// minimum iff all eigenvalues > tol, maximum iff all < −tol, degenerate iff
/// any |λ| ≤ tol, with tol = 1e-9·max|λ|.
PointKind classify(const Vec& hessian_eigs);

/// Builds a classified stationary point at `location` (any orbit member).
StationaryPoint make_stationary_point(const PotentialSpec& spec, const Point& location,
                                      std::string label);

/// All members of the sign orbit of a representative.
std::vector<Point> orbit_members(const Point& representative);

Subfamily subfamily_of(const Point& location);

/// Every stationary orbit in closed form: origin, on-axis roots, planar and
/// bulk off-axis roots. Axes without a real shape are skipped with a warning.
StationarySet stationary_points(const PotentialSpec& spec);

/// Squared on-axis radii X−² = α_j² ≤ X+² = γ_j² (cusp: both α_j²).
struct AxisRoots {
  double inner = 0;
  double outer = 0;
};
AxisRoots on_axis_roots(const PotentialSpec& spec, int axis);

/// Auxiliary quantities of the planar quadratic z R⁴ − (uz+1) R² + w = 0.
struct QuadraticAux {
  double w_of_u = 0;
  double z_of_u = 0;
  double uzp1 = 0;
  double disc = 0;
};
QuadraticAux quadratic_aux(double a, double b, double c, double d, double u);

struct PlanarRoot {
  double x2 = 0, y2 = 0, r2 = 0;
  int branch = -1;  // −1 for the smaller quadratic root, +1 for the larger
};

/// Off-axis roots of the planar system with quartic couplings (a, b),
/// quadratic couplings (c, d) and cross coupling u. Throws DegenerateCoupling
/// when u = 2a or u = 2b.
std::vector<PlanarRoot> planar_roots(double a, double b, double c, double d, double u);
std::vector<PlanarRoot> off_axis_roots_2d(const PotentialSpec& spec);

struct SpatialRoot {
  double x2 = 0, y2 = 0, z2 = 0, r2 = 0;
  Subfamily subfamily = Subfamily::bulk;
  int branch = -1;
};

/// Planar roots of each coordinate plane followed by the bulk roots of the
/// 3×3 linear system. Throws DegenerateCoupling for a singular system.
std::vector<SpatialRoot> off_axis_roots_3d(const PotentialSpec& spec);
std::vector<SpatialRoot> bulk_roots(const PotentialSpec& spec);

/// Residual of the reduced stationarity equations R⁴ − Σ_j M_ij X_j² + p_i = 0,
/// relative to the size of the terms.
double reduced_equation_residual(const PotentialSpec& spec, const Point& location);

struct Lemma1Result {
  bool real_roots = false;
  double threshold = 0;
};
/// Small-coupling isotropic case: both bulk roots are real and positive iff
/// ξ²(2+ξ²) ≤ 1/8, ξ = α/β.
Lemma1Result lemma1_reality(double xi);
/// R²± = (α²+β² ± √(β⁴ − 8α²(α²+2β²)))/3, empty when complex.
std::optional<std::pair<double, double>> small_coupling_isotropic_roots(double alpha2,
                                                                        double beta2);

struct Lemma2Result {
  bool real_roots = false;
  double bound = 0;
};
/// Large-coupling isotropic case u = v = w: roots real and positive iff
/// u ≥ √(3(p+q+s)).
Lemma2Result lemma2_reality(double u, double p, double q, double s);
/// Roots of 3R⁴ − 2uR² + (p+q+s) = 0, empty when complex.
std::optional<std::pair<double, double>> large_coupling_isotropic_roots(double u, double p,
                                                                        double q, double s);

/// Real roots of A t² + B t + C = 0, ascending. Falls back to the linear
/// root when |A| is negligible.
std::vector<double> real_quadratic_roots(double A, double B, double C);

}  // namespace polydots

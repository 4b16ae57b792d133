#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace polydots {

inline constexpr int kMaxDim = 3;

/// Small fixed-capacity vectors and matrices (no heap) for D ≤ 3.
using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxDim, 1>;
using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor,
                          kMaxDim, kMaxDim>;
using Point = Vec;

enum class Family { cusp2d, cusp3d, butterfly1d, butterfly2d, butterfly3d };

std::string_view to_string(Family family);
Family parse_family(std::string_view name);
int dimension_of(Family family);
bool is_cusp(Family family);

/// Couplings exactly as they appear in the potential formulas.
///
///   cusp2d/3d:   V = r⁴ − 2α²x² − 2β²y² [− 2γ²z²]           (alpha2, beta2, gamma2)
///   butterfly1d: V = x⁶ + a x⁴ + c x²,  a < 0 < c             (a, c)
///   butterfly2d: V = r⁶ − 3a x⁴ − 3u x²y² − 3b y⁴ + 3c x² + 3d y²
///   butterfly3d: V = r⁶ − 3a x⁴ − 3b y⁴ − 3c z⁴ − 3u x²y² − 3v x²z² − 3w y²z²
///                    + 3p x² + 3q y² + 3s z²
///
/// Fields not used by a family stay zero.
struct RawParams {
  double alpha2 = 0, beta2 = 0, gamma2 = 0;
  double a = 0, b = 0, c = 0, d = 0;
  double u = 0, v = 0, w = 0;
  double p = 0, q = 0, s = 0;

  double get(std::string_view name) const;
  void set(std::string_view name, double value);
  bool operator==(const RawParams&) const = default;
};

/// Names of the raw parameters a family uses, in canonical order.
std::span<const std::string_view> raw_param_names(Family family);

/// Per-axis shape view: the on-axis stationary radii are X−² = α², X+² = γ².
/// For cusp families beta2 is zero and the single axis root is alpha2.
struct AxisShape {
  double alpha2 = 0;
  double beta2 = 0;
  double gamma2() const { return alpha2 + 2.0 * beta2; }
  bool operator==(const AxisShape&) const = default;
};

struct ShapeParams {
  /// One entry per dimension; empty when that axis has no real shape (a² < c).
  std::vector<std::optional<AxisShape>> axes;
  double u = 0, v = 0, w = 0;

  bool complete() const;
};

/// Quadratic/quartic pair of one axis in the "a, c" convention of the
/// butterfly families: the axis polynomial is X⁶ − 3aX⁴ + 3cX².
struct AxisRaw {
  double quartic = 0;
  double quadratic = 0;
};

/// a = α²+β², c = α²γ². Throws NoRealShape when a² < c.
AxisShape raw_to_shape(AxisRaw raw, int axis = 0);
/// Requires α² > 0 and β² ≥ 0.
AxisRaw shape_to_raw(AxisShape shape);

/// Immutable description of one potential. Raw parameters are the source of
/// truth; the shape view is recomputed on construction.
class PotentialSpec {
 public:
  static PotentialSpec from_raw(Family family, const RawParams& raw);
  static PotentialSpec from_shape(Family family, const ShapeParams& shape);

  static PotentialSpec cusp2d(double alpha2, double beta2);
  static PotentialSpec cusp3d(double alpha2, double beta2, double gamma2);
  static PotentialSpec butterfly1d(double a, double c);
  static PotentialSpec butterfly2d(double a, double b, double c, double d, double u);
  static PotentialSpec butterfly3d(double a, double b, double c, double u, double v,
                                   double w, double p, double q, double s);

  Family family() const { return family_; }
  int dimension() const { return dimension_of(family_); }
  const RawParams& raw() const { return raw_; }
  const ShapeParams& shape() const { return shape_; }

  /// Per-axis coefficients in the common butterfly convention (cusp: the
  /// quadratic entry is α_j², quartic is unused).
  AxisRaw axis(int j) const;
  /// Cross coupling u_ij (xy → u, xz → v, yz → w), butterfly only.
  double coupling(int i, int j) const;

  /// Polynomial in the squared coordinates s_j = x_j²:
  ///   V = ρ^m + sᵀ Q s + qᵀ s,  ρ = Σ s_j.
  int half_degree() const { return half_degree_; }
  const Mat& quartic_form() const { return quartic_form_; }
  const Vec& quadratic_form() const { return quadratic_form_; }

  /// Reads a raw or shape parameter by name (see with_param).
  double param(std::string_view name) const;
  /// Returns a copy with one parameter replaced. Raw names (alpha2, a, u, ...)
  /// edit raw space; shape names (alpha, beta, gamma, alpha_x, gamma_z, ...)
  /// edit shape space keeping the other shape entries of that axis fixed.
  PotentialSpec with_param(std::string_view name, double value) const;
  static bool is_shape_param(Family family, std::string_view name);
  static bool is_raw_param(Family family, std::string_view name);

  bool operator==(const PotentialSpec& other) const {
    return family_ == other.family_ && raw_ == other.raw_;
  }

 private:
  PotentialSpec(Family family, const RawParams& raw);

  Family family_;
  RawParams raw_;
  ShapeParams shape_;
  int half_degree_ = 2;
  Mat quartic_form_;
  Vec quadratic_form_;
};

/// V(p), written out term by term from the raw parameters.
double evaluate(const PotentialSpec& spec, const Point& p);
Vec gradient(const PotentialSpec& spec, const Point& p);
Mat hessian(const PotentialSpec& spec, const Point& p);

/// Σ of absolute values of the gradient's monomials; the rounding floor for
/// deciding that a computed gradient is zero.
double gradient_scale(const PotentialSpec& spec, const Point& p);

Point make_point(std::initializer_list<double> coords);

}  // namespace polydots

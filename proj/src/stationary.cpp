#include "polydots/stationary.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "polydots/errors.hpp"

namespace polydots {

namespace {

constexpr double kPositivityTol = 1e-12;
constexpr std::string_view kCuspAxisRoot[] = {"alpha", "beta", "gamma"};
constexpr std::string_view kAxisChar[] = {"x", "y", "z"};

Point axis_point(int dim, int axis, double radius2) {
  Point p = Point::Zero(dim);
  p(axis) = std::sqrt(radius2);
  return p;
}

std::string plane_name(int i, int j) {
  return std::string(kAxisChar[i]) + std::string(kAxisChar[j]);
}

Subfamily plane_subfamily(int i, int j) {
  if (i == 0 && j == 1) return Subfamily::plane_xy;
  if (i == 0 && j == 2) return Subfamily::plane_xz;
  return Subfamily::plane_yz;
}

bool positive_squared(double x2, double r2) {
  return x2 > kPositivityTol * std::max(1.0, std::abs(r2));
}

}  // namespace

std::string_view to_string(Subfamily subfamily) {
  switch (subfamily) {
    case Subfamily::origin: return "origin";
    case Subfamily::axis_x: return "axis_x";
    case Subfamily::axis_y: return "axis_y";
    case Subfamily::axis_z: return "axis_z";
    case Subfamily::plane_xy: return "plane_xy";
    case Subfamily::plane_xz: return "plane_xz";
    case Subfamily::plane_yz: return "plane_yz";
    case Subfamily::bulk: return "bulk";
  }
  return "unknown";
}

std::string_view to_string(PointKind kind) {
  switch (kind) {
    case PointKind::minimum: return "minimum";
    case PointKind::maximum: return "maximum";
    case PointKind::saddle: return "saddle";
    case PointKind::degenerate: return "degenerate";
  }
  return "unknown";
}

int StationarySet::total_points() const {
  int n = 0;
  for (const auto& p : points) n += p.multiplicity;
  return n;
}

const StationaryPoint* StationarySet::find(std::string_view label) const {
  for (const auto& p : points) {
    if (p.label == label) return &p;
  }
  return nullptr;
}

PointKind classify(const Vec& eigs) {
  const double tol = 1e-9 * eigs.cwiseAbs().maxCoeff();
  bool all_pos = true;
  bool all_neg = true;
  for (Eigen::Index i = 0; i < eigs.size(); ++i) {
    if (std::abs(eigs(i)) <= tol) return PointKind::degenerate;
    all_pos = all_pos && eigs(i) > tol;
    all_neg = all_neg && eigs(i) < -tol;
  }
  if (all_pos) return PointKind::minimum;
  if (all_neg) return PointKind::maximum;
  return PointKind::saddle;
}

Subfamily subfamily_of(const Point& location) {
  std::vector<int> nonzero;
  for (Eigen::Index j = 0; j < location.size(); ++j) {
    if (location(j) != 0.0) nonzero.push_back(static_cast<int>(j));
  }
  switch (nonzero.size()) {
    case 0: return Subfamily::origin;
    case 1: return static_cast<Subfamily>(static_cast<int>(Subfamily::axis_x) + nonzero[0]);
    case 2: return plane_subfamily(nonzero[0], nonzero[1]);
    default: return Subfamily::bulk;
  }
}

StationaryPoint make_stationary_point(const PotentialSpec& spec, const Point& location,
                                      std::string label) {
  StationaryPoint sp;
  sp.location = location.cwiseAbs();
  sp.subfamily = subfamily_of(sp.location);
  sp.value = evaluate(spec, sp.location);
  Eigen::SelfAdjointEigenSolver<Mat> eig(hessian(spec, sp.location), Eigen::EigenvaluesOnly);
  sp.hessian_eigs = eig.eigenvalues();
  sp.kind = classify(sp.hessian_eigs);
  sp.multiplicity = 1;
  for (Eigen::Index j = 0; j < sp.location.size(); ++j) {
    if (sp.location(j) != 0.0) sp.multiplicity *= 2;
  }
  sp.label = std::move(label);
  return sp;
}

std::vector<Point> orbit_members(const Point& rep) {
  std::vector<Point> members{rep};
  for (Eigen::Index j = 0; j < rep.size(); ++j) {
    if (rep(j) == 0.0) continue;
    const std::size_t n = members.size();
    for (std::size_t k = 0; k < n; ++k) {
      Point flipped = members[k];
      flipped(j) = -flipped(j);
      members.push_back(flipped);
    }
  }
  return members;
}

std::vector<double> real_quadratic_roots(double A, double B, double C) {
  const double scale = std::abs(B) + std::abs(C);
  if (std::abs(A) <= 1e-14 * scale) {
    if (B == 0.0) return {};
    return {-C / B};
  }
  const double disc = B * B - 4.0 * A * C;
  if (disc < 0.0) return {};
  const double q = -0.5 * (B + std::copysign(std::sqrt(disc), B));
  std::vector<double> roots;
  if (q == 0.0) {
    roots = {0.0, 0.0};
  } else {
    roots = {q / A, C / q};
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

AxisRoots on_axis_roots(const PotentialSpec& spec, int axis) {
  if (axis < 0 || axis >= spec.dimension()) throw UsageError("axis out of range");
  if (is_cusp(spec.family())) {
    const double r2 = spec.axis(axis).quadratic;
    return {r2, r2};
  }
  const AxisShape shape = raw_to_shape(spec.axis(axis), axis);
  return {shape.alpha2, shape.gamma2()};
}

QuadraticAux quadratic_aux(double a, double b, double c, double d, double u) {
  QuadraticAux aux;
  aux.w_of_u = c / (2.0 * a - u) + d / (2.0 * b - u);
  aux.z_of_u = 1.0 / (2.0 * a - u) + 1.0 / (2.0 * b - u);
  aux.uzp1 = u * aux.z_of_u + 1.0;
  aux.disc = aux.uzp1 * aux.uzp1 - 4.0 * aux.z_of_u * aux.w_of_u;
  return aux;
}

std::vector<PlanarRoot> planar_roots(double a, double b, double c, double d, double u) {
  const double scale = std::max({std::abs(a), std::abs(b), std::abs(u), 1e-300});
  for (auto [den, name] : {std::pair{2.0 * a - u, "2a-u"}, std::pair{2.0 * b - u, "2b-u"}}) {
    if (std::abs(den) <= 1e-12 * scale) {
      std::ostringstream os;
      os << "planar linear solve is singular: " << name << " = 0 (a=" << a << ", b=" << b
         << ", u=" << u << ")";
      throw DegenerateCoupling(name, os.str());
    }
  }
  const QuadraticAux aux = quadratic_aux(a, b, c, d, u);
  const std::vector<double> r2s = real_quadratic_roots(aux.z_of_u, -aux.uzp1, aux.w_of_u);
  std::vector<PlanarRoot> out;
  for (std::size_t k = 0; k < r2s.size(); ++k) {
    // A double root is one point, reported once.
    if (k > 0 && r2s[k] == r2s[k - 1]) continue;
    const double r2 = r2s[k];
    if (!(r2 > 0.0)) continue;
    PlanarRoot root;
    root.r2 = r2;
    root.x2 = (r2 * r2 - u * r2 + c) / (2.0 * a - u);
    root.y2 = (r2 * r2 - u * r2 + d) / (2.0 * b - u);
    root.branch = (r2s.size() == 2 && k == 1) ? 1 : -1;
    if (positive_squared(root.x2, r2) && positive_squared(root.y2, r2)) out.push_back(root);
  }
  return out;
}

std::vector<PlanarRoot> off_axis_roots_2d(const PotentialSpec& spec) {
  if (spec.family() != Family::butterfly2d) {
    throw UsageError("off_axis_roots_2d expects a butterfly2d potential");
  }
  const RawParams& r = spec.raw();
  return planar_roots(r.a, r.b, r.c, r.d, r.u);
}

std::vector<SpatialRoot> bulk_roots(const PotentialSpec& spec) {
  if (spec.family() != Family::butterfly3d) {
    throw UsageError("bulk_roots expects a butterfly3d potential");
  }
  const RawParams& r = spec.raw();
  Eigen::Matrix3d m;
  m << 2.0 * r.a, r.u, r.v, r.u, 2.0 * r.b, r.w, r.v, r.w, 2.0 * r.c;
  const double scale = m.cwiseAbs().maxCoeff();
  const double det = m.determinant();
  if (std::abs(det) <= 1e-12 * scale * scale * scale) {
    const double minors[] = {4 * r.a * r.b - r.u * r.u, 4 * r.a * r.c - r.v * r.v,
                             4 * r.b * r.c - r.w * r.w};
    const char* names[] = {"xy", "xz", "yz"};
    const int worst = static_cast<int>(
        std::min_element(std::begin(minors), std::end(minors),
                         [](double x, double y) { return std::abs(x) < std::abs(y); }) -
        std::begin(minors));
    std::ostringstream os;
    os << "bulk linear system is singular (det=" << det << "); smallest principal minor is "
       << names[worst] << " = " << minors[worst];
    throw DegenerateCoupling(std::string("det3,minor:") + names[worst], os.str());
  }
  const Eigen::Matrix3d inv = m.inverse();
  const Eigen::Vector3d slope = inv * Eigen::Vector3d::Ones();
  const Eigen::Vector3d offset = inv * Eigen::Vector3d(r.p, r.q, r.s);
  // R² = Σ_j (slope_j R⁴ + offset_j)
  const std::vector<double> r2s = real_quadratic_roots(slope.sum(), -1.0, offset.sum());
  std::vector<SpatialRoot> out;
  for (std::size_t k = 0; k < r2s.size(); ++k) {
    if (k > 0 && r2s[k] == r2s[k - 1]) continue;
    const double r2 = r2s[k];
    if (!(r2 > 0.0)) continue;
    const Eigen::Vector3d sq = slope * (r2 * r2) + offset;
    if (!(positive_squared(sq(0), r2) && positive_squared(sq(1), r2) &&
          positive_squared(sq(2), r2))) {
      continue;
    }
    out.push_back(SpatialRoot{sq(0), sq(1), sq(2), r2, Subfamily::bulk,
                              (r2s.size() == 2 && k == 1) ? 1 : -1});
  }
  return out;
}

std::vector<SpatialRoot> off_axis_roots_3d(const PotentialSpec& spec) {
  if (spec.family() != Family::butterfly3d) {
    throw UsageError("off_axis_roots_3d expects a butterfly3d potential");
  }
  std::vector<SpatialRoot> out;
  for (auto [i, j] : {std::pair{0, 1}, std::pair{0, 2}, std::pair{1, 2}}) {
    const AxisRaw ai = spec.axis(i);
    const AxisRaw aj = spec.axis(j);
    for (const PlanarRoot& pr :
         planar_roots(ai.quartic, aj.quartic, ai.quadratic, aj.quadratic, spec.coupling(i, j))) {
      double sq[3] = {0, 0, 0};
      sq[i] = pr.x2;
      sq[j] = pr.y2;
      out.push_back(SpatialRoot{sq[0], sq[1], sq[2], pr.r2, plane_subfamily(i, j), pr.branch});
    }
  }
  for (const SpatialRoot& b : bulk_roots(spec)) out.push_back(b);
  return out;
}

double reduced_equation_residual(const PotentialSpec& spec, const Point& p) {
  const int m = spec.half_degree();
  const Vec s = p.cwiseProduct(p);
  const double rho = s.sum();
  const Vec radial = Vec::Constant(p.size(), m * std::pow(rho, m - 1));
  const Vec g = radial + 2.0 * spec.quartic_form() * s + spec.quadratic_form();
  const Vec size = radial + 2.0 * spec.quartic_form().cwiseAbs() * s +
                   spec.quadratic_form().cwiseAbs();
  double worst = 0.0;
  for (Eigen::Index k = 0; k < p.size(); ++k) {
    if (p(k) == 0.0) continue;
    worst = std::max(worst, std::abs(g(k)) / size(k));
  }
  return worst;
}

StationarySet stationary_points(const PotentialSpec& spec) {
  const int dim = spec.dimension();
  StationarySet set;
  auto add = [&](const Point& loc, std::string label) {
    set.points.push_back(make_stationary_point(spec, loc, std::move(label)));
  };

  add(Point::Zero(dim), "origin");

  if (is_cusp(spec.family())) {
    for (int j = 0; j < dim; ++j) {
      add(axis_point(dim, j, spec.axis(j).quadratic),
          std::string(kAxisChar[j]) + ":" + std::string(kCuspAxisRoot[j]));
    }
    for (int i = 0; i < dim; ++i) {
      for (int j = i + 1; j < dim; ++j) {
        if (spec.axis(i).quadratic == spec.axis(j).quadratic) {
          set.warnings.push_back("degenerate ring: equal couplings on axes " +
                                 plane_name(i, j) +
                                 " give a continuum of stationary points (Mexican-hat limit)");
        }
      }
    }
  } else {
    for (int j = 0; j < dim; ++j) {
      AxisRoots roots;
      try {
        roots = on_axis_roots(spec, j);
      } catch (const NoRealShape& e) {
        set.warnings.push_back(std::string("NoRealShape: ") + e.what());
        continue;
      }
      const std::string axis(kAxisChar[j]);
      add(axis_point(dim, j, roots.inner), axis + ":alpha");
      if (roots.outer != roots.inner) add(axis_point(dim, j, roots.outer), axis + ":gamma");
    }
    if (dim >= 2) {
      const std::vector<SpatialRoot> off =
          dim == 3 ? off_axis_roots_3d(spec) : [&] {
            std::vector<SpatialRoot> v;
            for (const PlanarRoot& pr : off_axis_roots_2d(spec)) {
              v.push_back(SpatialRoot{pr.x2, pr.y2, 0.0, pr.r2, Subfamily::plane_xy, pr.branch});
            }
            return v;
          }();
      for (const SpatialRoot& root : off) {
        Point loc(dim);
        loc(0) = std::sqrt(root.x2);
        loc(1) = std::sqrt(root.y2);
        if (dim == 3) loc(2) = std::sqrt(root.z2);
        std::string family_tag;
        switch (root.subfamily) {
          case Subfamily::plane_xy: family_tag = "xy"; break;
          case Subfamily::plane_xz: family_tag = "xz"; break;
          case Subfamily::plane_yz: family_tag = "yz"; break;
          default: family_tag = "xyz"; break;
        }
        add(loc, family_tag + (root.branch > 0 ? ":+" : ":-"));
      }
    }
  }

  std::stable_sort(set.points.begin(), set.points.end(),
                   [](const StationaryPoint& a, const StationaryPoint& b) {
                     if (a.value != b.value) return a.value < b.value;
                     return a.label < b.label;
                   });
  return set;
}

Lemma1Result lemma1_reality(double xi) {
  if (!(xi > 0.0)) throw UsageError("lemma1 needs ξ > 0");
  const double xi2 = xi * xi;
  return {xi2 * (2.0 + xi2) <= 0.125, 0.5 * std::sqrt(3.0 * std::sqrt(2.0) - 4.0)};
}

std::optional<std::pair<double, double>> small_coupling_isotropic_roots(double alpha2,
                                                                        double beta2) {
  const double disc = beta2 * beta2 - 8.0 * alpha2 * (alpha2 + 2.0 * beta2);
  if (disc < 0.0) return std::nullopt;
  const double root = std::sqrt(disc);
  return std::pair{(alpha2 + beta2 - root) / 3.0, (alpha2 + beta2 + root) / 3.0};
}

Lemma2Result lemma2_reality(double u, double p, double q, double s) {
  if (!(p > 0.0 && q > 0.0 && s > 0.0)) throw UsageError("lemma2 needs p, q, s > 0");
  const double bound = std::sqrt(3.0 * (p + q + s));
  return {u >= bound, bound};
}

std::optional<std::pair<double, double>> large_coupling_isotropic_roots(double u, double p,
                                                                        double q, double s) {
  const double disc = u * u - 3.0 * (p + q + s);
  if (disc < 0.0) return std::nullopt;
  const double root = std::sqrt(disc);
  return std::pair{(u - root) / 3.0, (u + root) / 3.0};
}

}  // namespace polydots

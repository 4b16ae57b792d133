#include "polydots/potentials.hpp"

#include <cmath>
#include <sstream>

#include "polydots/errors.hpp"

namespace polydots {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::usage: return "UsageError";
    case ErrorCode::no_real_shape: return "NoRealShape";
    case ErrorCode::degenerate_coupling: return "DegenerateCoupling";
    case ErrorCode::degenerate_well: return "DegenerateWell";
    case ErrorCode::no_minimum: return "NoMinimum";
    case ErrorCode::split_bracket: return "SplitBracket";
    case ErrorCode::budget_exceeded: return "BudgetExceeded";
  }
  return "Error";
}

namespace {

constexpr std::string_view kCusp2dNames[] = {"alpha2", "beta2"};
constexpr std::string_view kCusp3dNames[] = {"alpha2", "beta2", "gamma2"};
constexpr std::string_view kButterfly1dNames[] = {"a", "c"};
constexpr std::string_view kButterfly2dNames[] = {"a", "b", "c", "d", "u"};
constexpr std::string_view kButterfly3dNames[] = {"a", "b", "c", "u", "v",
                                                  "w", "p", "q", "s"};
constexpr char kAxisNames[] = {'x', 'y', 'z'};

std::string axis_name(int j) { return std::string(1, kAxisNames[j]); }

void require(bool ok, const std::string& message) {
  if (!ok) throw UsageError(message);
}

// Returns the axis for "alpha_x" style names, -1 for "alpha", -2 otherwise.
int shape_axis_suffix(std::string_view name, std::string_view stem) {
  if (name == stem) return -1;
  if (name.size() == stem.size() + 2 && name.substr(0, stem.size()) == stem &&
      name[stem.size()] == '_') {
    switch (name.back()) {
      case 'x': return 0;
      case 'y': return 1;
      case 'z': return 2;
      default: break;
    }
  }
  return -2;
}

}  // namespace

std::string_view to_string(Family family) {
  switch (family) {
    case Family::cusp2d: return "cusp2d";
    case Family::cusp3d: return "cusp3d";
    case Family::butterfly1d: return "butterfly1d";
    case Family::butterfly2d: return "butterfly2d";
    case Family::butterfly3d: return "butterfly3d";
  }
  return "unknown";
}

Family parse_family(std::string_view name) {
  for (Family f : {Family::cusp2d, Family::cusp3d, Family::butterfly1d,
                   Family::butterfly2d, Family::butterfly3d}) {
    if (name == to_string(f)) return f;
  }
  throw UsageError("unknown potential family '" + std::string(name) + "'");
}

int dimension_of(Family family) {
  switch (family) {
    case Family::butterfly1d: return 1;
    case Family::cusp2d:
    case Family::butterfly2d: return 2;
    case Family::cusp3d:
    case Family::butterfly3d: return 3;
  }
  return 0;
}

bool is_cusp(Family family) {
  return family == Family::cusp2d || family == Family::cusp3d;
}

std::span<const std::string_view> raw_param_names(Family family) {
  switch (family) {
    case Family::cusp2d: return kCusp2dNames;
    case Family::cusp3d: return kCusp3dNames;
    case Family::butterfly1d: return kButterfly1dNames;
    case Family::butterfly2d: return kButterfly2dNames;
    case Family::butterfly3d: return kButterfly3dNames;
  }
  return {};
}

double RawParams::get(std::string_view name) const {
  if (name == "alpha2") return alpha2;
  if (name == "beta2") return beta2;
  if (name == "gamma2") return gamma2;
  if (name == "a") return a;
  if (name == "b") return b;
  if (name == "c") return c;
  if (name == "d") return d;
  if (name == "u") return u;
  if (name == "v") return v;
  if (name == "w") return w;
  if (name == "p") return p;
  if (name == "q") return q;
  if (name == "s") return s;
  throw UsageError("unknown raw parameter '" + std::string(name) + "'");
}

void RawParams::set(std::string_view name, double value) {
  if (name == "alpha2") alpha2 = value;
  else if (name == "beta2") beta2 = value;
  else if (name == "gamma2") gamma2 = value;
  else if (name == "a") a = value;
  else if (name == "b") b = value;
  else if (name == "c") c = value;
  else if (name == "d") d = value;
  else if (name == "u") u = value;
  else if (name == "v") v = value;
  else if (name == "w") w = value;
  else if (name == "p") p = value;
  else if (name == "q") q = value;
  else if (name == "s") s = value;
  else throw UsageError("unknown raw parameter '" + std::string(name) + "'");
}

bool ShapeParams::complete() const {
  for (const auto& axis : axes) {
    if (!axis) return false;
  }
  return !axes.empty();
}

AxisShape raw_to_shape(AxisRaw raw, int axis) {
  const double a = raw.quartic;
  const double c = raw.quadratic;
  const double disc = a * a - c;
  if (disc < 0.0 || a <= 0.0) {
    std::ostringstream os;
    os << "axis " << kAxisNames[axis] << ": a² < c (a=" << a << ", c=" << c
       << "), on-axis stationary points are complex";
    throw NoRealShape(axis, os.str());
  }
  const double root = std::sqrt(disc);
  // α² = a − √(a²−c) rewritten to avoid cancellation when c ≪ a².
  return AxisShape{c / (a + root), root};
}

AxisRaw shape_to_raw(AxisShape shape) {
  require(shape.alpha2 > 0.0 && shape.beta2 >= 0.0 && std::isfinite(shape.alpha2) &&
              std::isfinite(shape.beta2),
          "shape parameters need α² > 0 and β² ≥ 0");
  return AxisRaw{shape.alpha2 + shape.beta2, shape.alpha2 * shape.gamma2()};
}

PotentialSpec::PotentialSpec(Family family, const RawParams& raw)
    : family_(family), raw_(raw) {
  const int dim = dimension_of(family);
  for (std::string_view name : raw_param_names(family)) {
    require(std::isfinite(raw.get(name)),
            "parameter '" + std::string(name) + "' is not finite");
  }

  quartic_form_ = Mat::Zero(dim, dim);
  quadratic_form_ = Vec::Zero(dim);
  shape_.axes.resize(dim);

  if (is_cusp(family)) {
    half_degree_ = 2;
    for (int j = 0; j < dim; ++j) {
      const double coef = axis(j).quadratic;
      require(coef > 0.0, "cusp coefficient on axis " + axis_name(j) + " must be positive");
      quadratic_form_(j) = -2.0 * coef;
      shape_.axes[j] = AxisShape{coef, 0.0};
    }
    return;
  }

  half_degree_ = 3;
  if (family == Family::butterfly1d) {
    require(raw.a < 0.0 && raw.c > 0.0, "butterfly1d needs a < 0 < c");
  }
  for (int j = 0; j < dim; ++j) {
    const AxisRaw ax = axis(j);
    require(ax.quartic > 0.0 && ax.quadratic > 0.0,
            "butterfly quartic and quadratic couplings must be positive");
    quartic_form_(j, j) = -3.0 * ax.quartic;
    quadratic_form_(j) = 3.0 * ax.quadratic;
    try {
      shape_.axes[j] = raw_to_shape(ax, j);
    } catch (const NoRealShape&) {
      shape_.axes[j].reset();
    }
  }
  for (int i = 0; i < dim; ++i) {
    for (int j = i + 1; j < dim; ++j) {
      quartic_form_(i, j) = quartic_form_(j, i) = -1.5 * coupling(i, j);
    }
  }
  shape_.u = raw.u;
  shape_.v = raw.v;
  shape_.w = raw.w;
}

PotentialSpec PotentialSpec::from_raw(Family family, const RawParams& raw) {
  RawParams cleaned;
  for (std::string_view name : raw_param_names(family)) cleaned.set(name, raw.get(name));
  return PotentialSpec(family, cleaned);
}

PotentialSpec PotentialSpec::from_shape(Family family, const ShapeParams& shape) {
  const int dim = dimension_of(family);
  require(static_cast<int>(shape.axes.size()) == dim,
          "shape parameters need one entry per axis");
  for (const auto& ax : shape.axes) require(ax.has_value(), "shape axis missing");
  RawParams raw;
  if (is_cusp(family)) {
    raw.alpha2 = shape.axes[0]->alpha2;
    raw.beta2 = shape.axes[1]->alpha2;
    if (dim == 3) raw.gamma2 = shape.axes[2]->alpha2;
    return PotentialSpec(family, raw);
  }
  std::array<AxisRaw, 3> ax{};
  for (int j = 0; j < dim; ++j) ax[j] = shape_to_raw(*shape.axes[j]);
  switch (family) {
    case Family::butterfly1d:
      raw.a = -3.0 * ax[0].quartic;
      raw.c = 3.0 * ax[0].quadratic;
      break;
    case Family::butterfly2d:
      raw.a = ax[0].quartic;
      raw.c = ax[0].quadratic;
      raw.b = ax[1].quartic;
      raw.d = ax[1].quadratic;
      raw.u = shape.u;
      break;
    default:
      raw.a = ax[0].quartic;
      raw.p = ax[0].quadratic;
      raw.b = ax[1].quartic;
      raw.q = ax[1].quadratic;
      raw.c = ax[2].quartic;
      raw.s = ax[2].quadratic;
      raw.u = shape.u;
      raw.v = shape.v;
      raw.w = shape.w;
      break;
  }
  return PotentialSpec(family, raw);
}

PotentialSpec PotentialSpec::cusp2d(double alpha2, double beta2) {
  RawParams r;
  r.alpha2 = alpha2;
  r.beta2 = beta2;
  return PotentialSpec(Family::cusp2d, r);
}

PotentialSpec PotentialSpec::cusp3d(double alpha2, double beta2, double gamma2) {
  RawParams r;
  r.alpha2 = alpha2;
  r.beta2 = beta2;
  r.gamma2 = gamma2;
  return PotentialSpec(Family::cusp3d, r);
}

PotentialSpec PotentialSpec::butterfly1d(double a, double c) {
  RawParams r;
  r.a = a;
  r.c = c;
  return PotentialSpec(Family::butterfly1d, r);
}

PotentialSpec PotentialSpec::butterfly2d(double a, double b, double c, double d, double u) {
  RawParams r;
  r.a = a;
  r.b = b;
  r.c = c;
  r.d = d;
  r.u = u;
  return PotentialSpec(Family::butterfly2d, r);
}

PotentialSpec PotentialSpec::butterfly3d(double a, double b, double c, double u, double v,
                                         double w, double p, double q, double s) {
  RawParams r;
  r.a = a;
  r.b = b;
  r.c = c;
  r.u = u;
  r.v = v;
  r.w = w;
  r.p = p;
  r.q = q;
  r.s = s;
  return PotentialSpec(Family::butterfly3d, r);
}

AxisRaw PotentialSpec::axis(int j) const {
  switch (family_) {
    case Family::cusp2d:
    case Family::cusp3d: {
      const double coef[] = {raw_.alpha2, raw_.beta2, raw_.gamma2};
      return AxisRaw{0.0, coef[j]};
    }
    case Family::butterfly1d: return AxisRaw{-raw_.a / 3.0, raw_.c / 3.0};
    case Family::butterfly2d:
      return j == 0 ? AxisRaw{raw_.a, raw_.c} : AxisRaw{raw_.b, raw_.d};
    case Family::butterfly3d: {
      const AxisRaw axes[] = {{raw_.a, raw_.p}, {raw_.b, raw_.q}, {raw_.c, raw_.s}};
      return axes[j];
    }
  }
  return {};
}

double PotentialSpec::coupling(int i, int j) const {
  if (i > j) std::swap(i, j);
  if (family_ == Family::butterfly2d) return raw_.u;
  if (family_ != Family::butterfly3d) return 0.0;
  if (i == 0 && j == 1) return raw_.u;
  if (i == 0 && j == 2) return raw_.v;
  return raw_.w;
}

bool PotentialSpec::is_raw_param(Family family, std::string_view name) {
  for (std::string_view n : raw_param_names(family)) {
    if (n == name) return true;
  }
  return false;
}

bool PotentialSpec::is_shape_param(Family family, std::string_view name) {
  if (is_raw_param(family, name)) return false;
  const int dim = dimension_of(family);
  if (is_cusp(family)) {
    return name == "alpha" || name == "beta" || (dim == 3 && name == "gamma");
  }
  for (std::string_view stem : {"alpha", "beta", "gamma"}) {
    const int ax = shape_axis_suffix(name, stem);
    if (ax == -1 || (ax >= 0 && ax < dim)) return true;
  }
  return false;
}

double PotentialSpec::param(std::string_view name) const {
  if (is_raw_param(family_, name)) return raw_.get(name);
  require(is_shape_param(family_, name),
          "unknown parameter '" + std::string(name) + "' for " + std::string(to_string(family_)));
  if (is_cusp(family_)) {
    const int j = name == "alpha" ? 0 : name == "beta" ? 1 : 2;
    return std::sqrt(shape_.axes[j]->alpha2);
  }
  for (std::string_view stem : {"alpha", "beta", "gamma"}) {
    const int ax = shape_axis_suffix(name, stem);
    if (ax == -2) continue;
    const int j = ax < 0 ? 0 : ax;
    if (!shape_.axes[j]) throw NoRealShape(j, "axis has no real shape");
    const AxisShape& sh = *shape_.axes[j];
    if (stem == "alpha") return std::sqrt(sh.alpha2);
    if (stem == "beta") return std::sqrt(sh.beta2);
    return std::sqrt(sh.gamma2());
  }
  return 0.0;
}

PotentialSpec PotentialSpec::with_param(std::string_view name, double value) const {
  if (is_raw_param(family_, name)) {
    RawParams r = raw_;
    r.set(name, value);
    return PotentialSpec(family_, r);
  }
  require(is_shape_param(family_, name),
          "unknown parameter '" + std::string(name) + "' for " + std::string(to_string(family_)));
  ShapeParams sh = shape_;
  if (is_cusp(family_)) {
    const int j = name == "alpha" ? 0 : name == "beta" ? 1 : 2;
    sh.axes[j] = AxisShape{value * value, 0.0};
    return from_shape(family_, sh);
  }
  for (std::string_view stem : {"alpha", "beta", "gamma"}) {
    const int ax = shape_axis_suffix(name, stem);
    if (ax == -2) continue;
    const int lo = ax < 0 ? 0 : ax;
    const int hi = ax < 0 ? dimension() : ax + 1;
    for (int j = lo; j < hi; ++j) {
      if (!sh.axes[j]) throw NoRealShape(j, "cannot edit shape of an axis without real shape");
      AxisShape& axis_shape = *sh.axes[j];
      if (stem == "alpha") {
        axis_shape.alpha2 = value * value;
      } else if (stem == "beta") {
        axis_shape.beta2 = value * value;
      } else {
        axis_shape.beta2 = 0.5 * (value * value - axis_shape.alpha2);
        require(axis_shape.beta2 >= 0.0, "gamma must not be smaller than alpha");
      }
    }
    return from_shape(family_, sh);
  }
  return *this;
}

double evaluate(const PotentialSpec& spec, const Point& p) {
  require(p.size() == spec.dimension(), "point dimension does not match the potential");
  const RawParams& r = spec.raw();
  const double x = p(0);
  const double x2 = x * x;
  switch (spec.family()) {
    case Family::butterfly1d:
      return x2 * x2 * x2 + r.a * x2 * x2 + r.c * x2;
    case Family::cusp2d: {
      const double y2 = p(1) * p(1);
      const double r2 = x2 + y2;
      return r2 * r2 - 2.0 * r.alpha2 * x2 - 2.0 * r.beta2 * y2;
    }
    case Family::cusp3d: {
      const double y2 = p(1) * p(1);
      const double z2 = p(2) * p(2);
      const double r2 = x2 + y2 + z2;
      return r2 * r2 - 2.0 * r.alpha2 * x2 - 2.0 * r.beta2 * y2 - 2.0 * r.gamma2 * z2;
    }
    case Family::butterfly2d: {
      const double y2 = p(1) * p(1);
      const double r2 = x2 + y2;
      return r2 * r2 * r2 - 3.0 * r.a * x2 * x2 - 3.0 * r.u * x2 * y2 -
             3.0 * r.b * y2 * y2 + 3.0 * r.c * x2 + 3.0 * r.d * y2;
    }
    case Family::butterfly3d: {
      const double y2 = p(1) * p(1);
      const double z2 = p(2) * p(2);
      const double r2 = x2 + y2 + z2;
      return r2 * r2 * r2 - 3.0 * r.a * x2 * x2 - 3.0 * r.b * y2 * y2 -
             3.0 * r.c * z2 * z2 - 3.0 * r.u * x2 * y2 - 3.0 * r.v * x2 * z2 -
             3.0 * r.w * y2 * z2 + 3.0 * r.p * x2 + 3.0 * r.q * y2 + 3.0 * r.s * z2;
    }
  }
  return 0.0;
}

// With s_j = x_j² and g_k = m ρ^{m−1} + 2(Qs)_k + q_k:
//   ∂_k V  = 2 x_k g_k
//   ∂_kl V = 2 δ_kl g_k + 4 x_k x_l (m(m−1) ρ^{m−2} + 2 Q_kl)
Vec gradient(const PotentialSpec& spec, const Point& p) {
  require(p.size() == spec.dimension(), "point dimension does not match the potential");
  const int m = spec.half_degree();
  const Vec s = p.cwiseProduct(p);
  const double rho = s.sum();
  const Vec g = Vec::Constant(p.size(), m * std::pow(rho, m - 1)) +
                2.0 * spec.quartic_form() * s + spec.quadratic_form();
  return 2.0 * p.cwiseProduct(g);
}

Mat hessian(const PotentialSpec& spec, const Point& p) {
  require(p.size() == spec.dimension(), "point dimension does not match the potential");
  const int dim = spec.dimension();
  const int m = spec.half_degree();
  const Vec s = p.cwiseProduct(p);
  const double rho = s.sum();
  const Vec g = Vec::Constant(dim, m * std::pow(rho, m - 1)) +
                2.0 * spec.quartic_form() * s + spec.quadratic_form();
  const double radial = m * (m - 1) * std::pow(rho, m - 2);
  Mat h(dim, dim);
  for (int k = 0; k < dim; ++k) {
    for (int l = 0; l < dim; ++l) {
      h(k, l) = 4.0 * p(k) * p(l) * (radial + 2.0 * spec.quartic_form()(k, l));
    }
    h(k, k) += 2.0 * g(k);
  }
  return h;
}

double gradient_scale(const PotentialSpec& spec, const Point& p) {
  const int m = spec.half_degree();
  const Vec s = p.cwiseProduct(p);
  const double rho = s.sum();
  const Vec g = Vec::Constant(p.size(), m * std::pow(rho, m - 1)) +
                2.0 * spec.quartic_form().cwiseAbs() * s + spec.quadratic_form().cwiseAbs();
  return 2.0 * p.cwiseAbs().dot(g);
}

Point make_point(std::initializer_list<double> coords) {
  Point p(static_cast<Eigen::Index>(coords.size()));
  Eigen::Index i = 0;
  for (double c : coords) p(i++) = c;
  return p;
}

}  // namespace polydots

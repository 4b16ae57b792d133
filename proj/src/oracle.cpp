#include "polydots/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <random>
#include <sstream>

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include "polydots/errors.hpp"

namespace polydots {

GridSpec GridSpec::uniform(int dim, double half_width, int points) {
  GridSpec g;
  g.dim = dim;
  g.half_width = {half_width, half_width, half_width};
  g.points = {points, points, points};
  g.validate();
  return g;
}

std::size_t GridSpec::nodes() const {
  std::size_t n = 1;
  for (int j = 0; j < dim; ++j) n *= static_cast<std::size_t>(points[j]);
  return n;
}

void GridSpec::validate() const {
  if (dim < 1 || dim > 3) throw UsageError("grid dimension must be 1, 2 or 3");
  for (int j = 0; j < dim; ++j) {
    if (!(half_width[j] > 0.0) || !std::isfinite(half_width[j])) {
      throw UsageError("grid half width must be positive");
    }
    if (points[j] < 16) throw UsageError("grid needs at least 16 points per axis");
  }
}

// ---------------------------------------------------------------------------
// Newton oracle

namespace {

Vec newton_direction(const Mat& h, const Vec& g) {
  Eigen::SelfAdjointEigenSolver<Mat> eig(h);
  const Vec& lam = eig.eigenvalues();
  const double floor = 1e-14 * std::max(1e-300, lam.cwiseAbs().maxCoeff());
  Vec step = Vec::Zero(g.size());
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    const Vec v = eig.eigenvectors().col(i);
    double l = lam(i);
    if (std::abs(l) < floor) l = std::copysign(floor, l == 0.0 ? 1.0 : l);
    step -= (v.dot(g) / l) * v;
  }
  return step;
}

bool converged(const PotentialSpec& spec, const Point& x, const Vec& g, double tol) {
  return g.norm() <= tol * (1.0 + gradient_scale(spec, x));
}

std::optional<Point> newton_from(const PotentialSpec& spec, Point x, const NewtonOptions& opt) {
  Vec g = gradient(spec, x);
  for (int it = 0; it < opt.max_iterations; ++it) {
    if (converged(spec, x, g, opt.gradient_tol)) {
      // Two undamped polishing steps take the root to the rounding floor.
      for (int polish = 0; polish < 2; ++polish) {
        const Point y = x + newton_direction(hessian(spec, x), g);
        const Vec gy = gradient(spec, y);
        if (gy.norm() >= g.norm()) break;
        x = y;
        g = gy;
      }
      return x;
    }
    const Vec d = newton_direction(hessian(spec, x), g);
    const double g0 = g.norm();
    double t = 1.0;
    Point trial = x + d;
    Vec gt = gradient(spec, trial);
    for (int halving = 0; halving < 40 && !(gt.norm() < g0); ++halving) {
      t *= 0.5;
      trial = x + t * d;
      gt = gradient(spec, trial);
    }
    if (!(gt.norm() < g0)) return std::nullopt;
    x = trial;
    g = gt;
  }
  if (converged(spec, x, g, opt.gradient_tol)) return x;
  return std::nullopt;
}

void for_each_node(const GridSpec& grid, const std::function<void(const Point&)>& fn) {
  std::array<int, 3> idx{0, 0, 0};
  const std::size_t total = grid.nodes();
  Point p(grid.dim);
  for (std::size_t n = 0; n < total; ++n) {
    std::size_t rest = n;
    for (int j = 0; j < grid.dim; ++j) {
      idx[j] = static_cast<int>(rest % grid.points[j]);
      rest /= grid.points[j];
      p(j) = grid.coord(j, idx[j]);
    }
    fn(p);
  }
}

}  // namespace

GridSpec default_newton_grid(const PotentialSpec& spec, int points) {
  // Any stationary point satisfies m ρ^{m−1} = −2(Qs)_k − q_k on a nonzero
  // coordinate, hence m ρ^{m−1} ≤ 2‖Q‖∞ ρ + ‖q‖∞.
  const double qn = spec.quartic_form().cwiseAbs().rowwise().sum().maxCoeff();
  const double ln = spec.quadratic_form().cwiseAbs().maxCoeff();
  double rho_max = 0.0;
  if (spec.half_degree() == 2) {
    rho_max = (ln + 2.0 * qn) / 2.0;
  } else {
    rho_max = (2.0 * qn + std::sqrt(4.0 * qn * qn + 12.0 * ln)) / 6.0;
  }
  return GridSpec::uniform(spec.dimension(), 1.2 * std::sqrt(rho_max) + 0.3, points);
}

std::vector<StationaryPoint> newton_stationary(const PotentialSpec& spec, const GridSpec& grid,
                                               const NewtonOptions& options) {
  grid.validate();
  if (grid.dim != spec.dimension()) throw UsageError("grid dimension does not match the spec");
  std::vector<Point> roots;
  for_each_node(grid, [&](const Point& seed) {
    const auto root = newton_from(spec, seed, options);
    if (!root) return;
    Point rep = root->cwiseAbs();
    const double snap = 1e-8 * std::max(1.0, rep.norm());
    for (Eigen::Index j = 0; j < rep.size(); ++j) {
      if (rep(j) <= snap) rep(j) = 0.0;
    }
    for (const Point& known : roots) {
      if ((known - rep).cwiseAbs().maxCoeff() <= options.dedup_tol) return;
    }
    roots.push_back(rep);
  });
  std::vector<StationaryPoint> out;
  out.reserve(roots.size());
  for (const Point& r : roots) {
    StationaryPoint sp = make_stationary_point(spec, r, "");
    sp.label = std::string(to_string(sp.subfamily));
    out.push_back(std::move(sp));
  }
  std::sort(out.begin(), out.end(), [](const StationaryPoint& a, const StationaryPoint& b) {
    return a.value < b.value;
  });
  return out;
}

OrbitDiff compare_orbits(const std::vector<StationaryPoint>& closed_form,
                         const std::vector<StationaryPoint>& oracle, double tol) {
  OrbitDiff diff;
  std::vector<bool> used(oracle.size(), false);
  for (const auto& c : closed_form) {
    bool found = false;
    for (std::size_t i = 0; i < oracle.size(); ++i) {
      if (used[i]) continue;
      if ((oracle[i].location - c.location).cwiseAbs().maxCoeff() <= tol) {
        used[i] = true;
        found = true;
        break;
      }
    }
    if (!found) diff.missing.push_back(c);
  }
  for (std::size_t i = 0; i < oracle.size(); ++i) {
    if (!used[i]) diff.spurious.push_back(oracle[i]);
  }
  return diff;
}

// ---------------------------------------------------------------------------
// Finite-difference solver

SolverBudget solver_budget(const GridSpec& grid) {
  SolverBudget b;
  b.unknowns = 1;
  for (int j = 0; j < grid.dim; ++j) {
    b.unknowns *= static_cast<std::size_t>(std::max(0, grid.points[j] - 2));
  }
  b.stencil_nonzeros = static_cast<std::size_t>(2 * grid.dim + 1) * b.unknowns;
  return b;
}

std::array<int, 3> EigenSolution::interior_shape() const {
  std::array<int, 3> shape{1, 1, 1};
  for (int j = 0; j < grid.dim; ++j) shape[j] = grid.points[j] - 2;
  return shape;
}

Point EigenSolution::node(std::size_t index) const {
  const auto shape = interior_shape();
  Point p(grid.dim);
  for (int j = 0; j < grid.dim; ++j) {
    p(j) = grid.coord(j, static_cast<int>(index % shape[j]) + 1);
    index /= shape[j];
  }
  return p;
}

double EigenSolution::cell_volume() const {
  double v = 1.0;
  for (int j = 0; j < grid.dim; ++j) v *= grid.spacing(j);
  return v;
}

namespace {

using SparseMatrix = Eigen::SparseMatrix<double>;
using Factor = Eigen::SimplicialLDLT<SparseMatrix>;

struct Discretization {
  SparseMatrix hamiltonian;
  Eigen::VectorXd potential;
  double boundary_min = std::numeric_limits<double>::infinity();
};

Discretization discretize(const PotentialFn& potential, const GridSpec& grid) {
  EigenSolution shape_helper;
  shape_helper.grid = grid;
  const auto shape = shape_helper.interior_shape();
  const std::size_t n = solver_budget(grid).unknowns;
  std::array<std::size_t, 3> stride{1, 1, 1};
  for (int j = 1; j < grid.dim; ++j) stride[j] = stride[j - 1] * shape[j - 1];

  Discretization out;
  out.potential.resize(static_cast<Eigen::Index>(n));
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(solver_budget(grid).stencil_nonzeros);
  double kinetic_diag = 0.0;
  std::array<double, 3> hop{0, 0, 0};
  for (int j = 0; j < grid.dim; ++j) {
    const double h = grid.spacing(j);
    hop[j] = -1.0 / (h * h);
    kinetic_diag += 2.0 / (h * h);
  }
  for (std::size_t idx = 0; idx < n; ++idx) {
    const Point x = shape_helper.node(idx);
    const double v = potential(x);
    out.potential(static_cast<Eigen::Index>(idx)) = v;
    const auto row = static_cast<int>(idx);
    triplets.emplace_back(row, row, kinetic_diag + v);
    std::size_t rest = idx;
    for (int j = 0; j < grid.dim; ++j) {
      const int i = static_cast<int>(rest % shape[j]);
      rest /= shape[j];
      if (i > 0) triplets.emplace_back(row, static_cast<int>(idx - stride[j]), hop[j]);
      if (i + 1 < shape[j]) triplets.emplace_back(row, static_cast<int>(idx + stride[j]), hop[j]);
    }
  }
  out.hamiltonian.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  out.hamiltonian.setFromTriplets(triplets.begin(), triplets.end());

  // Potential on the Dirichlet walls, for the adequacy warning.
  std::array<int, 3> idx{0, 0, 0};
  const std::size_t total = grid.nodes();
  Point p(grid.dim);
  for (std::size_t node = 0; node < total; ++node) {
    std::size_t rest = node;
    bool wall = false;
    for (int j = 0; j < grid.dim; ++j) {
      idx[j] = static_cast<int>(rest % grid.points[j]);
      rest /= grid.points[j];
      wall = wall || idx[j] == 0 || idx[j] == grid.points[j] - 1;
      p(j) = grid.coord(j, idx[j]);
    }
    if (wall) out.boundary_min = std::min(out.boundary_min, potential(p));
  }
  return out;
}

bool factor_positive_definite(Factor& factor, const SparseMatrix& h, double shift) {
  SparseMatrix shifted = h;
  for (int i = 0; i < shifted.rows(); ++i) shifted.coeffRef(i, i) -= shift;
  factor.compute(shifted);
  if (factor.info() != Eigen::Success) return false;
  return (factor.vectorD().array() > 0.0).all();
}

Eigen::MatrixXd orthonormal_basis(const Eigen::MatrixXd& y) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(y);
  return qr.householderQ() * Eigen::MatrixXd::Identity(y.rows(), y.cols());
}

}  // namespace

EigenSolution fd_eigensolve(const PotentialFn& potential, const GridSpec& grid, int k,
                            const FdOptions& options) {
  grid.validate();
  if (k < 1) throw UsageError("need k ≥ 1 eigenpairs");
  const SolverBudget budget = solver_budget(grid);
  if (grid.dim == 3) {
    for (int j = 0; j < 3; ++j) {
      if (grid.points[j] > options.max_points_3d) {
        std::ostringstream os;
        os << "3D grids are limited to " << options.max_points_3d << " points per axis (got "
           << grid.points[j] << ")";
        throw BudgetExceeded(static_cast<std::size_t>(grid.points[j]),
                             static_cast<std::size_t>(options.max_points_3d), os.str());
      }
    }
  }
  if (budget.unknowns > options.max_unknowns) {
    std::ostringstream os;
    os << "grid needs " << budget.unknowns << " unknowns (" << budget.stencil_nonzeros
       << " stencil entries), budget is " << options.max_unknowns;
    throw BudgetExceeded(budget.unknowns, options.max_unknowns, os.str());
  }
  const auto n = static_cast<Eigen::Index>(budget.unknowns);
  if (k > n) throw UsageError("more eigenpairs requested than grid unknowns");

  const Discretization disc = discretize(potential, grid);
  const SparseMatrix& h = disc.hamiltonian;
  const Eigen::Index block = std::min<Eigen::Index>(n, k + std::max(6, k));
  double norm_h = 0.0;
  for (int col = 0; col < h.outerSize(); ++col) {
    double sum = 0.0;
    for (SparseMatrix::InnerIterator itr(h, col); itr; ++itr) sum += std::abs(itr.value());
    norm_h = std::max(norm_h, sum);
  }
  // Residuals cannot drop below the rounding floor of H·x.
  const double floor = 20.0 * std::numeric_limits<double>::epsilon() * norm_h;

  // H ≥ min V, so any shift below min V keeps H − σ positive definite.
  double shift = disc.potential.minCoeff() - 1.0;
  auto factor = std::make_unique<Factor>();
  if (!factor_positive_definite(*factor, h, shift)) {
    throw Error(ErrorCode::usage, "failed to factor the shifted Hamiltonian");
  }

  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> normal;
  Eigen::MatrixXd x(n, block);
  for (Eigen::Index j = 0; j < block; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) x(i, j) = normal(rng);
  }
  x = orthonormal_basis(x);

  EigenSolution sol;
  sol.grid = grid;
  Eigen::VectorXd theta;
  Eigen::MatrixXd hx;
  std::vector<double> residuals(static_cast<std::size_t>(k), 0.0);
  int next_shift_update = 4;
  for (int it = 1; it <= options.max_iterations; ++it) {
    x = orthonormal_basis(factor->solve(x));
    hx = h * x;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ritz(x.transpose() * hx);
    theta = ritz.eigenvalues();
    x = x * ritz.eigenvectors();
    hx = hx * ritz.eigenvectors();
    bool done = true;
    for (int i = 0; i < k; ++i) {
      residuals[i] = (hx.col(i) - theta(i) * x.col(i)).norm();
      const double target =
          std::max(options.tol_scale * (1e-8 * std::abs(theta(i)) + 1e-10), floor);
      done = done && residuals[i] <= target;
    }
    sol.iterations = it;
    if (done) {
      sol.converged = true;
      break;
    }
    if (it == next_shift_update) {
      next_shift_update *= 2;
      // Move the shift up towards the wanted cluster, keeping H − σ definite.
      const double spread = theta(std::min<Eigen::Index>(k, block - 1)) - theta(0);
      double candidate = theta(0) - 0.25 * spread - residuals[0];
      for (int attempt = 0; attempt < 4 && candidate > shift; ++attempt) {
        auto trial = std::make_unique<Factor>();
        if (factor_positive_definite(*trial, h, candidate)) {
          factor = std::move(trial);
          shift = candidate;
          break;
        }
        candidate = 0.5 * (candidate + shift);
      }
    }
  }

  const double volume = [&] {
    double v = 1.0;
    for (int j = 0; j < grid.dim; ++j) v *= grid.spacing(j);
    return v;
  }();
  sol.shift = shift;
  sol.energies.assign(theta.data(), theta.data() + k);
  sol.residuals = residuals;
  sol.states = x.leftCols(k) / std::sqrt(volume);
  for (int i = 0; i < k; ++i) {
    auto col = sol.states.col(i);
    double sum = col.sum();
    if (std::abs(sum) < 1e-6 * col.cwiseAbs().sum()) {
      Eigen::Index first = 0;
      const double cutoff = 1e-3 * col.cwiseAbs().maxCoeff();
      while (first < col.size() && std::abs(col(first)) < cutoff) ++first;
      sum = col(first);
    }
    if (sum < 0.0) col = -col;
  }
  if (!sol.converged) {
    sol.warnings.push_back("eigensolver did not converge in " +
                           std::to_string(options.max_iterations) +
                           " iterations; result is partial");
  }
  const double e_top = sol.energies.back();
  if (disc.boundary_min < e_top + 10.0) {
    std::ostringstream os;
    os << "box too small: min V on the walls is " << disc.boundary_min << ", below E_max + 10 = "
       << e_top + 10.0;
    sol.warnings.push_back(os.str());
  }
  return sol;
}

EigenSolution fd_eigensolve(const PotentialSpec& spec, const GridSpec& grid, int k,
                            const FdOptions& options) {
  if (grid.dim != spec.dimension()) throw UsageError("grid dimension does not match the spec");
  return fd_eigensolve([&spec](const Point& p) { return evaluate(spec, p); }, grid, k, options);
}

std::vector<double> richardson_energies(const PotentialFn& potential, const GridSpec& grid,
                                        int k, const FdOptions& options) {
  GridSpec fine = grid;
  for (int j = 0; j < grid.dim; ++j) fine.points[j] = 2 * grid.points[j] - 1;
  const EigenSolution coarse_sol = fd_eigensolve(potential, grid, k, options);
  const EigenSolution fine_sol = fd_eigensolve(potential, fine, k, options);
  std::vector<double> out(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    out[i] = (4.0 * fine_sol.energies[i] - coarse_sol.energies[i]) / 3.0;
  }
  return out;
}

std::size_t LocalizationWeights::dominant() const {
  return static_cast<std::size_t>(std::max_element(weights.begin(), weights.end()) -
                                  weights.begin());
}

LocalizationWeights localization(const EigenSolution& solution,
                                 const std::vector<StationaryPoint>& wells,
                                 std::optional<double> radius, int state) {
  if (wells.empty()) throw UsageError("localization needs at least one well");
  if (state < 0 || state >= solution.states.cols()) throw UsageError("state index out of range");
  std::vector<std::vector<Point>> members;
  for (const auto& w : wells) {
    if (w.location.size() != solution.grid.dim) {
      throw UsageError("well dimension does not match the grid");
    }
    members.push_back(orbit_members(w.location));
  }
  double min_between = std::numeric_limits<double>::infinity();
  double min_within = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < members.size(); ++a) {
    for (std::size_t i = 0; i < members[a].size(); ++i) {
      for (std::size_t j = i + 1; j < members[a].size(); ++j) {
        min_within = std::min(min_within, (members[a][i] - members[a][j]).norm());
      }
      for (std::size_t b = a + 1; b < members.size(); ++b) {
        for (const Point& q : members[b]) {
          min_between = std::min(min_between, (members[a][i] - q).norm());
        }
      }
    }
  }
  double rho = 0.0;
  if (radius) {
    rho = *radius;
    if (!(rho > 0.0)) throw UsageError("capture radius must be positive");
    if (rho > 0.5 * min_between) {
      std::ostringstream os;
      os << "capture balls of radius " << rho << " overlap (closest orbits are " << min_between
         << " apart); use ρ ≤ " << 0.5 * min_between;
      throw UsageError(os.str());
    }
  } else if (std::isfinite(min_between)) {
    rho = 0.5 * min_between;
  } else if (std::isfinite(min_within)) {
    rho = 0.5 * min_within;
  } else {
    rho = std::numeric_limits<double>::infinity();
  }

  LocalizationWeights out;
  out.radius = rho;
  out.weights.assign(wells.size(), 0.0);
  for (const auto& w : wells) out.labels.push_back(w.label);
  const double volume = solution.cell_volume();
  const auto psi = solution.states.col(state);
  double total = 0.0;
  for (std::size_t idx = 0; idx < solution.unknowns(); ++idx) {
    const double mass = psi(static_cast<Eigen::Index>(idx)) *
                        psi(static_cast<Eigen::Index>(idx)) * volume;
    total += mass;
    const Point x = solution.node(idx);
    double best = std::numeric_limits<double>::infinity();
    std::size_t owner = 0;
    for (std::size_t a = 0; a < members.size(); ++a) {
      for (const Point& m : members[a]) {
        const double d = (x - m).norm();
        if (d < best) {
          best = d;
          owner = a;
        }
      }
    }
    if (best <= rho) out.weights[owner] += mass;
  }
  double captured = 0.0;
  for (double w : out.weights) captured += w;
  out.leftover = total - captured;
  return out;
}

}  // namespace polydots

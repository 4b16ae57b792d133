#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "polydots/stationary.hpp"

namespace polydots {

/// Uniform tensor grid on [−L_j, L_j] with n_j nodes per axis, endpoints included.
struct GridSpec {
  int dim = 1;
  std::array<double, 3> half_width{1, 1, 1};
  std::array<int, 3> points{16, 16, 16};

  static GridSpec uniform(int dim, double half_width, int points);
  double spacing(int axis) const { return 2.0 * half_width[axis] / (points[axis] - 1); }
  double coord(int axis, int i) const { return -half_width[axis] + i * spacing(axis); }
  std::size_t nodes() const;
  void validate() const;
};

// ---------------------------------------------------------------------------
// Stationary-point oracle

struct NewtonOptions {
  int max_iterations = 50;
  double gradient_tol = 1e-12;  // relative to gradient_scale
  double dedup_tol = 1e-6;
};

/// Damped Newton on ∇V from every grid node; converged roots are reduced to
/// sign-orbit representatives, deduplicated and classified. Labels carry the
/// subfamily name only.
std::vector<StationaryPoint> newton_stationary(const PotentialSpec& spec, const GridSpec& grid,
                                               const NewtonOptions& options = {});

/// Seed grid that comfortably covers every stationary radius of the spec.
GridSpec default_newton_grid(const PotentialSpec& spec, int points = 17);

struct OrbitDiff {
  std::vector<StationaryPoint> missing;   // closed form orbits the oracle did not find
  std::vector<StationaryPoint> spurious;  // oracle orbits absent from the closed form
  bool empty() const { return missing.empty() && spurious.empty(); }
};

OrbitDiff compare_orbits(const std::vector<StationaryPoint>& closed_form,
                         const std::vector<StationaryPoint>& oracle, double tol = 1e-8);

// ---------------------------------------------------------------------------
// Finite-difference Schrödinger solver

using PotentialFn = std::function<double(const Point&)>;

struct FdOptions {
  int max_iterations = 400;
  /// Stop when every residual ≤ tol_scale·(1e-8·|E| + 1e-10).
  double tol_scale = 0.1;
  /// Refusal threshold on the number of unknowns (interior nodes).
  std::size_t max_unknowns = 2'000'000;
  /// Per-axis node cap for 3D grids.
  int max_points_3d = 64;
  unsigned seed = 12345;
};

/// Unknowns and matrix nonzeros the solver needs: N = Π(n_j − 2) interior
/// nodes and (2D+1)·N stencil entries.
struct SolverBudget {
  std::size_t unknowns = 0;
  std::size_t stencil_nonzeros = 0;
};
SolverBudget solver_budget(const GridSpec& grid);

struct EigenSolution {
  GridSpec grid;
  std::vector<double> energies;
  /// Column i holds ψ_i on the interior nodes (x fastest), Σ|ψ|²Δ^D = 1.
  Eigen::MatrixXd states;
  std::vector<double> residuals;
  bool converged = false;
  int iterations = 0;
  double shift = 0;
  std::vector<std::string> warnings;

  std::size_t unknowns() const { return static_cast<std::size_t>(states.rows()); }
  /// Interior-node extents per axis.
  std::array<int, 3> interior_shape() const;
  Point node(std::size_t index) const;
  double cell_volume() const;
};

/// Lowest k eigenpairs of −Δ + V with Dirichlet walls at ±L, second-order
/// central differences, via shift-invert block subspace iteration.
EigenSolution fd_eigensolve(const PotentialFn& potential, const GridSpec& grid, int k,
                            const FdOptions& options = {});
EigenSolution fd_eigensolve(const PotentialSpec& spec, const GridSpec& grid, int k,
                            const FdOptions& options = {});

/// (4E(Δ/2) − E(Δ))/3 using grids with n and 2n−1 nodes per axis.
std::vector<double> richardson_energies(const PotentialFn& potential, const GridSpec& grid,
                                        int k, const FdOptions& options = {});

struct LocalizationWeights {
  std::vector<std::string> labels;
  std::vector<double> weights;
  double leftover = 0;
  double radius = 0;
  std::size_t dominant() const;
};

/// Probability of state `state` inside the capture balls of radius ρ around
/// each orbit. ρ defaults to half the smallest inter-orbit distance.
LocalizationWeights localization(const EigenSolution& solution,
                                 const std::vector<StationaryPoint>& wells,
                                 std::optional<double> radius = std::nullopt, int state = 0);

}  // namespace polydots

#include "polydots/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "polydots/errors.hpp"

namespace polydots {

namespace {

bool semidefinite_degenerate(const StationaryPoint& p) {
  if (p.kind != PointKind::degenerate) return false;
  const double tol = 1e-9 * p.hessian_eigs.cwiseAbs().maxCoeff();
  return p.hessian_eigs.minCoeff() >= -tol;
}

void enumerate_levels(const HarmonicWell& well, double e_max, int axis, double energy,
                      std::vector<int>& n, std::vector<LevelEstimate>& out) {
  const int dim = static_cast<int>(well.frequencies.size());
  if (axis == dim) {
    out.push_back(LevelEstimate{n, energy, well.label()});
    return;
  }
  // Remaining axes contribute at least their zero-point energy.
  double rest = 0.0;
  for (int j = axis + 1; j < dim; ++j) rest += well.frequencies(j);
  const double omega = well.frequencies(axis);
  for (int k = 0;; ++k) {
    const double e = energy + (2 * k + 1) * omega;
    if (e + rest > e_max) break;
    n[axis] = k;
    enumerate_levels(well, e_max, axis + 1, e, n, out);
  }
  n[axis] = 0;
}

}  // namespace

std::string_view to_string(BoundaryKind kind) {
  return kind == BoundaryKind::quantum ? "quantum" : "classical";
}

HarmonicWell harmonic_expand(const PotentialSpec& spec, const StationaryPoint& minimum,
                             std::span<const StationaryPoint> context) {
  if (semidefinite_degenerate(minimum)) {
    throw DegenerateWell("well '" + minimum.label +
                         "' has a flat Hessian direction (Mexican-hat limit); the harmonic "
                         "model is not confining");
  }
  if (minimum.kind != PointKind::minimum) {
    throw UsageError("harmonic_expand needs a minimum, got a " +
                     std::string(to_string(minimum.kind)) + " ('" + minimum.label + "')");
  }
  Eigen::SelfAdjointEigenSolver<Mat> eig(hessian(spec, minimum.location));
  HarmonicWell well;
  well.minimum = minimum;
  well.v0 = minimum.value;
  well.stiffnesses = eig.eigenvalues();
  well.modes = eig.eigenvectors();
  const double tol = 1e-9 * well.stiffnesses.cwiseAbs().maxCoeff();
  if (well.stiffnesses.minCoeff() <= tol) {
    throw DegenerateWell("well '" + minimum.label + "' has a non-positive stiffness");
  }
  well.frequencies = (well.stiffnesses / 2.0).cwiseSqrt();

  StationarySet recomputed;
  if (context.empty()) {
    recomputed = stationary_points(spec);
    context = recomputed.points;
  }
  well.confinement_margin = std::numeric_limits<double>::infinity();
  for (const StationaryPoint& p : context) {
    if (p.kind == PointKind::saddle && p.value > well.v0) {
      well.confinement_margin = std::min(well.confinement_margin, p.value - well.v0);
    }
  }
  return well;
}

std::vector<LevelEstimate> levels(const HarmonicWell& well, double e_max) {
  std::vector<LevelEstimate> out;
  if (e_max < well.ground_energy()) return out;
  std::vector<int> n(well.frequencies.size(), 0);
  enumerate_levels(well, e_max, 0, well.v0, n, out);
  std::stable_sort(out.begin(), out.end(), [](const LevelEstimate& a, const LevelEstimate& b) {
    if (a.energy != b.energy) return a.energy < b.energy;
    return a.quantum_numbers < b.quantum_numbers;
  });
  return out;
}

std::vector<GroundCandidate> ground_candidates(const PotentialSpec& spec,
                                               const StationarySet& set) {
  std::vector<GroundCandidate> out;
  for (const StationaryPoint& p : set.points) {
    if (semidefinite_degenerate(p)) {
      throw DegenerateWell("stationary orbit '" + p.label +
                           "' is a degenerate minimum candidate (Mexican-hat limit)");
    }
    if (p.kind != PointKind::minimum) continue;
    HarmonicWell well = harmonic_expand(spec, p, set.points);
    out.push_back(GroundCandidate{p.label, p.multiplicity, well.ground_energy(), p.value,
                                  std::move(well)});
  }
  if (out.empty()) {
    throw NoMinimum("potential " + std::string(to_string(spec.family())) + " has no minimum");
  }
  return out;
}

std::vector<GroundCandidate> ground_candidates(const PotentialSpec& spec) {
  return ground_candidates(spec, stationary_points(spec));
}

std::string Dominance::joined() const {
  std::string s;
  for (const auto& l : labels) {
    if (!s.empty()) s += '|';
    s += l;
  }
  return s;
}

Dominance dominant_of(std::span<const GroundCandidate> candidates, BoundaryKind kind) {
  if (candidates.empty()) throw NoMinimum("no ground-state candidates");
  auto energy_of = [kind](const GroundCandidate& c) {
    return kind == BoundaryKind::quantum ? c.ground_estimate : c.classical_value;
  };
  double best = std::numeric_limits<double>::infinity();
  for (const auto& c : candidates) best = std::min(best, energy_of(c));
  Dominance d;
  d.energy = best;
  const double tol = kTieTolerance * std::max(1.0, std::abs(best));
  for (const auto& c : candidates) {
    if (energy_of(c) - best <= tol) d.labels.push_back(c.label);
  }
  std::sort(d.labels.begin(), d.labels.end());
  return d;
}

Dominance dominant_minimum(const PotentialSpec& spec) {
  const auto candidates = ground_candidates(spec);
  return dominant_of(candidates, BoundaryKind::quantum);
}

}  // namespace polydots

#pragma once

#include <span>
#include <string>
#include <vector>

#include "polydots/stationary.hpp"

namespace polydots {

/// Local quadratic model of one minimum orbit.
///
/// Energies follow −Δψ + Vψ = Eψ (all mass terms equal to one), so a normal
/// mode with local form v0 + ½hξ² carries levels v0 + (2n+1)·√(h/2).
struct HarmonicWell {
  StationaryPoint minimum;
  double v0 = 0;
  Vec stiffnesses;  // Hessian eigenvalues, ascending
  Vec frequencies;  // ω_i = √(h_i / 2)
  Mat modes;        // columns are the normal-mode directions
  /// Lowest saddle value above v0 minus v0; +inf when no saddle bounds the well.
  double confinement_margin = 0;

  const std::string& label() const { return minimum.label; }
  double zero_point() const { return frequencies.sum(); }
  double ground_energy() const { return v0 + zero_point(); }
  /// False when the barrier is below twice the zero-point energy.
  bool reliable() const { return confinement_margin >= 2.0 * zero_point(); }
};

struct LevelEstimate {
  std::vector<int> quantum_numbers;
  double energy = 0;
  std::string well_label;
};

/// `context` is the stationary list used for the confinement margin; when
/// empty it is recomputed from the spec.
HarmonicWell harmonic_expand(const PotentialSpec& spec, const StationaryPoint& minimum,
                             std::span<const StationaryPoint> context = {});

/// All levels with energy ≤ e_max, ascending (ties ordered by quantum numbers).
std::vector<LevelEstimate> levels(const HarmonicWell& well, double e_max);

struct GroundCandidate {
  std::string label;
  int multiplicity = 1;
  double ground_estimate = 0;
  double classical_value = 0;
  HarmonicWell well;
};

std::vector<GroundCandidate> ground_candidates(const PotentialSpec& spec);
std::vector<GroundCandidate> ground_candidates(const PotentialSpec& spec,
                                               const StationarySet& set);

enum class BoundaryKind { quantum, classical };
std::string_view to_string(BoundaryKind kind);

/// Winning label(s); more than one entry means an unresolved tie.
struct Dominance {
  std::vector<std::string> labels;
  double energy = 0;
  std::string joined() const;
  bool tie() const { return labels.size() > 1; }
};

/// Relative tolerance under which two candidate energies are a tie.
inline constexpr double kTieTolerance = 1e-12;

/// quantum: smallest ground estimate; classical: smallest minimum value.
Dominance dominant_of(std::span<const GroundCandidate> candidates, BoundaryKind kind);
Dominance dominant_minimum(const PotentialSpec& spec);

}  // namespace polydots

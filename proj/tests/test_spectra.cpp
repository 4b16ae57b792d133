#include <cmath>

#include "doctest.h"
#include "polydots/errors.hpp"
#include "polydots/spectra.hpp"

using namespace polydots;

namespace {

PotentialSpec five_wells() {
  ShapeParams sh;
  sh.axes = {AxisShape{1.0, 1.305}, AxisShape{1.0, 1.305}};
  sh.u = -16.0 / 3;
  return PotentialSpec::from_shape(Family::butterfly2d, sh);
}

PotentialSpec butterfly1d_shape(double alpha, double beta) {
  ShapeParams sh;
  sh.axes = {AxisShape{alpha * alpha, beta * beta}};
  return PotentialSpec::from_shape(Family::butterfly1d, sh);
}

}  // namespace

TEST_SUITE("spectra") {
  TEST_CASE("harmonic model of the cusp minimum follows the terminating Taylor series") {
    // Around (α, 0): −α⁴ + 4α²ξ² + 2(α²−β²)y², so h = 8α² and 4(α²−β²).
    const double al = 2, be = 1;
    const auto spec = PotentialSpec::cusp2d(al * al, be * be);
    const auto set = stationary_points(spec);
    const auto well = harmonic_expand(spec, *set.find("x:alpha"), set.points);
    CHECK(well.v0 == doctest::Approx(-16));
    CHECK(well.stiffnesses(0) == doctest::Approx(4 * (al * al - be * be)));
    CHECK(well.stiffnesses(1) == doctest::Approx(8 * al * al));
    CHECK(well.frequencies(0) == doctest::Approx(std::sqrt(6.0)));
    CHECK(well.frequencies(1) == doctest::Approx(4.0));
    CHECK(well.ground_energy() == doctest::Approx(-16 + 4 + std::sqrt(6.0)));
    CHECK(well.confinement_margin == doctest::Approx(15.0));
    CHECK(well.reliable());
    // Normal modes are the coordinate axes here.
    CHECK(std::abs(well.modes(1, 0)) == doctest::Approx(1.0));
  }

  TEST_CASE("level ladder") {
    const auto spec = PotentialSpec::cusp2d(4.0, 1.0);
    const auto well = harmonic_expand(spec, *stationary_points(spec).find("x:alpha"));
    const double w0 = std::sqrt(6.0), w1 = 4.0, v0 = -16.0;
    const auto lv = levels(well, v0 + 20.0);
    REQUIRE(lv.size() >= 3);
    CHECK(lv[0].energy == doctest::Approx(v0 + w0 + w1));
    CHECK(lv[0].quantum_numbers == std::vector<int>{0, 0});
    CHECK(lv[1].energy == doctest::Approx(v0 + 3 * w0 + w1));
    CHECK(lv[2].energy == doctest::Approx(v0 + w0 + 3 * w1));
    for (std::size_t i = 1; i < lv.size(); ++i) CHECK(lv[i - 1].energy <= lv[i].energy);
    for (const auto& l : lv) {
      CHECK(l.energy <= v0 + 20.0);
      CHECK(l.energy == doctest::Approx(v0 + (2 * l.quantum_numbers[0] + 1) * w0 +
                                        (2 * l.quantum_numbers[1] + 1) * w1));
    }
    CHECK(levels(well, v0).empty());
  }

  TEST_CASE("five-well butterfly: zero-point energy moves the dominant well") {
    const auto spec = five_wells();
    const auto candidates = ground_candidates(spec);
    CHECK(candidates.size() == 3);
    const auto q = dominant_of(candidates, BoundaryKind::quantum);
    CHECK(q.labels == std::vector<std::string>{"origin"});
    const auto c = dominant_of(candidates, BoundaryKind::classical);
    CHECK(c.labels == std::vector<std::string>{"x:gamma", "y:gamma"});
    CHECK(c.tie());
    CHECK(c.joined() == "x:gamma|y:gamma");
    CHECK(dominant_minimum(spec).labels == q.labels);
  }

  TEST_CASE("harmonic ground energies of the one-dimensional butterfly") {
    // V = x⁶ − 3A x⁴ + 3C x²: V'' = 30x⁴ − 36A x² + 6C and E = V + √(V''/2).
    const double al = 1.9, be = 2.0;
    const double A = al * al + be * be, C = al * al * (al * al + 2 * be * be);
    const auto spec = butterfly1d_shape(al, be);
    const auto cands = ground_candidates(spec);
    const double g2 = al * al + 2 * be * be;
    const double v_outer = g2 * g2 * g2 - 3 * A * g2 * g2 + 3 * C * g2;
    const double h_outer = 30 * g2 * g2 - 36 * A * g2 + 6 * C;
    for (const auto& c : cands) {
      if (c.label == "origin") CHECK(c.ground_estimate == doctest::Approx(std::sqrt(3 * C)));
      if (c.label == "x:gamma") {
        CHECK(c.classical_value == doctest::Approx(v_outer));
        CHECK(c.ground_estimate == doctest::Approx(v_outer + std::sqrt(h_outer / 2)));
      }
    }
    CHECK(dominant_minimum(spec).labels == std::vector<std::string>{"x:gamma"});
    CHECK(dominant_minimum(butterfly1d_shape(2.1, 2.0)).labels == std::vector<std::string>{"origin"});
  }

  TEST_CASE("shallow wells are flagged unreliable") {
    const auto cands = ground_candidates(five_wells());
    for (const auto& c : cands) CHECK_FALSE(c.well.reliable());
  }

  TEST_CASE("Mexican-hat limit has no isolated minimum") {
    CHECK_THROWS_AS(ground_candidates(PotentialSpec::cusp2d(1.0, 1.0)), DegenerateWell);
  }
}

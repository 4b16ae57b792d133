#include <cmath>

#include "doctest.h"
#include "polydots/contour.hpp"

using namespace polydots;

namespace {

std::vector<double> axis(double lo, double hi, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
  return v;
}

template <class F>
std::vector<double> sample(const std::vector<double>& xs, const std::vector<double>& ys, F f) {
  std::vector<double> out;
  for (double y : ys) {
    for (double x : xs) out.push_back(f(x, y));
  }
  return out;
}

}  // namespace

TEST_SUITE("contour") {
  TEST_CASE("circle becomes one closed loop") {
    const auto xs = axis(-2, 2, 81), ys = axis(-2, 2, 81);
    const auto f = sample(xs, ys, [](double x, double y) { return x * x + y * y - 1; });
    const auto lines = zero_contours(xs, ys, f);
    REQUIRE(lines.size() == 1);
    CHECK(lines[0].closed);
    CHECK(lines[0].vertices.size() > 40);
    const double h = 0.05;
    for (const auto& v : lines[0].vertices) {
      CHECK(std::abs(std::hypot(v[0], v[1]) - 1) < h * h);
    }
  }

  TEST_CASE("line crossing the window stays open and exact") {
    const auto xs = axis(0, 1, 11), ys = axis(0, 1, 7);
    const auto f = sample(xs, ys, [](double x, double y) { return x + 0.5 * y - 0.6; });
    const auto lines = zero_contours(xs, ys, f);
    REQUIRE(lines.size() == 1);
    CHECK_FALSE(lines[0].closed);
    for (const auto& v : lines[0].vertices) CHECK(v[0] + 0.5 * v[1] == doctest::Approx(0.6));
  }

  TEST_CASE("no sign change, no contour") {
    const auto xs = axis(0, 1, 5), ys = axis(0, 1, 5);
    CHECK(zero_contours(xs, ys, sample(xs, ys, [](double, double) { return 1.0; })).empty());
  }

  TEST_CASE("saddle cells do not merge the branches of a hyperbola") {
    const auto xs = axis(-1, 1, 20), ys = axis(-1, 1, 20);
    const auto f = sample(xs, ys, [](double x, double y) { return x * y - 0.01; });
    const auto lines = zero_contours(xs, ys, f);
    REQUIRE(lines.size() == 2);
    for (const auto& l : lines) {
      const double sx = l.vertices.front()[0];
      for (const auto& v : l.vertices) CHECK(v[0] * sx > 0);
    }
  }

  TEST_CASE("cell filter removes excluded cells") {
    const auto xs = axis(0, 1, 11), ys = axis(0, 1, 11);
    const auto f = sample(xs, ys, [](double x, double) { return x - 0.55; });
    const auto all = zero_contours(xs, ys, f);
    REQUIRE(all.size() == 1);
    const auto lower = zero_contours(xs, ys, f, [](int, int iy) { return iy < 5; });
    REQUIRE(lower.size() == 1);
    for (const auto& v : lower[0].vertices) CHECK(v[1] <= 0.5 + 1e-12);
    CHECK(zero_contours(xs, ys, f, [](int, int) { return false; }).empty());
  }
}

#pragma once

#include <array>
#include <functional>
#include <vector>

namespace polydots {

struct Polyline {
  std::vector<std::array<double, 2>> vertices;
  bool closed = false;
};

/// Marching squares for the zero level of a sampled scalar field.
///
/// `field` is row-major with field[iy * xs.size() + ix]. Cells with a NaN
/// corner, or rejected by `cell_filter(ix, iy)`, produce no segments.
/// Ambiguous saddle cells are resolved by the sign of the cell average.
/// Segments sharing an edge crossing are joined into polylines.
std::vector<Polyline> zero_contours(const std::vector<double>& xs, const std::vector<double>& ys,
                                    const std::vector<double>& field,
                                    const std::function<bool(int, int)>& cell_filter = {});

}  // namespace polydots

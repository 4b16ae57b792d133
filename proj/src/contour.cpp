#include "polydots/contour.hpp"

#include <cmath>
#include <map>
#include <utility>

namespace polydots {

namespace {

// Edge identifiers: horizontal edge from (ix, iy) to (ix+1, iy) is 2·node,
// vertical edge from (ix, iy) to (ix, iy+1) is 2·node + 1.
using EdgeId = long long;

}  // namespace

std::vector<Polyline> zero_contours(const std::vector<double>& xs, const std::vector<double>& ys,
                                    const std::vector<double>& field,
                                    const std::function<bool(int, int)>& cell_filter) {
  const int nx = static_cast<int>(xs.size());
  const int ny = static_cast<int>(ys.size());
  auto at = [&](int ix, int iy) { return field[static_cast<std::size_t>(iy) * nx + ix]; };
  auto node = [&](int ix, int iy) { return static_cast<EdgeId>(iy) * nx + ix; };

  std::map<EdgeId, std::array<double, 2>> points;
  std::map<EdgeId, std::vector<EdgeId>> links;

  auto cross = [&](int ix0, int iy0, int ix1, int iy1, EdgeId id) {
    const double f0 = at(ix0, iy0);
    const double f1 = at(ix1, iy1);
    const double t = f0 / (f0 - f1);
    points[id] = {xs[ix0] + t * (xs[ix1] - xs[ix0]), ys[iy0] + t * (ys[iy1] - ys[iy0])};
    return id;
  };

  for (int iy = 0; iy + 1 < ny; ++iy) {
    for (int ix = 0; ix + 1 < nx; ++ix) {
      const double f00 = at(ix, iy), f10 = at(ix + 1, iy);
      const double f01 = at(ix, iy + 1), f11 = at(ix + 1, iy + 1);
      if (std::isnan(f00) || std::isnan(f10) || std::isnan(f01) || std::isnan(f11)) continue;
      if (cell_filter && !cell_filter(ix, iy)) continue;
      const bool p00 = f00 > 0, p10 = f10 > 0, p01 = f01 > 0, p11 = f11 > 0;
      // Edges in counter-clockwise order: bottom, right, top, left.
      std::vector<EdgeId> hits;
      if (p00 != p10) hits.push_back(cross(ix, iy, ix + 1, iy, 2 * node(ix, iy)));
      if (p10 != p11) hits.push_back(cross(ix + 1, iy, ix + 1, iy + 1, 2 * node(ix + 1, iy) + 1));
      if (p01 != p11) hits.push_back(cross(ix, iy + 1, ix + 1, iy + 1, 2 * node(ix, iy + 1)));
      if (p00 != p01) hits.push_back(cross(ix, iy, ix, iy + 1, 2 * node(ix, iy) + 1));
      std::vector<std::pair<EdgeId, EdgeId>> segments;
      if (hits.size() == 2) {
        segments.emplace_back(hits[0], hits[1]);
      } else if (hits.size() == 4) {
        // Saddle: the centre sign decides which corners are connected.
        const bool centre_positive = (f00 + f10 + f01 + f11) > 0;
        if (centre_positive == p00) {
          segments.emplace_back(hits[0], hits[1]);
          segments.emplace_back(hits[2], hits[3]);
        } else {
          segments.emplace_back(hits[0], hits[3]);
          segments.emplace_back(hits[1], hits[2]);
        }
      }
      for (auto [a, b] : segments) {
        links[a].push_back(b);
        links[b].push_back(a);
      }
    }
  }

  std::vector<Polyline> out;
  std::map<EdgeId, bool> visited;
  auto walk = [&](EdgeId start) {
    Polyline line;
    EdgeId prev = -1;
    EdgeId cur = start;
    while (true) {
      visited[cur] = true;
      line.vertices.push_back(points[cur]);
      EdgeId next = -1;
      for (EdgeId cand : links[cur]) {
        if (cand != prev && !visited[cand]) {
          next = cand;
          break;
        }
      }
      if (next < 0) {
        for (EdgeId cand : links[cur]) {
          if (cand == start && cand != prev && line.vertices.size() > 2) {
            line.closed = true;
            line.vertices.push_back(points[start]);
          }
        }
        break;
      }
      prev = cur;
      cur = next;
    }
    out.push_back(std::move(line));
  };
  // Open chains first (endpoints have a single link), then loops.
  for (const auto& [id, nbrs] : links) {
    if (nbrs.size() == 1 && !visited[id]) walk(id);
  }
  for (const auto& [id, nbrs] : links) {
    if (!visited[id]) walk(id);
  }
  return out;
}

}  // namespace polydots

#include "bushfire/app/front.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <utility>

namespace bushfire::app {

namespace {

using Key = std::int64_t;

struct Crossing {
  Key key = 0;
  Point point;
};

class ContourBuilder {
 public:
  ContourBuilder(const GridSpec& grid, std::vector<double> d) : grid_(grid), d_(std::move(d)) {}

  void march() {
    for (int j = 0; j + 1 < grid_.ny(); ++j) {
      for (int i = 0; i + 1 < grid_.nx(); ++i) cell(i, j);
    }
  }

  std::vector<std::vector<Point>> chain() const;

 private:
  double d(int i, int j) const { return d_[grid_.index(i, j)]; }
  bool inside(int i, int j) const { return d(i, j) >= 0.0; }

  Key node_key(int i, int j) const {
    return static_cast<Key>(2 * grid_.size() + grid_.index(i, j));
  }

  // Crossing on the edge from node (i0, j0) to node (i1, j1); edge_id names the edge.
  Crossing crossing(int i0, int j0, int i1, int j1, Key edge_id) const {
    const double d0 = d(i0, j0);
    const double d1 = d(i1, j1);
    const double t = d0 / (d0 - d1);
    if (t <= 0.0) return {node_key(i0, j0), {grid_.x(i0), grid_.y(j0)}};
    if (t >= 1.0) return {node_key(i1, j1), {grid_.x(i1), grid_.y(j1)}};
    const Point p{grid_.x(i0) + t * (grid_.x(i1) - grid_.x(i0)),
                  grid_.y(j0) + t * (grid_.y(j1) - grid_.y(j0))};
    return {edge_id, p};
  }

  void cell(int i, int j);
  void add_segment(const Crossing& a, const Crossing& b);

  const GridSpec& grid_;
  std::vector<double> d_;
  std::map<Key, Point> points_;
  std::vector<std::pair<Key, Key>> segments_;
  std::set<std::pair<Key, Key>> seen_;
};

void ContourBuilder::cell(int i, int j) {
  // Corners counterclockwise from the lower left; edge k joins corner k and k + 1.
  const std::array<std::pair<int, int>, 4> c{{{i, j}, {i + 1, j}, {i + 1, j + 1}, {i, j + 1}}};
  std::array<bool, 4> in{};
  int count = 0;
  for (int k = 0; k < 4; ++k) {
    in[k] = inside(c[k].first, c[k].second);
    count += in[k] ? 1 : 0;
  }
  if (count == 0 || count == 4) return;

  const auto edge_id = [&](int k) -> Key {
    const std::size_t base = grid_.index(i, j);
    switch (k) {
      case 0: return static_cast<Key>(2 * base);
      case 1: return static_cast<Key>(2 * grid_.index(i + 1, j) + 1);
      case 2: return static_cast<Key>(2 * grid_.index(i, j + 1));
      default: return static_cast<Key>(2 * base + 1);
    }
  };
  std::array<Crossing, 4> x{};
  std::array<bool, 4> crossed{};
  for (int k = 0; k < 4; ++k) {
    const int n = (k + 1) % 4;
    crossed[k] = in[k] != in[n];
    if (!crossed[k]) continue;
    // Orient every edge along increasing x or y so shared edges give identical points.
    if (k < 2) {
      x[k] = crossing(c[k].first, c[k].second, c[n].first, c[n].second, edge_id(k));
    } else {
      x[k] = crossing(c[n].first, c[n].second, c[k].first, c[k].second, edge_id(k));
    }
  }

  if (count == 2 && in[0] == in[2]) {
    double center = 0.0;
    for (const auto& [ci, cj] : c) center += d(ci, cj);
    center *= 0.25;
    const bool cut_inside = center < 0.0;
    // Cut off each corner of the kind being separated: corner k touches edges k - 1 and k.
    for (int k = 0; k < 4; ++k) {
      if (in[k] == cut_inside) add_segment(x[(k + 3) % 4], x[k]);
    }
    return;
  }

  std::array<int, 2> edges{};
  int found = 0;
  for (int k = 0; k < 4; ++k) {
    if (crossed[k]) edges[found++] = k;
  }
  add_segment(x[edges[0]], x[edges[1]]);
}

void ContourBuilder::add_segment(const Crossing& a, const Crossing& b) {
  if (a.key == b.key) return;
  const auto id = std::minmax(a.key, b.key);
  if (!seen_.insert(id).second) return;
  points_.emplace(a.key, a.point);
  points_.emplace(b.key, b.point);
  segments_.emplace_back(a.key, b.key);
}

std::vector<std::vector<Point>> ContourBuilder::chain() const {
  std::map<Key, std::vector<std::size_t>> incident;
  for (std::size_t s = 0; s < segments_.size(); ++s) {
    incident[segments_[s].first].push_back(s);
    incident[segments_[s].second].push_back(s);
  }
  std::vector<bool> used(segments_.size(), false);

  const auto walk = [&](Key start) {
    std::vector<Point> line{points_.at(start)};
    Key at = start;
    for (;;) {
      std::size_t next = segments_.size();
      for (std::size_t s : incident.at(at)) {
        if (!used[s]) {
          next = s;
          break;
        }
      }
      if (next == segments_.size()) break;
      used[next] = true;
      at = segments_[next].first == at ? segments_[next].second : segments_[next].first;
      line.push_back(points_.at(at));
    }
    return line;
  };

  std::vector<std::vector<Point>> out;
  // Open chains start at keys of odd degree; whatever remains forms loops.
  for (const auto& [key, segs] : incident) {
    if (segs.size() % 2 == 0) continue;
    while (std::any_of(segs.begin(), segs.end(), [&](std::size_t s) { return !used[s]; })) {
      out.push_back(walk(key));
    }
  }
  for (std::size_t s = 0; s < segments_.size(); ++s) {
    if (!used[s]) out.push_back(walk(segments_[s].first));
  }
  return out;
}

}  // namespace

FrontContour extract_front(const ScalarField& u, const ScalarField& theta, double time) {
  require_same_grid(u.grid(), theta.grid(), "extract_front");
  std::vector<double> d(u.size());
  for (std::size_t k = 0; k < d.size(); ++k) d[k] = u[k] - theta[k];
  ContourBuilder builder(u.grid(), std::move(d));
  builder.march();
  return {time, builder.chain()};
}

}  // namespace bushfire::app

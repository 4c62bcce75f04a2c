#pragma once

#include <vector>

#include "bushfire/grid.hpp"

namespace bushfire::app {

struct Point {
  double x = 0.0;
  double y = 0.0;

  bool operator==(const Point&) const = default;
};

/// Zero level of u - theta at one time. Closed polylines repeat their first point.
struct FrontContour {
  double time = 0.0;
  std::vector<std::vector<Point>> polylines;
};

/// Marching squares on d = u - theta at level 0.
///
/// A node counts as burning when d >= 0. Crossings are placed by linear
/// interpolation along cell edges, so a node with d = 0 lies on the contour.
/// Saddle cells join the burning corners when the average of the four
/// corners is >= 0 and separate them otherwise.
FrontContour extract_front(const ScalarField& u, const ScalarField& theta, double time = 0.0);

}  // namespace bushfire::app

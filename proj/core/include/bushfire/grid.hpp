#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace bushfire {

/// Node-centered discretization of the rectangle [0, lx] x [0, ly].
///
/// Nodes are indexed (i, j) with i along x and j along y; the flat index is
/// j * nx + i. The outer ring of nodes is the Dirichlet boundary.
class GridSpec {
 public:
  GridSpec(int nx, int ny, double lx, double ly);

  /// Square grid with n nodes per side.
  static GridSpec unit_square(int n) { return GridSpec(n, n, 1.0, 1.0); }

  int nx() const noexcept { return nx_; }
  int ny() const noexcept { return ny_; }
  double lx() const noexcept { return lx_; }
  double ly() const noexcept { return ly_; }
  double hx() const noexcept { return hx_; }
  double hy() const noexcept { return hy_; }
  double area() const noexcept { return lx_ * ly_; }

  std::size_t size() const noexcept { return static_cast<std::size_t>(nx_) * ny_; }
  std::size_t interior_size() const noexcept {
    return static_cast<std::size_t>(nx_ - 2) * (ny_ - 2);
  }

  std::size_t index(int i, int j) const noexcept {
    return static_cast<std::size_t>(j) * nx_ + i;
  }
  /// Position of interior node (i, j) among interior nodes, same ordering.
  std::size_t interior_index(int i, int j) const noexcept {
    return static_cast<std::size_t>(j - 1) * (nx_ - 2) + (i - 1);
  }

  double x(int i) const noexcept { return i * hx_; }
  double y(int j) const noexcept { return j * hy_; }

  bool is_boundary(int i, int j) const noexcept {
    return i == 0 || j == 0 || i == nx_ - 1 || j == ny_ - 1;
  }

  /// Trapezoidal quadrature weight of node (i, j).
  double weight(int i, int j) const noexcept;

  friend bool operator==(const GridSpec& a, const GridSpec& b) noexcept {
    return a.nx_ == b.nx_ && a.ny_ == b.ny_ && a.lx_ == b.lx_ && a.ly_ == b.ly_;
  }

 private:
  int nx_;
  int ny_;
  double lx_;
  double ly_;
  double hx_;
  double hy_;
};

/// Throws ConfigError naming `what` if the two grids differ.
void require_same_grid(const GridSpec& a, const GridSpec& b, const char* what);

/// One real value per node.
class ScalarField {
 public:
  explicit ScalarField(const GridSpec& grid, double fill = 0.0);
  ScalarField(const GridSpec& grid, std::vector<double> values);

  /// Samples f(x, y) at every node.
  static ScalarField from_function(const GridSpec& grid,
                                   const std::function<double(double, double)>& f);

  const GridSpec& grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }

  double operator()(int i, int j) const noexcept { return values_[grid_.index(i, j)]; }
  double& operator()(int i, int j) noexcept { return values_[grid_.index(i, j)]; }
  double operator[](std::size_t k) const noexcept { return values_[k]; }
  double& operator[](std::size_t k) noexcept { return values_[k]; }

  /// Pins the boundary ring to zero (homogeneous Dirichlet data).
  ScalarField& zero_boundary() noexcept;
  /// True when every boundary-ring value is exactly zero.
  bool satisfies_dirichlet() const noexcept;
  bool all_finite() const noexcept;

  double max_abs() const noexcept;

  ScalarField& operator+=(const ScalarField& other);
  ScalarField& operator-=(const ScalarField& other);
  ScalarField& operator*=(double s) noexcept;

  friend ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
  friend ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
  friend ScalarField operator*(double s, ScalarField a) { return a *= s; }
  friend ScalarField operator*(ScalarField a, double s) { return a *= s; }

  friend bool operator==(const ScalarField& a, const ScalarField& b) {
    return a.grid_ == b.grid_ && a.values_ == b.values_;
  }

 private:
  GridSpec grid_;
  std::vector<double> values_;
};

/// Two reals per node, stored as separate component arrays.
class VectorField {
 public:
  explicit VectorField(const GridSpec& grid, double fill_x = 0.0, double fill_y = 0.0);
  VectorField(const GridSpec& grid, std::vector<double> xs, std::vector<double> ys);

  const GridSpec& grid() const noexcept { return grid_; }
  std::span<const double> xs() const noexcept { return x_; }
  std::span<const double> ys() const noexcept { return y_; }
  std::span<double> xs() noexcept { return x_; }
  std::span<double> ys() noexcept { return y_; }
  std::size_t size() const noexcept { return x_.size(); }

  /// Euclidean length of the vector at flat index k.
  double magnitude(std::size_t k) const noexcept;
  /// max over nodes of the Euclidean length.
  double sup_norm() const noexcept;
  bool all_finite() const noexcept;

  friend bool operator==(const VectorField& a, const VectorField& b) {
    return a.grid_ == b.grid_ && a.x_ == b.x_ && a.y_ == b.y_;
  }

 private:
  GridSpec grid_;
  std::vector<double> x_;
  std::vector<double> y_;
};

/// Central differences inside, one-sided first-order differences on the ring.
VectorField gradient(const ScalarField& f);

/// 5-point Laplacian at interior nodes; zero on the boundary ring.
ScalarField laplacian(const ScalarField& f);

/// Trapezoidal quadrature of f over the rectangle.
double integrate(const ScalarField& f);

/// Trapezoidal quadrature of the pointwise product f * g.
double inner(const ScalarField& f, const ScalarField& g);

double l2_norm(const ScalarField& f);
double h1_seminorm(const ScalarField& f);
double h1_norm(const ScalarField& f);

/// Quadrature of |v|^2 over the rectangle.
double squared_l2(const VectorField& v);

inline double positive_part(double a) noexcept { return a > 0.0 ? a : 0.0; }
inline double negative_part(double a) noexcept { return a < 0.0 ? -a : 0.0; }

}  // namespace bushfire

#include "bushfire/grid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bushfire/errors.hpp"

namespace bushfire {

GridSpec::GridSpec(int nx, int ny, double lx, double ly)
    : nx_(nx), ny_(ny), lx_(lx), ly_(ly), hx_(0.0), hy_(0.0) {
  if (nx < 3 || ny < 3) {
    std::ostringstream msg;
    msg << "grid needs at least 3 nodes per axis, got " << nx << "x" << ny;
    throw ConfigError(msg.str());
  }
  if (!(lx > 0.0) || !(ly > 0.0) || !std::isfinite(lx) || !std::isfinite(ly)) {
    throw ConfigError("grid side lengths must be positive and finite");
  }
  hx_ = lx / (nx - 1);
  hy_ = ly / (ny - 1);
}

double GridSpec::weight(int i, int j) const noexcept {
  double w = hx_ * hy_;
  if (i == 0 || i == nx_ - 1) w *= 0.5;
  if (j == 0 || j == ny_ - 1) w *= 0.5;
  return w;
}

void require_same_grid(const GridSpec& a, const GridSpec& b, const char* what) {
  if (!(a == b)) {
    std::ostringstream msg;
    msg << what << ": grid mismatch (" << a.nx() << "x" << a.ny() << " vs " << b.nx() << "x"
        << b.ny() << ")";
    throw ConfigError(msg.str());
  }
}

// ScalarField

ScalarField::ScalarField(const GridSpec& grid, double fill)
    : grid_(grid), values_(grid.size(), fill) {}

ScalarField::ScalarField(const GridSpec& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw ConfigError("scalar field size does not match grid node count");
  }
}

ScalarField ScalarField::from_function(const GridSpec& grid,
                                       const std::function<double(double, double)>& f) {
  ScalarField out(grid);
  for (int j = 0; j < grid.ny(); ++j) {
    for (int i = 0; i < grid.nx(); ++i) out(i, j) = f(grid.x(i), grid.y(j));
  }
  return out;
}

ScalarField& ScalarField::zero_boundary() noexcept {
  const int nx = grid_.nx();
  const int ny = grid_.ny();
  for (int i = 0; i < nx; ++i) {
    (*this)(i, 0) = 0.0;
    (*this)(i, ny - 1) = 0.0;
  }
  for (int j = 0; j < ny; ++j) {
    (*this)(0, j) = 0.0;
    (*this)(nx - 1, j) = 0.0;
  }
  return *this;
}

bool ScalarField::satisfies_dirichlet() const noexcept {
  const int nx = grid_.nx();
  const int ny = grid_.ny();
  for (int i = 0; i < nx; ++i) {
    if ((*this)(i, 0) != 0.0 || (*this)(i, ny - 1) != 0.0) return false;
  }
  for (int j = 0; j < ny; ++j) {
    if ((*this)(0, j) != 0.0 || (*this)(nx - 1, j) != 0.0) return false;
  }
  return true;
}

bool ScalarField::all_finite() const noexcept {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

double ScalarField::max_abs() const noexcept {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

ScalarField& ScalarField::operator+=(const ScalarField& other) {
  require_same_grid(grid_, other.grid_, "field addition");
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += other.values_[k];
  return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& other) {
  require_same_grid(grid_, other.grid_, "field subtraction");
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] -= other.values_[k];
  return *this;
}

ScalarField& ScalarField::operator*=(double s) noexcept {
  for (double& v : values_) v *= s;
  return *this;
}

// VectorField

VectorField::VectorField(const GridSpec& grid, double fill_x, double fill_y)
    : grid_(grid), x_(grid.size(), fill_x), y_(grid.size(), fill_y) {}

VectorField::VectorField(const GridSpec& grid, std::vector<double> xs, std::vector<double> ys)
    : grid_(grid), x_(std::move(xs)), y_(std::move(ys)) {
  if (x_.size() != grid_.size() || y_.size() != grid_.size()) {
    throw ConfigError("vector field size does not match grid node count");
  }
}

double VectorField::magnitude(std::size_t k) const noexcept { return std::hypot(x_[k], y_[k]); }

double VectorField::sup_norm() const noexcept {
  double m = 0.0;
  for (std::size_t k = 0; k < x_.size(); ++k) m = std::max(m, magnitude(k));
  return m;
}

bool VectorField::all_finite() const noexcept {
  auto finite = [](double v) { return std::isfinite(v); };
  return std::all_of(x_.begin(), x_.end(), finite) && std::all_of(y_.begin(), y_.end(), finite);
}

// Stencils and quadrature

VectorField gradient(const ScalarField& f) {
  const GridSpec& g = f.grid();
  const int nx = g.nx();
  const int ny = g.ny();
  VectorField out(g);
  auto xs = out.xs();
  auto ys = out.ys();
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const std::size_t k = g.index(i, j);
      if (i == 0) {
        xs[k] = (f(1, j) - f(0, j)) / g.hx();
      } else if (i == nx - 1) {
        xs[k] = (f(nx - 1, j) - f(nx - 2, j)) / g.hx();
      } else {
        xs[k] = (f(i + 1, j) - f(i - 1, j)) / (2.0 * g.hx());
      }
      if (j == 0) {
        ys[k] = (f(i, 1) - f(i, 0)) / g.hy();
      } else if (j == ny - 1) {
        ys[k] = (f(i, ny - 1) - f(i, ny - 2)) / g.hy();
      } else {
        ys[k] = (f(i, j + 1) - f(i, j - 1)) / (2.0 * g.hy());
      }
    }
  }
  return out;
}

ScalarField laplacian(const ScalarField& f) {
  const GridSpec& g = f.grid();
  const double ihx2 = 1.0 / (g.hx() * g.hx());
  const double ihy2 = 1.0 / (g.hy() * g.hy());
  ScalarField out(g);
  for (int j = 1; j < g.ny() - 1; ++j) {
    for (int i = 1; i < g.nx() - 1; ++i) {
      const double c = f(i, j);
      out(i, j) = (f(i + 1, j) + f(i - 1, j) - 2.0 * c) * ihx2 +
                  (f(i, j + 1) + f(i, j - 1) - 2.0 * c) * ihy2;
    }
  }
  return out;
}

double integrate(const ScalarField& f) {
  const GridSpec& g = f.grid();
  double sum = 0.0;
  for (int j = 0; j < g.ny(); ++j) {
    for (int i = 0; i < g.nx(); ++i) sum += g.weight(i, j) * f(i, j);
  }
  return sum;
}

double inner(const ScalarField& f, const ScalarField& h) {
  require_same_grid(f.grid(), h.grid(), "inner product");
  const GridSpec& g = f.grid();
  double sum = 0.0;
  for (int j = 0; j < g.ny(); ++j) {
    for (int i = 0; i < g.nx(); ++i) sum += g.weight(i, j) * f(i, j) * h(i, j);
  }
  return sum;
}

double squared_l2(const VectorField& v) {
  const GridSpec& g = v.grid();
  auto xs = v.xs();
  auto ys = v.ys();
  double sum = 0.0;
  for (int j = 0; j < g.ny(); ++j) {
    for (int i = 0; i < g.nx(); ++i) {
      const std::size_t k = g.index(i, j);
      sum += g.weight(i, j) * (xs[k] * xs[k] + ys[k] * ys[k]);
    }
  }
  return sum;
}

double l2_norm(const ScalarField& f) { return std::sqrt(inner(f, f)); }

double h1_seminorm(const ScalarField& f) { return std::sqrt(squared_l2(gradient(f))); }

double h1_norm(const ScalarField& f) {
  return std::sqrt(inner(f, f) + squared_l2(gradient(f)));
}

}  // namespace bushfire

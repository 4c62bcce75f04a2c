#include "bushfire/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace bushfire {

// Kernel

Kernel::Kernel(const GridSpec& grid, Kind kind, int radius,
               std::shared_ptr<const std::vector<double>> data)
    : grid_(grid), kind_(kind), radius_(radius), data_(std::move(data)), l2_pairnorm_(0.0) {
  for (double v : *data_) {
    if (!std::isfinite(v)) throw ConfigError("kernel entries must be finite");
  }
  l2_pairnorm_ = compute_pairnorm();
}

Kernel Kernel::zero(const GridSpec& grid) {
  return Kernel(grid, Kind::stencil, 0, std::make_shared<const std::vector<double>>(1, 0.0));
}

Kernel Kernel::dense(const GridSpec& grid, std::vector<double> matrix) {
  const std::size_t n = grid.interior_size();
  if (matrix.size() != n * n) {
    std::ostringstream msg;
    msg << "dense kernel needs " << n * n << " entries (" << n << " interior nodes squared), got "
        << matrix.size();
    throw ConfigError(msg.str());
  }
  return Kernel(grid, Kind::dense, 0,
                std::make_shared<const std::vector<double>>(std::move(matrix)));
}

Kernel Kernel::dense_from_function(
    const GridSpec& grid, const std::function<double(double, double, double, double)>& k) {
  const std::size_t n = grid.interior_size();
  std::vector<double> m(n * n);
  for (int pj = 1; pj < grid.ny() - 1; ++pj) {
    for (int pi = 1; pi < grid.nx() - 1; ++pi) {
      const std::size_t p = grid.interior_index(pi, pj);
      for (int qj = 1; qj < grid.ny() - 1; ++qj) {
        for (int qi = 1; qi < grid.nx() - 1; ++qi) {
          m[p * n + grid.interior_index(qi, qj)] =
              k(grid.x(pi), grid.y(pj), grid.x(qi), grid.y(qj));
        }
      }
    }
  }
  return dense(grid, std::move(m));
}

Kernel Kernel::stencil(const GridSpec& grid, int radius, std::vector<double> window) {
  if (radius < 0) throw ConfigError("stencil kernel radius must be nonnegative");
  const std::size_t side = 2 * static_cast<std::size_t>(radius) + 1;
  if (window.size() != side * side) {
    throw ConfigError("stencil kernel window must have (2r+1)^2 entries");
  }
  return Kernel(grid, Kind::stencil, radius,
                std::make_shared<const std::vector<double>>(std::move(window)));
}

Kernel Kernel::gaussian(const GridSpec& grid, double amplitude, double width, int radius) {
  if (!(width > 0.0)) throw ConfigError("gaussian kernel width must be positive");
  const int side = 2 * radius + 1;
  std::vector<double> w(static_cast<std::size_t>(side) * side);
  for (int dj = -radius; dj <= radius; ++dj) {
    for (int di = -radius; di <= radius; ++di) {
      const double dx = di * grid.hx();
      const double dy = dj * grid.hy();
      w[(dj + radius) * side + (di + radius)] =
          amplitude * std::exp(-(dx * dx + dy * dy) / (2.0 * width * width));
    }
  }
  return stencil(grid, radius, std::move(w));
}

double Kernel::compute_pairnorm() const {
  const double w = grid_.hx() * grid_.hy();
  double sum = 0.0;
  if (kind_ == Kind::dense) {
    for (double v : *data_) sum += v * v;
    return w * std::sqrt(sum);
  }
  const int side = 2 * radius_ + 1;
  const int nx = grid_.nx();
  const int ny = grid_.ny();
  for (int pj = 1; pj < ny - 1; ++pj) {
    for (int pi = 1; pi < nx - 1; ++pi) {
      for (int dj = -radius_; dj <= radius_; ++dj) {
        const int qj = pj + dj;
        if (qj < 1 || qj > ny - 2) continue;
        for (int di = -radius_; di <= radius_; ++di) {
          const int qi = pi + di;
          if (qi < 1 || qi > nx - 2) continue;
          const double v = (*data_)[(dj + radius_) * side + (di + radius_)];
          sum += v * v;
        }
      }
    }
  }
  return w * std::sqrt(sum);
}

bool Kernel::nonnegative() const noexcept {
  return std::all_of(data_->begin(), data_->end(), [](double v) { return v >= 0.0; });
}

double Kernel::entry(std::size_t p, std::size_t q) const noexcept {
  if (kind_ == Kind::dense) return (*data_)[p * grid_.interior_size() + q];
  const auto m = static_cast<std::size_t>(grid_.nx() - 2);
  const int di = static_cast<int>(q % m) - static_cast<int>(p % m);
  const int dj = static_cast<int>(q / m) - static_cast<int>(p / m);
  if (std::abs(di) > radius_ || std::abs(dj) > radius_) return 0.0;
  return (*data_)[(dj + radius_) * (2 * radius_ + 1) + (di + radius_)];
}

Kernel Kernel::expanded() const {
  if (kind_ == Kind::dense) return *this;
  const std::size_t n = grid_.interior_size();
  std::vector<double> m(n * n);
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < n; ++q) m[p * n + q] = entry(p, q);
  }
  return dense(grid_, std::move(m));
}

Kernel Kernel::scaled(double factor) const {
  std::vector<double> d(*data_);
  for (double& v : d) v *= factor;
  return Kernel(grid_, kind_, radius_, std::make_shared<const std::vector<double>>(std::move(d)));
}

ScalarField Kernel::integrate_against(const ScalarField& density) const {
  require_same_grid(grid_, density.grid(), "kernel integration");
  const int nx = grid_.nx();
  const int ny = grid_.ny();
  const double w = grid_.hx() * grid_.hy();
  ScalarField out(grid_);
  const std::vector<double>& d = *data_;

  if (kind_ == Kind::dense) {
    const std::size_t n = grid_.interior_size();
    std::vector<double> rho(n);
    for (int j = 1; j < ny - 1; ++j) {
      for (int i = 1; i < nx - 1; ++i) rho[grid_.interior_index(i, j)] = density(i, j);
    }
    for (int j = 1; j < ny - 1; ++j) {
      for (int i = 1; i < nx - 1; ++i) {
        const double* row = d.data() + grid_.interior_index(i, j) * n;
        double sum = 0.0;
        for (std::size_t q = 0; q < n; ++q) sum += row[q] * rho[q];
        out(i, j) = w * sum;
      }
    }
    return out;
  }

  const int side = 2 * radius_ + 1;
  for (int pj = 1; pj < ny - 1; ++pj) {
    for (int pi = 1; pi < nx - 1; ++pi) {
      double sum = 0.0;
      for (int dj = -radius_; dj <= radius_; ++dj) {
        const int qj = pj + dj;
        if (qj < 1 || qj > ny - 2) continue;
        for (int di = -radius_; di <= radius_; ++di) {
          const int qi = pi + di;
          if (qi < 1 || qi > nx - 2) continue;
          sum += d[(dj + radius_) * side + (di + radius_)] * density(qi, qj);
        }
      }
      out(pi, pj) = w * sum;
    }
  }
  return out;
}

// BetaFunction

BetaFunction::BetaFunction(std::vector<double> breakpoints, std::vector<double> values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
  if (breakpoints_.size() < 2 || breakpoints_.size() != values_.size()) {
    throw ConfigError("beta table needs at least 2 breakpoints and one value per breakpoint");
  }
  for (std::size_t k = 0; k < breakpoints_.size(); ++k) {
    if (!std::isfinite(breakpoints_[k]) || !std::isfinite(values_[k])) {
      throw ConfigError("beta table entries must be finite");
    }
    if (k > 0 && !(breakpoints_[k] > breakpoints_[k - 1])) {
      throw ConfigError("beta breakpoints must be strictly increasing");
    }
  }
  for (std::size_t k = 0; k < values_.size(); ++k) {
    sup_norm_ = std::max(sup_norm_, std::abs(values_[k]));
    if (k > 0) {
      const double slope =
          (values_[k] - values_[k - 1]) / (breakpoints_[k] - breakpoints_[k - 1]);
      lip_const_ = std::max(lip_const_, std::abs(slope));
    }
  }
}

BetaFunction BetaFunction::constant(double value) { return BetaFunction({0.0, 1.0}, {value, value}); }

double BetaFunction::operator()(double a) const noexcept {
  if (a <= breakpoints_.front()) return values_.front();
  if (a >= breakpoints_.back()) return values_.back();
  const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), a);
  const std::size_t k = static_cast<std::size_t>(it - breakpoints_.begin());
  const double x0 = breakpoints_[k - 1];
  const double x1 = breakpoints_[k];
  const double s = (a - x0) / (x1 - x0);
  return values_[k - 1] + s * (values_[k] - values_[k - 1]);
}

BetaFunction BetaFunction::scaled(double factor) const {
  std::vector<double> v(values_);
  for (double& x : v) x *= factor;
  return BetaFunction(breakpoints_, std::move(v));
}

// Scenario

Scenario::Scenario(const GridSpec& grid_)
    : grid(grid_),
      kernel(Kernel::zero(grid_)),
      theta(ScalarField(grid_)),
      omega(VectorField(grid_)),
      beta(BetaFunction::constant(0.0)),
      g(grid_) {}

int Scenario::steps() const noexcept {
  const double ratio = horizon / dt;
  const double n = std::ceil(ratio * (1.0 - 1e-12));
  return std::max(1, static_cast<int>(n));
}

double Scenario::theta_neg_sup() const noexcept {
  double m = 0.0;
  for (const ScalarField& f : theta.fields()) {
    for (double v : f.values()) m = std::max(m, negative_part(v));
  }
  return m;
}

double Scenario::omega_sup() const noexcept {
  double m = 0.0;
  for (const VectorField& f : omega.fields()) m = std::max(m, f.sup_norm());
  return m;
}

std::vector<std::string> Scenario::problems(bool allow_linear_scaling) const {
  std::vector<std::string> out;
  const double gamma_lo = 1.0;
  const bool gamma_ok = allow_linear_scaling ? (gamma >= gamma_lo && gamma <= 2.0)
                                             : (gamma > gamma_lo && gamma <= 2.0);
  if (!gamma_ok) {
    std::ostringstream msg;
    msg << "gamma = " << gamma << " outside " << (allow_linear_scaling ? "[1, 2]" : "(1, 2]");
    out.push_back(msg.str());
  }
  if (!(kernel.grid() == grid)) out.emplace_back("kernel grid differs from scenario grid");
  for (const ScalarField& f : theta.fields()) {
    if (!(f.grid() == grid)) out.emplace_back("theta grid differs from scenario grid");
    if (!f.all_finite()) out.emplace_back("theta has non-finite values");
  }
  for (const VectorField& f : omega.fields()) {
    if (!(f.grid() == grid)) out.emplace_back("omega grid differs from scenario grid");
    if (!f.all_finite()) out.emplace_back("omega has non-finite values");
  }
  if (!(g.grid() == grid)) out.emplace_back("initial datum grid differs from scenario grid");
  if (!g.all_finite()) out.emplace_back("initial datum has non-finite values");
  if (!g.satisfies_dirichlet()) out.emplace_back("initial datum is nonzero on the boundary ring");
  if (!(horizon > 0.0) || !std::isfinite(horizon)) out.emplace_back("horizon must be positive");
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    out.emplace_back("dt must be positive");
  } else if (dt > horizon) {
    out.emplace_back("dt must not exceed the horizon");
  }
  if (!(picard_tol > 0.0)) out.emplace_back("picard_tol must be positive");
  if (picard_maxit < 1) out.emplace_back("picard_maxit must be at least 1");
  if (!(linear_tol > 0.0)) out.emplace_back("linear_tol must be positive");
  if (linear_maxit < 1) out.emplace_back("linear_maxit must be at least 1");
  return out;
}

void Scenario::validate(bool allow_linear_scaling) const {
  const auto list = problems(allow_linear_scaling);
  if (list.empty()) return;
  std::ostringstream msg;
  msg << "invalid scenario:";
  for (const auto& p : list) msg << "\n  " << p;
  throw ConfigError(msg.str());
}

// Forcing terms

ScalarField f1_forcing(const ScalarField& u, const ScalarField& theta, const Kernel& kernel) {
  require_same_grid(u.grid(), theta.grid(), "f1 forcing (u vs theta)");
  require_same_grid(u.grid(), kernel.grid(), "f1 forcing (u vs kernel)");
  ScalarField excess(u.grid());
  for (std::size_t k = 0; k < u.size(); ++k) excess[k] = positive_part(u[k] - theta[k]);
  return kernel.integrate_against(excess);
}

ScalarField f2_forcing(const ScalarField& u, const VectorField& omega, const BetaFunction& beta,
                       double gamma) {
  if (!(gamma >= 1.0 && gamma <= 2.0)) {
    std::ostringstream msg;
    msg << "gamma = " << gamma << " outside [1, 2]";
    throw ConfigError(msg.str());
  }
  require_same_grid(u.grid(), omega.grid(), "f2 forcing");
  const GridSpec& grid = u.grid();
  const VectorField grad = gradient(u);
  const auto gx = grad.xs();
  const auto gy = grad.ys();
  const auto wx = omega.xs();
  const auto wy = omega.ys();
  const double exponent = 2.0 - gamma;
  ScalarField out(grid);
  for (int j = 1; j < grid.ny() - 1; ++j) {
    for (int i = 1; i < grid.nx() - 1; ++i) {
      const std::size_t k = grid.index(i, j);
      const double mag = std::hypot(gx[k], gy[k]);
      double arg = wx[k] * gx[k] + wy[k] * gy[k];
      if (mag > 0.0) arg += beta(u[k]) * std::pow(mag, exponent);
      out[k] = negative_part(arg);
    }
  }
  return out;
}

namespace {

void require_time(double t, const Scenario& s) {
  const double lo = s.t0;
  const double hi = s.t0 + s.horizon;
  const double slack = 1e-12 * std::max(1.0, std::abs(hi));
  if (!(t >= lo - slack && t <= hi + slack)) {
    std::ostringstream msg;
    msg << "time " << t << " outside [" << lo << ", " << hi << "]";
    throw RangeError(msg.str());
  }
}

}  // namespace

ForcingParts forcing_parts(const ScalarField& u, double t, const Scenario& scenario) {
  require_time(t, scenario);
  return {f1_forcing(u, scenario.theta.at(t), scenario.kernel),
          f2_forcing(u, scenario.omega.at(t), scenario.beta, scenario.gamma)};
}

ScalarField total_forcing(const ScalarField& u, double t, const Scenario& scenario) {
  ForcingParts parts = forcing_parts(u, t, scenario);
  parts.f1 += parts.f2;
  return std::move(parts.f1);
}

}  // namespace bushfire

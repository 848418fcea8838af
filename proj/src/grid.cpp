#include "ladder/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "ladder/errors.hpp"

namespace ladder {

std::string to_string(GridKind kind) {
  switch (kind) {
    case GridKind::dirichlet_1d: return "dirichlet-1d";
    case GridKind::dirichlet_2d: return "dirichlet-2d";
    case GridKind::periodic_1d: return "periodic-1d";
  }
  return "unknown";
}

GridKind grid_kind_from_string(const std::string& name) {
  if (name == "dirichlet-1d") return GridKind::dirichlet_1d;
  if (name == "dirichlet-2d") return GridKind::dirichlet_2d;
  if (name == "periodic-1d") return GridKind::periodic_1d;
  throw ConfigError("unknown grid kind '" + name + "'");
}

double magnitude(const Xi& xi) { return std::hypot(xi[0], xi[1]); }

namespace {

constexpr int kMinCells = 4;

void check_interval(double lo, double hi, int cells, const char* axis) {
  if (!(std::isfinite(lo) && std::isfinite(hi)) || !(hi > lo)) {
    std::ostringstream os;
    os << "grid: " << axis << "-interval must have positive length, got [" << lo << ", " << hi
       << "]";
    throw ConfigError(os.str());
  }
  if (cells < kMinCells) {
    std::ostringstream os;
    os << "grid: need at least " << kMinCells << " cells along " << axis << ", got " << cells;
    throw ConfigError(os.str());
  }
}

}  // namespace

Grid Grid::dirichlet_1d(double x_lo, double x_hi, int cells) {
  check_interval(x_lo, x_hi, cells, "x");
  Grid g;
  g.kind_ = GridKind::dirichlet_1d;
  g.x_lo_ = x_lo;
  g.x_hi_ = x_hi;
  g.cells_x_ = cells;
  g.cells_y_ = 0;
  g.hx_ = (x_hi - x_lo) / cells;
  g.hy_ = g.hx_;
  g.nx_ = static_cast<std::size_t>(cells - 1);
  g.ny_ = 1;
  return g;
}

Grid Grid::dirichlet_2d(double x_lo, double x_hi, double y_lo, double y_hi, int cells_x,
                        int cells_y) {
  check_interval(x_lo, x_hi, cells_x, "x");
  check_interval(y_lo, y_hi, cells_y, "y");
  Grid g;
  g.kind_ = GridKind::dirichlet_2d;
  g.x_lo_ = x_lo;
  g.x_hi_ = x_hi;
  g.y_lo_ = y_lo;
  g.y_hi_ = y_hi;
  g.cells_x_ = cells_x;
  g.cells_y_ = cells_y;
  g.hx_ = (x_hi - x_lo) / cells_x;
  g.hy_ = (y_hi - y_lo) / cells_y;
  g.nx_ = static_cast<std::size_t>(cells_x - 1);
  g.ny_ = static_cast<std::size_t>(cells_y - 1);
  return g;
}

Grid Grid::periodic_1d(int k, double period, int cells_per_period) {
  if (k < 1) throw ConfigError("grid: periodic k must be a positive integer");
  if (!(period > 0.0) || !std::isfinite(period)) {
    throw ConfigError("grid: period T must be positive");
  }
  if (cells_per_period < 2 || 2 * k * cells_per_period < kMinCells) {
    throw ConfigError("grid: periodic resolution must give at least 4 cells");
  }
  Grid g;
  g.kind_ = GridKind::periodic_1d;
  g.k_ = k;
  g.period_ = period;
  g.cells_per_period_ = cells_per_period;
  g.x_lo_ = -k * period;
  g.x_hi_ = k * period;
  g.cells_x_ = 2 * k * cells_per_period;
  g.hx_ = period / cells_per_period;
  g.hy_ = g.hx_;
  g.nx_ = static_cast<std::size_t>(g.cells_x_);
  g.ny_ = 1;
  return g;
}

Grid build_grid(const GridSpec& spec) {
  switch (spec.kind) {
    case GridKind::dirichlet_1d: return Grid::dirichlet_1d(spec.x_lo, spec.x_hi, spec.cells_x);
    case GridKind::dirichlet_2d:
      return Grid::dirichlet_2d(spec.x_lo, spec.x_hi, spec.y_lo, spec.y_hi, spec.cells_x,
                                spec.cells_y);
    case GridKind::periodic_1d:
      return Grid::periodic_1d(spec.k, spec.period, spec.cells_per_period);
  }
  throw ConfigError("grid: unknown kind");
}

GridSpec Grid::spec() const {
  GridSpec s;
  s.kind = kind_;
  s.x_lo = x_lo_;
  s.x_hi = x_hi_;
  s.y_lo = y_lo_;
  s.y_hi = y_hi_;
  s.cells_x = cells_x_;
  s.cells_y = cells_y_;
  s.k = k_;
  s.period = period_;
  s.cells_per_period = cells_per_period_;
  return s;
}

Point Grid::node(std::size_t i) const {
  switch (kind_) {
    case GridKind::dirichlet_1d: return {x_lo_ + static_cast<double>(i + 1) * hx_, 0.0};
    case GridKind::periodic_1d: return {x_lo_ + static_cast<double>(i) * hx_, 0.0};
    case GridKind::dirichlet_2d: {
      const std::size_t ix = i % nx_;
      const std::size_t iy = i / nx_;
      return {x_lo_ + static_cast<double>(ix + 1) * hx_, y_lo_ + static_cast<double>(iy + 1) * hy_};
    }
  }
  return {};
}

double Grid::diameter() const {
  if (is_2d()) return std::hypot(length_x(), length_y());
  return length_x();
}

double Grid::boundary_distance(std::size_t i) const {
  if (!is_dirichlet()) return std::numeric_limits<double>::infinity();
  const Point p = node(i);
  double d = std::min(p.x - x_lo_, x_hi_ - p.x);
  if (is_2d()) d = std::min({d, p.y - y_lo_, y_hi_ - p.y});
  return d;
}

GridFunction::GridFunction(const Grid& grid) : grid_(grid), values_(grid.dof(), 0.0) {}

GridFunction::GridFunction(const Grid& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.dof()) {
    std::ostringstream os;
    os << "grid function: expected " << grid_.dof() << " values, got " << values_.size();
    throw UsageError(os.str());
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw NumericError("grid function: non-finite value");
  }
}

void require_same_grid(const Grid& expected, const GridFunction& u, const char* where) {
  if (!(u.grid() == expected) || u.size() != expected.dof()) {
    throw UsageError(std::string(where) + ": grid function lives on a different grid");
  }
}

namespace {

// Templated kernels so the eigen-solver can run them in long double.

template <typename T>
void apply_neg_laplacian(const Grid& g, std::span<const T> u, std::span<T> out) {
  const std::size_t nx = g.nx();
  if (g.kind() == GridKind::dirichlet_1d) {
    const T inv_h2 = T(1) / (T(g.hx()) * T(g.hx()));
    for (std::size_t i = 0; i < nx; ++i) {
      const T left = i > 0 ? u[i - 1] : T(0);
      const T right = i + 1 < nx ? u[i + 1] : T(0);
      out[i] = (T(2) * u[i] - left - right) * inv_h2;
    }
  } else if (g.kind() == GridKind::periodic_1d) {
    const T inv_h2 = T(1) / (T(g.hx()) * T(g.hx()));
    for (std::size_t i = 0; i < nx; ++i) {
      const T left = u[i == 0 ? nx - 1 : i - 1];
      const T right = u[i + 1 == nx ? 0 : i + 1];
      out[i] = (T(2) * u[i] - left - right) * inv_h2;
    }
  } else {
    const std::size_t ny = g.ny();
    const T ihx2 = T(1) / (T(g.hx()) * T(g.hx()));
    const T ihy2 = T(1) / (T(g.hy()) * T(g.hy()));
    for (std::size_t iy = 0; iy < ny; ++iy) {
      for (std::size_t ix = 0; ix < nx; ++ix) {
        const std::size_t i = iy * nx + ix;
        const T w = ix > 0 ? u[i - 1] : T(0);
        const T e = ix + 1 < nx ? u[i + 1] : T(0);
        const T s = iy > 0 ? u[i - nx] : T(0);
        const T n = iy + 1 < ny ? u[i + nx] : T(0);
        out[i] = (T(2) * u[i] - w - e) * ihx2 + (T(2) * u[i] - s - n) * ihy2;
      }
    }
  }
}

}  // namespace

GridFunction neg_laplacian_apply(const Grid& grid, const GridFunction& u) {
  require_same_grid(grid, u, "neg_laplacian_apply");
  std::vector<double> out(grid.dof());
  apply_neg_laplacian<double>(grid, u.values(), out);
  return GridFunction(grid, std::move(out));
}

EdgeFunction gradient_midpoint(const Grid& grid, const GridFunction& u) {
  require_same_grid(grid, u, "gradient_midpoint");
  EdgeFunction e;
  const std::size_t nx = grid.nx();
  const auto v = u.values();
  if (grid.kind() == GridKind::dirichlet_1d) {
    e.x.resize(nx + 1);
    for (std::size_t j = 0; j <= nx; ++j) {
      const double left = j > 0 ? v[j - 1] : 0.0;
      const double right = j < nx ? v[j] : 0.0;
      e.x[j] = (right - left) / grid.hx();
    }
  } else if (grid.kind() == GridKind::periodic_1d) {
    e.x.resize(nx);
    for (std::size_t j = 0; j < nx; ++j) {
      e.x[j] = (v[j + 1 == nx ? 0 : j + 1] - v[j]) / grid.hx();
    }
  } else {
    const std::size_t ny = grid.ny();
    e.x.resize((nx + 1) * ny);
    for (std::size_t iy = 0; iy < ny; ++iy) {
      for (std::size_t j = 0; j <= nx; ++j) {
        const double left = j > 0 ? v[iy * nx + j - 1] : 0.0;
        const double right = j < nx ? v[iy * nx + j] : 0.0;
        e.x[iy * (nx + 1) + j] = (right - left) / grid.hx();
      }
    }
    e.y.resize((ny + 1) * nx);
    for (std::size_t ix = 0; ix < nx; ++ix) {
      for (std::size_t j = 0; j <= ny; ++j) {
        const double below = j > 0 ? v[(j - 1) * nx + ix] : 0.0;
        const double above = j < ny ? v[j * nx + ix] : 0.0;
        e.y[ix * (ny + 1) + j] = (above - below) / grid.hy();
      }
    }
  }
  return e;
}

double edge_inner_product(const Grid& grid, const GridFunction& u, const GridFunction& v) {
  const EdgeFunction a = gradient_midpoint(grid, u);
  const EdgeFunction b = gradient_midpoint(grid, v);
  double s = 0.0;
  for (std::size_t i = 0; i < a.x.size(); ++i) s += a.x[i] * b.x[i];
  for (std::size_t i = 0; i < a.y.size(); ++i) s += a.y[i] * b.y[i];
  return s * grid.node_weight();
}

double l2_inner_product(const Grid& grid, const GridFunction& u, const GridFunction& v) {
  require_same_grid(grid, u, "l2_inner_product");
  require_same_grid(grid, v, "l2_inner_product");
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
  return s * grid.node_weight();
}

double norm(const Grid& grid, const GridFunction& u, Norm which) {
  require_same_grid(grid, u, "norm");
  switch (which) {
    case Norm::l2: return std::sqrt(l2_inner_product(grid, u, u));
    case Norm::linf: {
      double m = 0.0;
      for (double v : u.values()) m = std::max(m, std::abs(v));
      return m;
    }
    case Norm::h10_seminorm: return std::sqrt(edge_inner_product(grid, u, u));
    case Norm::ek_full:
      if (grid.kind() != GridKind::periodic_1d) {
        throw UsageError("norm: Ek-full norm is defined on periodic grids only");
      }
      return std::sqrt(edge_inner_product(grid, u, u) + l2_inner_product(grid, u, u));
  }
  return 0.0;
}

std::vector<Xi> node_gradient_magnitudes(const Grid& grid, const GridFunction& u) {
  const EdgeFunction e = gradient_midpoint(grid, u);
  const std::size_t nx = grid.nx();
  std::vector<Xi> xi(grid.dof(), Xi{0.0, 0.0});
  if (grid.kind() == GridKind::dirichlet_1d) {
    for (std::size_t i = 0; i < nx; ++i) xi[i][0] = 0.5 * (std::abs(e.x[i]) + std::abs(e.x[i + 1]));
  } else if (grid.kind() == GridKind::periodic_1d) {
    for (std::size_t i = 0; i < nx; ++i) {
      xi[i][0] = 0.5 * (std::abs(e.x[i == 0 ? nx - 1 : i - 1]) + std::abs(e.x[i]));
    }
  } else {
    const std::size_t ny = grid.ny();
    for (std::size_t iy = 0; iy < ny; ++iy) {
      for (std::size_t ix = 0; ix < nx; ++ix) {
        const std::size_t i = iy * nx + ix;
        const std::size_t ex = iy * (nx + 1) + ix;
        const std::size_t ey = ix * (ny + 1) + iy;
        xi[i][0] = 0.5 * (std::abs(e.x[ex]) + std::abs(e.x[ex + 1]));
        xi[i][1] = 0.5 * (std::abs(e.y[ey]) + std::abs(e.y[ey + 1]));
      }
    }
  }
  return xi;
}

std::vector<double> central_derivative(const Grid& grid, const GridFunction& u) {
  require_same_grid(grid, u, "central_derivative");
  if (grid.is_2d()) throw UsageError("central_derivative: 1D grids only");
  const std::size_t n = grid.nx();
  const auto v = u.values();
  std::vector<double> d(n);
  const double inv = 1.0 / (2.0 * grid.hx());
  for (std::size_t i = 0; i < n; ++i) {
    double left, right;
    if (grid.kind() == GridKind::periodic_1d) {
      left = v[i == 0 ? n - 1 : i - 1];
      right = v[i + 1 == n ? 0 : i + 1];
    } else {
      left = i > 0 ? v[i - 1] : 0.0;
      right = i + 1 < n ? v[i + 1] : 0.0;
    }
    d[i] = (right - left) * inv;
  }
  return d;
}

namespace {

using Real = long double;

Real dot(std::span<const Real> a, std::span<const Real> b) {
  Real s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Solves A x = b (A = Dirichlet -Delta_h, SPD) starting from x. Returns the
// iteration count.
int conjugate_gradient(const Grid& g, std::span<const Real> b, std::vector<Real>& x) {
  const std::size_t n = b.size();
  const int max_iter = static_cast<int>(10 * n);
  constexpr Real rel_tol = 1e-12L;
  std::vector<Real> r(n), p(n), ap(n);
  apply_neg_laplacian<Real>(g, x, ap);
  for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - ap[i];
  p = r;
  Real rr = dot(r, r);
  const Real target = rel_tol * rel_tol * dot(b, b);
  int it = 0;
  while (rr > target) {
    if (it >= max_iter) throw NumericError("first_eigenvalue: conjugate gradient did not converge");
    apply_neg_laplacian<Real>(g, p, ap);
    const Real alpha = rr / dot(p, ap);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] += alpha * p[i];
      r[i] -= alpha * ap[i];
    }
    const Real rr_new = dot(r, r);
    const Real beta = rr_new / rr;
    rr = rr_new;
    for (std::size_t i = 0; i < n; ++i) p[i] = r[i] + beta * p[i];
    ++it;
  }
  return it;
}

}  // namespace

Eigenpair first_eigenpair(const Grid& grid) {
  if (!grid.is_dirichlet()) {
    throw UsageError("first_eigenvalue: periodic grids have a zero eigenvalue (constants)");
  }
  const std::size_t n = grid.dof();
  std::vector<Real> v(n, 1.0L), w(n), av(n);
  {
    const Real s = std::sqrt(dot(v, v));
    for (Real& x : v) x /= s;
  }
  Eigenpair result{0.0, GridFunction(grid), 0.0, 0, 0};
  constexpr int max_outer = 500;
  Real lambda = 0;
  for (int outer = 1; outer <= max_outer; ++outer) {
    // Warm start: A^{-1} v is close to v / lambda once lambda has settled.
    for (std::size_t i = 0; i < n; ++i) w[i] = lambda > 0 ? v[i] / lambda : 0.0L;
    result.cg_iterations += conjugate_gradient(grid, v, w);
    const Real s = std::sqrt(dot(w, w));
    for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / s;
    apply_neg_laplacian<Real>(grid, v, av);
    lambda = dot(v, av);
    Real res2 = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const Real d = av[i] - lambda * v[i];
      res2 += d * d;
    }
    const Real res = std::sqrt(res2);
    result.outer_iterations = outer;
    if (res <= 1e-10L * lambda) {
      result.lambda = static_cast<double>(lambda);
      result.residual = static_cast<double>(res);
      std::vector<double> vd(n);
      for (std::size_t i = 0; i < n; ++i) vd[i] = static_cast<double>(v[i]);
      result.vector = GridFunction(grid, std::move(vd));
      return result;
    }
  }
  throw NumericError("first_eigenvalue: inverse iteration did not reach the residual target");
}

double first_eigenvalue(const Grid& grid) { return first_eigenpair(grid).lambda; }

}  // namespace ladder

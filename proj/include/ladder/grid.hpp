#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace ladder {

enum class GridKind { dirichlet_1d, dirichlet_2d, periodic_1d };

std::string to_string(GridKind kind);
GridKind grid_kind_from_string(const std::string& name);

/// Location of a grid node. `y` is zero on 1D grids; on periodic grids `x`
/// is the time variable t.
struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// Gradient argument handed to convection nonlinearities. Component d is the
/// mean of the magnitudes of the two edge differences adjacent to the node
/// along axis d (zero for the unused axis in 1D).
using Xi = std::array<double, 2>;

double magnitude(const Xi& xi);

/// Geometry + resolution description consumed by build_grid.
struct GridSpec {
  GridKind kind = GridKind::dirichlet_1d;
  double x_lo = 0.0;
  double x_hi = 1.0;
  double y_lo = 0.0;
  double y_hi = 1.0;
  int cells_x = 0;
  int cells_y = 0;
  // periodic-1d
  int k = 1;
  double period = 1.0;
  int cells_per_period = 0;
};

/// Uniform discrete domain. Dirichlet grids store only interior unknowns (the
/// boundary is identically zero); the periodic grid on [-kT, kT] stores one
/// period of 2k * cells_per_period nodes, node n being identified with node 0.
class Grid {
 public:
  static Grid dirichlet_1d(double x_lo, double x_hi, int cells);
  static Grid dirichlet_2d(double x_lo, double x_hi, double y_lo, double y_hi, int cells_x,
                           int cells_y);
  static Grid periodic_1d(int k, double period, int cells_per_period);

  GridKind kind() const noexcept { return kind_; }
  bool is_dirichlet() const noexcept { return kind_ != GridKind::periodic_1d; }
  bool is_2d() const noexcept { return kind_ == GridKind::dirichlet_2d; }

  double x_lo() const noexcept { return x_lo_; }
  double x_hi() const noexcept { return x_hi_; }
  double y_lo() const noexcept { return y_lo_; }
  double y_hi() const noexcept { return y_hi_; }
  double hx() const noexcept { return hx_; }
  double hy() const noexcept { return hy_; }
  int cells_x() const noexcept { return cells_x_; }
  int cells_y() const noexcept { return cells_y_; }
  int k() const noexcept { return k_; }
  double period() const noexcept { return period_; }
  int cells_per_period() const noexcept { return cells_per_period_; }

  /// Unknowns along x / y (interior nodes for Dirichlet kinds).
  std::size_t nx() const noexcept { return nx_; }
  std::size_t ny() const noexcept { return ny_; }
  std::size_t dof() const noexcept { return nx_ * ny_; }

  /// Nodal trapezoid weight; uniform over stored nodes because Dirichlet
  /// boundary nodes carry zero values.
  double node_weight() const noexcept { return is_2d() ? hx_ * hy_ : hx_; }

  /// Coordinates of stored node `i` (row-major, x fastest).
  Point node(std::size_t i) const;
  double length_x() const noexcept { return x_hi_ - x_lo_; }
  double length_y() const noexcept { return y_hi_ - y_lo_; }
  double diameter() const;
  /// Distance from a node to the Dirichlet boundary (infinite on periodic grids).
  double boundary_distance(std::size_t i) const;

  GridSpec spec() const;

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  Grid() = default;

  GridKind kind_ = GridKind::dirichlet_1d;
  double x_lo_ = 0.0, x_hi_ = 1.0, y_lo_ = 0.0, y_hi_ = 0.0;
  double hx_ = 1.0, hy_ = 1.0;
  int cells_x_ = 0, cells_y_ = 0;
  int k_ = 0;
  double period_ = 0.0;
  int cells_per_period_ = 0;
  std::size_t nx_ = 0, ny_ = 1;
};

Grid build_grid(const GridSpec& spec);

/// Real values on the stored nodes of a grid.
class GridFunction {
 public:
  explicit GridFunction(const Grid& grid);
  GridFunction(const Grid& grid, std::vector<double> values);

  const Grid& grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }
  const std::vector<double>& vector() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }

  friend bool operator==(const GridFunction&, const GridFunction&) = default;

 private:
  Grid grid_;
  std::vector<double> values_;
};

/// Forward differences on cell edges. 1D grids fill `x` only; Dirichlet
/// boundary edges use the zero boundary value. In 2D, x-edges are stored for
/// interior rows (cells_x per row) and y-edges for interior columns (cells_y
/// per column), column-major in y.
struct EdgeFunction {
  std::vector<double> x;
  std::vector<double> y;
};

enum class Norm { l2, linf, h10_seminorm, ek_full };

/// Discrete -Delta with the 3-point (1D) / 5-point (2D) stencil, cyclic for
/// the periodic kind.
GridFunction neg_laplacian_apply(const Grid& grid, const GridFunction& u);
EdgeFunction gradient_midpoint(const Grid& grid, const GridFunction& u);
double norm(const Grid& grid, const GridFunction& u, Norm which);
/// Sum over edges of weight * grad u * grad v; equals <-Delta_h u, v>_{L2}.
double edge_inner_product(const Grid& grid, const GridFunction& u, const GridFunction& v);
/// Trapezoid L2 inner product.
double l2_inner_product(const Grid& grid, const GridFunction& u, const GridFunction& v);

/// Per-node gradient argument (see Xi).
std::vector<Xi> node_gradient_magnitudes(const Grid& grid, const GridFunction& u);

/// Central-difference derivative on 1D grids (zero boundary values for the
/// Dirichlet kind).
std::vector<double> central_derivative(const Grid& grid, const GridFunction& u);

struct Eigenpair {
  double lambda = 0.0;
  GridFunction vector;
  double residual = 0.0;  ///< ||A v - lambda v||_2 with ||v||_2 = 1
  int outer_iterations = 0;
  int cg_iterations = 0;
};

/// Smallest eigenvalue of the discrete Dirichlet -Delta by inverse power
/// iteration with conjugate-gradient inner solves (carried out in extended
/// precision so the residual target 1e-10 * lambda is reachable on fine grids).
Eigenpair first_eigenpair(const Grid& grid);
double first_eigenvalue(const Grid& grid);

void require_same_grid(const Grid& expected, const GridFunction& u, const char* where);

}  // namespace ladder

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace dbar {

/// Cartesian grid over [−a, a]^{2N} (n nodes per real axis) masked to the
/// open l¹ ball of the given radius. Real axes are ordered
/// (Re z₁, Im z₁, Re z₂, Im z₂, ...).
class BallGrid {
 public:
  BallGrid(int dim, int n, double half_width, double ball_radius);

  int dim() const { return dim_; }
  int nodes_per_axis() const { return n_; }
  double spacing() const { return h_; }
  double ball_radius() const { return radius_; }
  std::size_t size() const { return flat_.size(); }

  std::vector<std::complex<double>> point(std::size_t node) const;
  /// Masked index of the neighbour one step along real axis `axis` in
  /// direction ±1, or −1 if it falls outside the grid or the mask.
  long neighbour(std::size_t node, int axis, int dir) const;
  /// True when all 4N stencil neighbours are masked nodes.
  bool has_stencil(std::size_t node) const;
  /// Masked node at integer axis coordinates, or −1.
  long node_at(std::span<const int> axis_index) const;
  double half_width() const { return a_; }

 private:
  int dim_;
  int n_;
  double a_;
  double h_;
  double radius_;
  std::vector<std::size_t> flat_;  // masked node -> flat index
  std::vector<long> lookup_;       // flat index -> masked node or -1
  std::vector<std::size_t> stride_;
};

/// Centered-difference ∂̄ at every node with a full stencil; entry ν of the
/// result is (D_x + i D_y)u/2 along coordinate ν. Nodes without a stencil
/// get an empty vector.
std::vector<std::vector<std::complex<double>>> grid_dbar(const BallGrid& grid,
                                                         std::span<const std::complex<double>> u);

/// Multilinear interpolation of node values at z. Corners outside the mask
/// are dropped and the remaining weights renormalized; throws
/// std::domain_error if z lies outside the grid box or no corner is masked.
std::complex<double> grid_interpolate(const BallGrid& grid, std::span<const std::complex<double>> values,
                                      std::span<const std::complex<double>> z);

struct LsqReport {
  std::vector<double> residual_history;  // ‖Au − f‖₂ per iteration, starting at u = 0
  double residual_sup = 0.0;             // max |(∂̄u − f)_ν| over stencil nodes
  double residual_rms = 0.0;
  int iterations = 0;
  bool converged = false;   // residual_sup ≤ tol
  bool stationary = false;  // normal-equation residual below its relative tolerance
};

struct LsqResult {
  std::vector<std::complex<double>> u;
  LsqReport report;
};

/// Least-squares solution of the discrete ∂̄u = f by CGLS from a zero start
/// (hence the minimum-norm minimizer). `f` holds one dim-vector per node.
LsqResult lsq_dbar_solve(const BallGrid& grid, const std::vector<std::vector<std::complex<double>>>& f, double tol,
                         int max_iter = 4000, double stationary_tol = 1e-10);

}  // namespace dbar

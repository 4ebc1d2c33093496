#include "dbar/lsq.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dbar {

using cplx = std::complex<double>;

BallGrid::BallGrid(int dim, int n, double half_width, double ball_radius)
    : dim_(dim), n_(n), a_(half_width), radius_(ball_radius) {
  if (dim < 1 || dim > 2) throw std::invalid_argument("lsq grid: dimension must be 1 or 2");
  if (n < 3) throw std::invalid_argument("lsq grid: need at least 3 nodes per axis");
  if (!(half_width > 0.0 && ball_radius > 0.0)) throw std::invalid_argument("lsq grid: sizes must be positive");
  h_ = 2.0 * a_ / (n_ - 1);
  const int axes = 2 * dim_;
  stride_.assign(static_cast<std::size_t>(axes), 1);
  for (int ax = 1; ax < axes; ++ax) stride_[ax] = stride_[ax - 1] * static_cast<std::size_t>(n_);
  const std::size_t total = stride_.back() * static_cast<std::size_t>(n_);
  lookup_.assign(total, -1);
  std::vector<int> idx(static_cast<std::size_t>(axes), 0);
  for (std::size_t flat = 0; flat < total; ++flat) {
    double norm = 0.0;
    for (int nu = 0; nu < dim_; ++nu) norm += std::hypot(-a_ + idx[2 * nu] * h_, -a_ + idx[2 * nu + 1] * h_);
    if (norm < radius_) {
      lookup_[flat] = static_cast<long>(flat_.size());
      flat_.push_back(flat);
    }
    for (int ax = 0; ax < axes; ++ax) {
      if (++idx[ax] < n_) break;
      idx[ax] = 0;
    }
  }
}

std::vector<cplx> BallGrid::point(std::size_t node) const {
  std::size_t flat = flat_.at(node);
  std::vector<cplx> z(static_cast<std::size_t>(dim_));
  for (int nu = 0; nu < dim_; ++nu) {
    const double x = -a_ + static_cast<double>(flat % n_) * h_;
    flat /= n_;
    const double y = -a_ + static_cast<double>(flat % n_) * h_;
    flat /= n_;
    z[nu] = {x, y};
  }
  return z;
}

long BallGrid::neighbour(std::size_t node, int axis, int dir) const {
  const std::size_t flat = flat_[node];
  const std::size_t s = stride_[axis];
  const std::size_t coord = (flat / s) % static_cast<std::size_t>(n_);
  if (dir < 0 && coord == 0) return -1;
  if (dir > 0 && coord + 1 == static_cast<std::size_t>(n_)) return -1;
  return lookup_[dir > 0 ? flat + s : flat - s];
}

bool BallGrid::has_stencil(std::size_t node) const {
  for (int ax = 0; ax < 2 * dim_; ++ax) {
    if (neighbour(node, ax, 1) < 0 || neighbour(node, ax, -1) < 0) return false;
  }
  return true;
}

long BallGrid::node_at(std::span<const int> axis_index) const {
  std::size_t flat = 0;
  for (int ax = 0; ax < 2 * dim_; ++ax) {
    if (axis_index[ax] < 0 || axis_index[ax] >= n_) return -1;
    flat += stride_[ax] * static_cast<std::size_t>(axis_index[ax]);
  }
  return lookup_[flat];
}

std::complex<double> grid_interpolate(const BallGrid& grid, std::span<const cplx> values, std::span<const cplx> z) {
  const int axes = 2 * grid.dim();
  std::vector<int> base(static_cast<std::size_t>(axes));
  std::vector<double> frac(static_cast<std::size_t>(axes));
  const double h = grid.spacing();
  const double a = grid.half_width();
  for (int ax = 0; ax < axes; ++ax) {
    const double x = (ax % 2 == 0 ? z[ax / 2].real() : z[ax / 2].imag()) + a;
    const double t = x / h;
    if (t < 0.0 || t > grid.nodes_per_axis() - 1) throw std::domain_error("grid_interpolate: point outside the grid");
    int i = static_cast<int>(std::floor(t));
    if (i == grid.nodes_per_axis() - 1) --i;
    base[ax] = i;
    frac[ax] = t - i;
  }
  cplx acc = 0.0;
  double wsum = 0.0;
  std::vector<int> idx(static_cast<std::size_t>(axes));
  for (int corner = 0; corner < (1 << axes); ++corner) {
    double w = 1.0;
    for (int ax = 0; ax < axes; ++ax) {
      const int bit = (corner >> ax) & 1;
      idx[ax] = base[ax] + bit;
      w *= bit ? frac[ax] : 1.0 - frac[ax];
    }
    if (w == 0.0) continue;
    const long node = grid.node_at(idx);
    if (node < 0) continue;
    acc += w * values[static_cast<std::size_t>(node)];
    wsum += w;
  }
  if (wsum == 0.0) throw std::domain_error("grid_interpolate: no masked corner near the point");
  return acc / wsum;
}

namespace {

// Stencil table: for each equation node, the 4N neighbour indices ordered
// (x+, x−, y+, y−) per coordinate.
struct Stencil {
  int dim = 0;
  double scale = 0.0;  // 1/(4h)
  std::vector<std::size_t> rows;
  std::vector<std::size_t> nbr;

  explicit Stencil(const BallGrid& g) : dim(g.dim()), scale(1.0 / (4.0 * g.spacing())) {
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (!g.has_stencil(i)) continue;
      rows.push_back(i);
      for (int nu = 0; nu < dim; ++nu) {
        nbr.push_back(static_cast<std::size_t>(g.neighbour(i, 2 * nu, 1)));
        nbr.push_back(static_cast<std::size_t>(g.neighbour(i, 2 * nu, -1)));
        nbr.push_back(static_cast<std::size_t>(g.neighbour(i, 2 * nu + 1, 1)));
        nbr.push_back(static_cast<std::size_t>(g.neighbour(i, 2 * nu + 1, -1)));
      }
    }
  }

  std::size_t equations() const { return rows.size() * static_cast<std::size_t>(dim); }

  void apply(const std::vector<cplx>& u, std::vector<cplx>& out) const {
    const cplx I(0.0, 1.0);
    for (std::size_t e = 0; e < rows.size(); ++e) {
      const std::size_t* p = &nbr[e * 4 * dim];
      for (int nu = 0; nu < dim; ++nu, p += 4) {
        out[e * dim + nu] = scale * ((u[p[0]] - u[p[1]]) + I * (u[p[2]] - u[p[3]]));
      }
    }
  }

  void adjoint(const std::vector<cplx>& r, std::vector<cplx>& out) const {
    std::fill(out.begin(), out.end(), cplx{});
    const cplx I(0.0, 1.0);
    for (std::size_t e = 0; e < rows.size(); ++e) {
      const std::size_t* p = &nbr[e * 4 * dim];
      for (int nu = 0; nu < dim; ++nu, p += 4) {
        const cplx v = scale * r[e * dim + nu];
        out[p[0]] += v;
        out[p[1]] -= v;
        out[p[2]] -= I * v;
        out[p[3]] += I * v;
      }
    }
  }
};

double norm2(const std::vector<cplx>& v) {
  double s = 0.0;
  for (const auto& x : v) s += std::norm(x);
  return s;
}

double sup_abs(const std::vector<cplx>& v) {
  double m = 0.0;
  for (const auto& x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

std::vector<std::vector<cplx>> grid_dbar(const BallGrid& grid, std::span<const cplx> u) {
  if (u.size() != grid.size()) throw std::invalid_argument("grid_dbar: value count does not match the grid");
  Stencil st(grid);
  std::vector<cplx> uu(u.begin(), u.end());
  std::vector<cplx> out(st.equations());
  st.apply(uu, out);
  std::vector<std::vector<cplx>> res(grid.size());
  for (std::size_t e = 0; e < st.rows.size(); ++e) {
    res[st.rows[e]].assign(out.begin() + static_cast<long>(e * grid.dim()),
                           out.begin() + static_cast<long>((e + 1) * grid.dim()));
  }
  return res;
}

LsqResult lsq_dbar_solve(const BallGrid& grid, const std::vector<std::vector<cplx>>& f, double tol, int max_iter,
                         double stationary_tol) {
  if (f.size() != grid.size()) throw std::invalid_argument("lsq: right-hand side does not match the grid");
  Stencil st(grid);
  const int dim = grid.dim();
  std::vector<cplx> b(st.equations());
  for (std::size_t e = 0; e < st.rows.size(); ++e) {
    const auto& fv = f[st.rows[e]];
    if (static_cast<int>(fv.size()) != dim) throw std::invalid_argument("lsq: form has the wrong number of components");
    for (int nu = 0; nu < dim; ++nu) {
      if (!std::isfinite(fv[nu].real()) || !std::isfinite(fv[nu].imag())) {
        throw std::invalid_argument("lsq: right-hand side is not finite");
      }
      b[e * dim + nu] = fv[nu];
    }
  }

  LsqResult out;
  auto& rep = out.report;
  std::vector<cplx> x(grid.size());
  std::vector<cplx> r = b;
  std::vector<cplx> s(grid.size());
  st.adjoint(r, s);
  std::vector<cplx> p = s;
  std::vector<cplx> q(st.equations());
  double gamma = norm2(s);
  const double gamma0 = gamma;
  rep.residual_history.push_back(std::sqrt(norm2(r)));
  rep.residual_sup = sup_abs(r);
  rep.converged = rep.residual_sup <= tol;
  rep.stationary = gamma0 == 0.0;

  while (!rep.converged && !rep.stationary && rep.iterations < max_iter) {
    st.apply(p, q);
    const double qq = norm2(q);
    if (qq == 0.0) break;
    const double alpha = gamma / qq;
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += alpha * p[i];
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= alpha * q[i];
    st.adjoint(r, s);
    const double gamma_new = norm2(s);
    ++rep.iterations;
    rep.residual_history.push_back(std::sqrt(norm2(r)));
    rep.residual_sup = sup_abs(r);
    rep.converged = rep.residual_sup <= tol;
    rep.stationary = gamma_new <= stationary_tol * stationary_tol * gamma0;
    const double beta = gamma_new / gamma;
    gamma = gamma_new;
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = s[i] + beta * p[i];
  }
  rep.residual_rms = r.empty() ? 0.0 : std::sqrt(norm2(r) / static_cast<double>(r.size()));
  out.u = std::move(x);
  return out;
}

}  // namespace dbar

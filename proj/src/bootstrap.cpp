#include "dbar/bootstrap.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <random>
#include <stdexcept>

#include "dbar/lsq.hpp"
#include "dbar/pompeiu.hpp"
#include "dbar/sampling.hpp"

namespace dbar {

using cplx = std::complex<double>;

std::vector<cplx> ProjectionRecord::project(std::span<const cplx> z) const { return pi.eval(z); }

std::vector<cplx> ProjectionRecord::embed(std::span<const cplx> zp) const {
  std::vector<cplx> z(zp.begin(), zp.end());
  z.emplace_back(Z_N.get_d(), 0.0);
  return z;
}

bool ProjectionRecord::left_inverse_exact() const {
  for (int nu = 1; nu < N; ++nu) {
    const RationalFunction sub = pi.coords[nu - 1].substitute(N, QComplex(Z_N));
    if (sub.a() != 0 || sub.b() != 0) return false;
    if (!(sub.num() == PolyFunction::coordinate(N, nu))) return false;
  }
  return true;
}

double ProjectionRecord::image_radius(double r) const { return (R.get_d() - Z_N.get_d()) * r / R.get_d(); }

ProjectionRecord central_projection(double R, double Z_N, int N) {
  if (N < 2) throw std::invalid_argument("central_projection: needs N >= 2");
  if (!(Z_N >= 0.0 && Z_N < R)) throw std::domain_error("central_projection: requires 0 <= Z_N < R");
  ProjectionRecord p;
  p.R = mpq_class(R);
  p.Z_N = mpq_class(Z_N);
  p.N = N;
  p.pi.src_dim = N;
  const DenomShape shape{N, p.R};
  for (int nu = 1; nu < N; ++nu) {
    p.pi.coords.emplace_back(PolyFunction::coordinate(N, nu).scaled(QComplex(p.R - p.Z_N)), shape, 1, 0);
  }
  return p;
}

PolyForm slice_form(const PolyForm& f, const mpq_class& Z_N) {
  const int N = f.dim();
  if (N < 2) throw std::invalid_argument("slice_form: needs N >= 2");
  PolyForm out(N - 1);
  for (int nu = 1; nu < N; ++nu) out.comp(nu) = f.comp(nu).substitute(N, QComplex(Z_N)).restricted(N - 1);
  return out;
}

CorrectionForm correction_form(const PolyForm& f, const ProjectionRecord& proj) {
  if (!is_closed(f)) throw std::invalid_argument("correction_form: form is not dbar-closed");
  if (f.dim() != proj.N) throw std::invalid_argument("correction_form: dimension mismatch");
  const int N = proj.N;
  CorrectionForm c;
  c.F = RationalForm(f) - pullback(proj.pi, slice_form(f, proj.Z_N));
  c.slice_zero = true;
  for (int nu = 1; nu < N; ++nu) {
    if (!c.F.comp(nu).substitute(N, QComplex(proj.Z_N)).is_zero()) c.slice_zero = false;
  }
  c.dbar_FN = RationalForm(N);
  for (int nu = 1; nu <= N; ++nu) c.dbar_FN.comp(nu) = c.F.comp(N).dzbar(nu);
  for (int nu = 1; nu <= N; ++nu) {
    c.fast_F.emplace_back(c.F.comp(nu));
    c.fast_dbar_FN.emplace_back(c.dbar_FN.comp(nu));
  }
  return c;
}

std::vector<cplx> g_value(const CorrectionForm& c, std::span<const cplx> z, double Z_N) {
  const int N = c.F.dim();
  std::vector<cplx> g(static_cast<std::size_t>(N));
  const cplx w = z[N - 1] - Z_N;
  if (std::abs(w) < 1e-8) return g;
  const cplx ratio = std::conj(w) / w;
  for (int nu = 1; nu <= N; ++nu) {
    cplx v = -ratio * c.fast_dbar_FN[nu - 1](z);
    if (nu < N) v += c.fast_F[nu - 1](z) / w;
    g[nu - 1] = v;
  }
  return g;
}

bool BootstrapResult::all_pass() const {
  return std::all_of(levels.begin(), levels.end(), [](const BootstrapLevel& l) { return l.report.all_pass(); });
}

namespace {

using Fn = std::function<cplx(std::span<const cplx>)>;

struct Level {
  Fn U;
  std::vector<BootstrapLevel> levels;
};

// ∂̄U − f on the stencil nodes of a grid inside B(r); also against the
// discrete ∂̄ of a reference solution, which isolates the stencil error.
void residual_checks(const BallGrid& grid, const std::vector<cplx>& U, const std::vector<cplx>& Uref,
                     const PolyForm& f, double r, SolveReport& rep) {
  const auto d = grid_dbar(grid, U);
  const auto dref = grid_dbar(grid, Uref);
  double sup = 0.0;
  double sup_ref = 0.0;
  int count = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (d[i].empty()) continue;
    const auto z = grid.point(i);
    if (!(l1_norm(z) < r)) continue;
    const auto fz = f.eval(z);
    for (int nu = 0; nu < grid.dim(); ++nu) {
      sup = std::max(sup, std::abs(d[i][nu] - fz[nu]));
      sup_ref = std::max(sup_ref, std::abs(d[i][nu] - dref[i][nu]));
    }
    ++count;
  }
  rep.residual_sup = sup;
  rep.samples = count;
  rep.constants_measured["residual_vs_reference"] = sup_ref;
}

// V at (z′, Z_N) for every node, by 4×4 Lagrange interpolation in the
// z_N plane (bilinear where the wider stencil leaves the mask). The value
// depends on z′ only, so its discrete ∂̄_N vanishes.
std::vector<cplx> slice_values(const BallGrid& grid, const std::vector<cplx>& V, double Z_N) {
  const int N = grid.dim();
  const int axes = 2 * N;
  const double h = grid.spacing();
  const double a = grid.half_width();
  const double tx = (Z_N + a) / h;
  const double ty = a / h;
  const int bx = static_cast<int>(std::floor(tx));
  const int by = static_cast<int>(std::floor(ty));
  auto lagrange = [](double t, int base, int k) {
    double l = 1.0;
    for (int m = -1; m <= 2; ++m) {
      if (m != k) l *= (t - (base + m)) / static_cast<double>(k - m);
    }
    return l;
  };
  std::vector<cplx> out(grid.size());
  std::map<std::vector<int>, cplx> cache;
  std::vector<int> idx(static_cast<std::size_t>(axes));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto z = grid.point(i);
    std::vector<int> key;
    for (int nu = 0; nu + 1 < N; ++nu) {
      key.push_back(static_cast<int>(std::lround((z[nu].real() + a) / h)));
      key.push_back(static_cast<int>(std::lround((z[nu].imag() + a) / h)));
    }
    if (auto it = cache.find(key); it != cache.end()) {
      out[i] = it->second;
      continue;
    }
    std::copy(key.begin(), key.end(), idx.begin());
    cplx acc = 0.0;
    bool full = true;
    for (int kx = -1; kx <= 2 && full; ++kx) {
      for (int ky = -1; ky <= 2; ++ky) {
        idx[axes - 2] = bx + kx;
        idx[axes - 1] = by + ky;
        const long node = grid.node_at(idx);
        if (node < 0) {
          full = false;
          break;
        }
        acc += lagrange(tx, bx, kx) * lagrange(ty, by, ky) * V[static_cast<std::size_t>(node)];
      }
    }
    if (!full) {
      std::vector<cplx> zs(z.begin(), z.end());
      zs[N - 1] = Z_N;
      // Slices with no masked node near them lie outside B_N(r) and are unused.
      try {
        acc = grid_interpolate(grid, V, zs);
      } catch (const std::domain_error&) {
        acc = 0.0;
      }
    }
    cache.emplace(std::move(key), acc);
    out[i] = acc;
  }
  return out;
}

// Smallest Q ≥ 1 with |U(z)| ≤ ‖z − Z‖ Q^{1+#z} (|f|₀ + R|f|₁) on the nodes.
double measured_q(const BallGrid& grid, const std::vector<cplx>& U, std::span<const double> Z, double scale,
                  double r) {
  double q = 1.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto z = grid.point(i);
    if (!(l1_norm(z) < r)) continue;
    double dist = 0.0;
    int support = 0;
    for (std::size_t nu = 0; nu < z.size(); ++nu) {
      dist += std::abs(z[nu] - Z[nu]);
      if (z[nu] != cplx{}) ++support;
    }
    if (dist == 0.0 || scale == 0.0) continue;
    const double ratio = std::abs(U[i]) / (dist * scale);
    if (ratio > 0.0) q = std::max(q, std::pow(ratio, 1.0 / (1 + support)));
  }
  return q;
}

Level solve_level(const PolyForm& f, std::span<const double> Z, double R, double r, const BootstrapOptions& opt) {
  const int N = f.dim();
  Level out;
  BootstrapLevel info;
  info.N = N;
  info.R = R;
  info.r = r;
  auto& rep = info.report;
  const PolyFunction Uref = particular_solution(f);
  const FastPoly uref(Uref);
  const Seminorms fs = seminorm_estimate(f, R, opt.seminorm_samples, opt.seed);
  const double fscale = fs.sup0 + R * fs.lip1;
  rep.constants_measured["f_sup0"] = fs.sup0;
  rep.constants_measured["f_lip1"] = fs.lip1;

  if (N == 1) {
    const FastPoly f1(f.comp(1));
    const int radial = opt.pompeiu_radial;
    auto P = [f1, R, radial](cplx z) {
      return pompeiu_solve_1d([&f1](cplx w) { return f1(std::span<const cplx>(&w, 1)); }, z, R, radial);
    };
    const cplx PZ = P(cplx(Z[0], 0.0));
    out.U = [P, PZ](std::span<const cplx> z) { return P(z[0]) - PZ; };

    const BallGrid grid(1, opt.grid, r, r);
    std::vector<cplx> U(grid.size());
    std::vector<cplx> Ur(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const auto z = grid.point(i);
      U[i] = out.U(z);
      Ur[i] = uref(z);
    }
    residual_checks(grid, U, Ur, f, r, rep);
    const std::vector<cplx> Zc{cplx(Z[0], 0.0)};
    rep.add_check("U(Z)=0", std::abs(out.U(Zc)), 1e-4);
    rep.constants_measured["Q"] = measured_q(grid, U, Z, fscale, r);
    out.levels.push_back(std::move(info));
    return out;
  }

  const auto proj = central_projection(R, Z[N - 1], N);
  rep.add_flag("pi_left_inverse", proj.left_inverse_exact());
  const PolyForm fp = slice_form(f, proj.Z_N);
  const double Rp = R - Z[N - 1];
  const double rp = proj.image_radius(r);
  rep.add_check("ratio_preserved", std::abs(rp / Rp - r / R), 1e-15);
  Level sub = solve_level(fp, Z.first(N - 1), Rp, rp, opt);

  const CorrectionForm corr = correction_form(f, proj);
  rep.add_flag("slice_zero", corr.slice_zero);

  const double R0 = (R + r) / 2.0;
  // |π|₁ on B_N(R₀): l¹ difference quotients over near and far pairs.
  {
    std::mt19937_64 rng(opt.seed + 1);
    std::normal_distribution<double> gauss(0.0, 1.0);
    double lip = 0.0;
    auto pts = sample_l1_ball(N, R0, opt.seminorm_samples, opt.seed + 2);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const auto pz = proj.project(pts[i]);
      auto w = i + 1 < pts.size() ? pts[i + 1] : pts[0];
      auto near = pts[i];
      for (auto& x : near) x += 1e-5 * R0 * cplx(gauss(rng), gauss(rng));
      if (l1_norm(near) >= R0) continue;
      for (const auto& other : {w, near}) {
        const double d = l1_distance(pts[i], other);
        if (d > 0.0) lip = std::max(lip, l1_distance(pz, proj.project(other)) / d);
      }
    }
    rep.add_check("pi_lipschitz", lip, 2.0 * R * R / ((R - R0) * (R - R0)));
  }

  const BallGrid grid(N, opt.grid, R0, R0);
  const double ZN = Z[N - 1];
  // The least-squares unknown is V = w v with w = z_N − Z_N: ∂̄V = w g is
  // smooth, while v itself jumps across w = 0.
  std::vector<std::vector<cplx>> wg(grid.size());
  double gsup = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto z = grid.point(i);
    const auto gi = g_value(corr, z, ZN);
    for (auto x : gi) gsup = std::max(gsup, std::abs(x));
    const cplx wbar = std::conj(z[N - 1] - ZN);
    wg[i].resize(static_cast<std::size_t>(N));
    for (int nu = 1; nu <= N; ++nu) {
      cplx val = -wbar * corr.fast_dbar_FN[nu - 1](z);
      if (nu < N) val += corr.fast_F[nu - 1](z);
      wg[i][nu - 1] = val;
    }
  }
  rep.add_check("g_sup", gsup, 256.0 * R * R * R * fscale / std::pow(R - r, 4));

  auto lsq = lsq_dbar_solve(grid, wg, opt.lsq_tol, opt.lsq_max_iter);
  rep.constants_measured["lsq_iterations"] = lsq.report.iterations;
  rep.constants_measured["lsq_residual_sup"] = lsq.report.residual_sup;
  rep.constants_measured["lsq_residual_rms"] = lsq.report.residual_rms;
  rep.constants_measured["lsq_stationary"] = lsq.report.stationary ? 1.0 : 0.0;
  bool monotone = true;
  for (std::size_t i = 1; i < lsq.report.residual_history.size(); ++i) {
    if (lsq.report.residual_history[i] > lsq.report.residual_history[i - 1] * (1.0 + 1e-12)) monotone = false;
  }
  rep.add_flag("lsq_monotone", monotone);

  // V(z′, Z_N) is holomorphic in z′ because F_ν(z′, Z_N) = 0; subtracting it
  // makes V vanish on w = 0, so v = (V − V(z′, Z_N))/w stays bounded.
  auto V = std::make_shared<std::vector<cplx>>(std::move(lsq.u));
  const std::vector<cplx> S = slice_values(grid, *V, ZN);
  auto gridp = std::make_shared<BallGrid>(grid);
  const FastRational FN = corr.fast_F[N - 1];
  const Fn Up = sub.U;
  auto pi_map = std::make_shared<ProjectionRecord>(proj);
  out.U = [=](std::span<const cplx> z) {
    std::vector<cplx> zs(z.begin(), z.end());
    zs[N - 1] = ZN;
    const cplx w = z[N - 1] - ZN;
    return Up(pi_map->project(z)) + grid_interpolate(*gridp, *V, z) - grid_interpolate(*gridp, *V, zs) +
           std::conj(w) * FN(z);
  };

  double v_sup = 0.0;
  const double reach = r + 1.5 * grid.spacing();
  std::vector<cplx> U(grid.size());
  std::vector<cplx> Ur(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto z = grid.point(i);
    if (!(l1_norm(z) < reach)) continue;
    const cplx w = z[N - 1] - ZN;
    const cplx Vi = (*V)[i] - S[i];
    if (std::abs(w) > 1e-8) v_sup = std::max(v_sup, std::abs(Vi / w));
    U[i] = Up(proj.project(z)) + Vi + std::conj(w) * FN(z);
    Ur[i] = uref(z);
  }
  rep.constants_measured["v_sup"] = v_sup;
  residual_checks(grid, U, Ur, f, r, rep);
  std::vector<cplx> Zc;
  for (double x : Z) Zc.emplace_back(x, 0.0);
  rep.add_check("U(Z)=0", std::abs(out.U(Zc)), 1e-4);
  rep.constants_measured["Q"] = measured_q(grid, U, Z, fscale, r);

  out.levels.push_back(std::move(info));
  for (auto& l : sub.levels) out.levels.push_back(std::move(l));
  return out;
}

}  // namespace

BootstrapResult bootstrap_solve(const PolyForm& f, std::span<const double> Z, double R, double r,
                                const BootstrapOptions& opt) {
  const int N = f.dim();
  if (N < 1 || N > 2) throw std::invalid_argument("bootstrap_solve: dimension above supported desk scale (N <= 2)");
  if (static_cast<int>(Z.size()) != N) throw std::invalid_argument("bootstrap_solve: Z has the wrong dimension");
  if (!is_closed(f)) throw std::invalid_argument("bootstrap_solve: form is not dbar-closed");
  if (!(0.0 < r && r < R)) throw std::invalid_argument("bootstrap_solve: requires 0 < r < R");
  double zn = 0.0;
  for (double x : Z) {
    if (!(x >= 0.0)) throw std::invalid_argument("bootstrap_solve: Z must be componentwise nonnegative");
    zn += x;
  }
  if (!(zn < r)) throw std::invalid_argument("bootstrap_solve: Z must lie in B_N(r)");
  Level top = solve_level(f, Z, R, r, opt);
  BootstrapResult res;
  res.levels = std::move(top.levels);
  res.U = std::move(top.U);
  std::vector<cplx> Zc;
  for (double x : Z) Zc.emplace_back(x, 0.0);
  res.U_at_Z = res.U(Zc);
  return res;
}

}  // namespace dbar

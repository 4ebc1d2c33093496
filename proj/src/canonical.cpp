#include "dbar/canonical.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dbar/delta.hpp"
#include "dbar/point.hpp"
#include "dbar/sampling.hpp"

namespace dbar {

using cplx = std::complex<double>;

std::vector<QComplex> node(const MultiIndex& k, const mpq_class& r, int dim) {
  if (!k.supported_in(dim)) throw std::invalid_argument("node: index outside the dimension");
  std::vector<QComplex> z(static_cast<std::size_t>(dim));
  if (k.empty()) return z;
  const mpq_class n = k.order();
  for (const auto& e : k.entries()) z[e.coord - 1] = QComplex(mpq_class(r * e.exp / n));
  return z;
}

std::map<SignedIndex, PolyFunction> normalize_components(const PolyFunction& U, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("canonical: node radius must be positive");
  const mpq_class rq(r);
  const int dim = U.dim();
  auto comps = U.bidegree_split();
  for (auto& [k, uk] : comps) {
    if (!k.is_nonnegative()) continue;
    const MultiIndex m = k.to_multi();
    const auto Z = node(m, rq, dim);
    const QComplex val = uk.eval_exact(Z);
    if (val.is_zero()) continue;
    QComplex factor = val;
    for (const auto& e : m.entries()) factor *= pow(Z[e.coord - 1], -e.exp);
    uk -= PolyFunction::monomial(dim, m, {}, factor);
  }
  std::erase_if(comps, [](const auto& kv) { return kv.second.is_zero(); });
  return comps;
}

std::map<SignedIndex, PolyFunction> canonical_components(const PolyForm& f, double r) {
  if (!is_closed(f)) throw std::invalid_argument("canonical: form is not dbar-closed");
  return normalize_components(particular_solution(f), r);
}

PolyFunction cesaro_assemble(const std::map<SignedIndex, PolyFunction>& comps, int dim, int j) {
  if (j < 1) throw std::invalid_argument("canonical: assembly grade j must be >= 1");
  PolyFunction u(dim);
  for (const auto& [k, uk] : comps) {
    mpq_class w = 1;
    for (const auto& e : k.entries()) {
      const int a = std::abs(e.value);
      w *= a >= j ? mpq_class(0) : mpq_class(j - a, j);
    }
    w.canonicalize();
    if (sgn(w) != 0) u += uk.scaled(QComplex(w));
  }
  return u;
}

namespace {

bool is_equivariant(const SignedIndex& k, const PolyFunction& uk) {
  for (const auto& [bi, c] : uk.terms()) {
    if (!(SignedIndex::difference(bi.alpha, bi.beta) == k)) return false;
  }
  return true;
}

PolyFunction exact_canonical(const PolyForm& f, double r) {
  PolyFunction u(f.dim());
  for (const auto& [k, uk] : canonical_components(f, r)) u += uk;
  return u;
}

}  // namespace

CanonicalSolution canonical_solve(const PolyForm& f, double r, int j) {
  if (j < 1) throw std::invalid_argument("canonical: assembly grade j must be >= 1");
  CanonicalSolution sol;
  sol.r = r;
  sol.assembly_grade = j;
  sol.corrected_components = canonical_components(f, r);
  sol.u = PolyFunction(f.dim());
  bool normalized = true;
  bool equivariant = true;
  const mpq_class rq(r);
  for (const auto& [k, uk] : sol.corrected_components) {
    sol.u += uk;
    if (k.is_nonnegative() && !uk.eval_exact(node(k.to_multi(), rq, f.dim())).is_zero()) normalized = false;
    if (!is_equivariant(k, uk)) equivariant = false;
  }
  sol.u_mean = cesaro_assemble(sol.corrected_components, f.dim(), j);
  const PolyForm defect = dbar::dbar(sol.u) - f;
  const PolyForm mean_defect = dbar::dbar(sol.u_mean) - f;
  auto& rep = sol.report;
  rep.add_flag("dbar_exact", defect.is_zero());
  rep.add_flag("normalized", normalized);
  rep.add_flag("equivariant", equivariant);
  rep.residual_sup = defect.is_zero() ? 0.0 : seminorm_estimate(defect, r, 200, 1).sup0;
  rep.constants_measured["components"] = static_cast<double>(sol.corrected_components.size());
  rep.constants_measured["mean_residual_sup"] =
      mean_defect.is_zero() ? 0.0 : seminorm_estimate(mean_defect, r, 200, 1).sup0;
  return sol;
}

Lemma51Constants lemma51_constants(const PolyForm& f, double r, int n, int samples, std::uint64_t seed) {
  if (n < 1 || n > f.dim()) throw std::invalid_argument("lemma51: slice dimension outside 1..dim");
  const PolyFunction U = particular_solution(f.restricted(n));
  Lemma51Constants c;
  c.Q = 1.0;
  c.A = seminorm_estimate(U, r, samples, seed).sup0;
  const mpq_class rq(r);
  for (const auto& [k, uk] : U.bidegree_split()) {
    if (!k.is_nonnegative()) continue;
    c.A = std::max(c.A, std::abs(uk.eval_exact(node(k.to_multi(), rq, n)).to_cplx()));
  }
  return c;
}

Lemma51Result lemma51_check(const PolyForm& f, double r, int n, double A, double Q, int samples,
                            std::uint64_t seed) {
  if (n < 1 || n > f.dim()) throw std::invalid_argument("lemma51: slice dimension outside 1..dim");
  if (!(A >= 0.0 && Q >= 0.0)) throw std::invalid_argument("lemma51: A and Q must be nonnegative");
  const PolyFunction U = particular_solution(f.restricted(n));
  const PolyFunction u = exact_canonical(f, r).restricted(n);
  const FastPoly diff(u - U);
  Lemma51Result res;
  res.check = {"lemma51", 0.0, 0.0, true};
  bool all = true;
  double worst = -1.0;
  for (const auto& z : sample_l1_ball(n, 0.9 * r, samples, seed)) {
    const double lhs = std::abs(diff(z));
    const double rhs = A == 0.0 ? 0.0 : A * delta_upper(Q, Point::from_dense(z).scaled(1.0 / r));
    const bool ok = verdict(lhs, rhs);
    all = all && ok;
    const double ratio = rhs > 0.0 ? lhs / rhs : (lhs > 0.0 ? HUGE_VAL : 0.0);
    if (ratio > worst) {
      worst = ratio;
      res.check.lhs = lhs;
      res.check.rhs = rhs;
    }
    ++res.samples;
  }
  res.check.pass = all;
  res.worst_ratio = std::max(worst, 0.0);
  return res;
}

bool restriction_consistency(const PolyForm& f1, const PolyForm& f2, int n, double r) {
  if (n < 1 || n > f1.dim() || n > f2.dim()) throw std::invalid_argument("restriction: n outside both dimensions");
  if (!(f1.restricted(n) == f2.restricted(n))) throw std::invalid_argument("restriction: forms differ on C^n");
  return exact_canonical(f1, r).restricted(n) == exact_canonical(f2, r).restricted(n);
}

bool TowerReport::all_pass() const {
  if (!stable) return false;
  return std::all_of(levels.begin(), levels.end(), [](const TowerLevel& l) { return l.agrees_above && l.bound.pass; });
}

namespace {

// 2RQΔ(Q, w)·scale with w = z/r.
double tower_rhs(double R, double Q, const Point& w, double scale) {
  return 2.0 * R * Q * delta_upper(Q, w, 1e-6) * scale;
}

// Smallest Q ≥ 1 (to 1e−6 relative) with lhs ≤ rhs(Q).
double needed_q(double lhs, double R, const Point& w, double scale) {
  if (lhs <= tower_rhs(R, 1.0, w, scale)) return 1.0;
  double lo = 1.0;
  double hi = 2.0;
  while (lhs > tower_rhs(R, hi, w, scale)) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e12) return HUGE_VAL;
  }
  while (hi - lo > 1e-6 * hi) {
    const double mid = 0.5 * (lo + hi);
    (lhs <= tower_rhs(R, mid, w, scale) ? hi : lo) = mid;
  }
  return hi;
}

}  // namespace

TowerReport truncation_tower(const PolyForm& f, double R, double r, const std::vector<int>& N_list, int samples,
                             std::uint64_t seed) {
  if (!is_closed(f)) throw std::invalid_argument("tower: form is not dbar-closed");
  if (!(0.0 < r && r < R)) throw std::invalid_argument("tower: requires 0 < r < R");
  for (std::size_t i = 0; i < N_list.size(); ++i) {
    if (N_list[i] < 1 || N_list[i] > f.dim()) throw std::invalid_argument("tower: level outside 1..dim");
    if (i && N_list[i] <= N_list[i - 1]) throw std::invalid_argument("tower: levels must be ascending");
  }
  TowerReport rep;
  for (int N : N_list) {
    TowerLevel lvl;
    lvl.N = N;
    const PolyForm fN = f.restricted(N);
    lvl.u = exact_canonical(fN, r);
    const Seminorms s = seminorm_estimate(fN, R, 400, seed);
    const double scale = s.sup0 + R * s.lip1;
    const FastPoly u(lvl.u);
    const auto pts = sample_l1_ball(N, 0.9 * r, samples, seed + static_cast<std::uint64_t>(N));
    std::vector<double> lhs(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
      lhs[i] = std::abs(u(pts[i]));
      if (scale > 0.0) lvl.Q = std::max(lvl.Q, needed_q(lhs[i], R, Point::from_dense(pts[i]).scaled(1.0 / r), scale));
    }
    lvl.bound = {"tower_bound", 0.0, 0.0, true};
    double worst = -1.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const double rhs = scale > 0.0 ? tower_rhs(R, lvl.Q, Point::from_dense(pts[i]).scaled(1.0 / r), scale) : 0.0;
      const double ratio = rhs > 0.0 ? lhs[i] / rhs : (lhs[i] > 0.0 ? HUGE_VAL : 0.0);
      if (!verdict(lhs[i], rhs)) lvl.bound.pass = false;
      if (ratio > worst) {
        worst = ratio;
        lvl.bound.lhs = lhs[i];
        lvl.bound.rhs = rhs;
      }
    }
    rep.levels.push_back(std::move(lvl));
  }
  for (std::size_t i = 0; i < rep.levels.size(); ++i) {
    for (std::size_t k = i + 1; k < rep.levels.size(); ++k) {
      if (!(rep.levels[k].u.restricted(rep.levels[i].N) == rep.levels[i].u)) {
        rep.levels[i].agrees_above = false;
        rep.stable = false;
      }
    }
  }
  return rep;
}

std::vector<SupConstantRow> sup_constant_fit(const std::vector<PolyForm>& corpus, double R, double r,
                                  const std::vector<int>& N_list, int samples, std::uint64_t seed) {
  if (!(0.0 < r && r < R)) throw std::invalid_argument("sup constant: requires 0 < r < R");
  const double rp = (R + r) / 2.0;
  std::vector<SupConstantRow> rows;
  for (int N : N_list) {
    if (N < 1) throw std::invalid_argument("sup constant: dimensions must be positive");
    SupConstantRow row;
    row.N = N;
    for (const auto& f : corpus) {
      const PolyForm fN = f.dim() >= N ? f.restricted(N) : f.with_dim(N);
      if (fN.is_zero()) continue;
      const double fsup = seminorm_estimate(fN, R, samples, seed).sup0;
      if (!(fsup > 0.0)) continue;
      const FastPoly u(exact_canonical(fN, rp));
      ++row.forms_used;
      for (const auto& z : sample_l1_ball(N, r, samples, seed + 1)) {
        int support = 0;
        for (const auto& x : z) support += x != cplx{} ? 1 : 0;
        const double val = std::abs(u(z));
        row.sup_u = std::max(row.sup_u, val);
        ++row.samples;
        if (support == 0 || val == 0.0) continue;
        row.C = std::max(row.C, std::pow(val / (R * fsup), 1.0 / support));
      }
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace dbar

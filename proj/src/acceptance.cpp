#include "dbar/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <stdexcept>

#include "dbar/bootstrap.hpp"
#include "dbar/canonical.hpp"
#include "dbar/counterexample.hpp"
#include "dbar/delta.hpp"
#include "dbar/io.hpp"
#include "dbar/monomial.hpp"
#include "dbar/sampling.hpp"
#include "dbar/torus_fourier.hpp"

namespace dbar {

using cplx = std::complex<double>;

namespace {

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double elapsed(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

CriterionResult start(int id, const char* title) {
  CriterionResult r;
  r.id = id;
  r.title = title;
  return r;
}

// 1. Single-variable collapse Δ(1, x) = 1/(1 − x).
CriterionResult c1(const std::string&) {
  CriterionResult res = start(1, "delta closed form 1/(1-x)");
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  double worst_width = 0.0;
  for (int i = 1; i <= 9; ++i) {
    const double x = i / 10.0;
    const auto e = delta_enclose_to_width(1.0, Point{{1, x}}, 5e-10);
    const double exact = 1.0 / (1.0 - x);
    worst_width = std::max(worst_width, e.width());
    if (!(e.lower <= exact && exact <= e.best_upper() && e.width() < 1e-9)) ok = false;
  }
  const double t = elapsed(t0);
  res.pass = ok && t < 1.0;
  res.detail = fmt("max width %.3g, all bracket %s, %.3f s (limit 1 s)", worst_width, ok ? "yes" : "no", t);
  return res;
}

// 2. ‖z‖ = 0.3, #z = 50: finite bounds, widths shrink ≥ 10× per cap doubling
// while above the rounding floor.
CriterionResult c2(const std::string&) {
  CriterionResult res = start(2, "delta bounded for ||z|| = 0.3, #z = 50");
  std::mt19937_64 rng(20260302);
  const int caps[] = {16, 32, 64, 128};
  bool ok = true;
  double min_ratio = HUGE_VAL;
  int pairs = 0;
  for (int s = 0; s < 20; ++s) {
    const Point z = Point::from_dense(sample_l1_sphere(50, 0.3, rng));
    std::vector<double> widths;
    for (int cap : caps) {
      const auto e = delta_enclose(1.0, z, cap);
      if (!std::isfinite(e.best_upper())) ok = false;
      widths.push_back(e.width());
    }
    for (std::size_t i = 0; i + 1 < widths.size(); ++i) {
      if (!(widths[i] > 1e-6)) continue;
      const double ratio = widths[i] / widths[i + 1];
      min_ratio = std::min(min_ratio, ratio);
      ++pairs;
      if (!(ratio >= 10.0)) ok = false;
    }
  }
  res.pass = ok && pairs > 0;
  res.detail = fmt("caps 16..128, %d doublings checked, min shrink %.3g (need >= 10)", pairs, min_ratio);
  return res;
}

// 3. Growth constant c of Δ ≤ e^{c #z} across support sizes.
CriterionResult c3(const std::string&) {
  CriterionResult res = start(3, "delta growth constant stable in #z");
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> norm(0.05, 0.49);
  double lo = HUGE_VAL;
  double hi = -HUGE_VAL;
  for (int m : {5, 10, 20, 50}) {
    std::vector<DeltaSample> batch;
    for (int i = 0; i < 20; ++i) batch.push_back({1.0, Point::from_dense(sample_l1_sphere(m, norm(rng), rng))});
    const double c = corollary43_measure(0.5, batch);
    res.table.push_back(fmt("#z=%d c=%.6f", m, c));
    lo = std::min(lo, c);
    hi = std::max(hi, c);
  }
  const double t = elapsed(t0);
  res.pass = lo > 0.0 && hi / lo < 2.0 && t < 10.0;
  res.detail = fmt("c in [%.4f, %.4f], max/min %.4f (need < 2), %.3f s (limit 10 s)", lo, hi, hi / lo, t);
  return res;
}

struct TestFunction {
  const char* name;
  int dim;
  HoloFunction h;
};

std::vector<TestFunction> coefficient_test_functions() {
  return {
      {"1/(1-z1/1.5)", 1, [](std::span<const cplx> z) { return 1.0 / (1.0 - z[0] / 1.5); }},
      {"exp(z1+2z2)", 2, [](std::span<const cplx> z) { return std::exp(z[0] + 2.0 * z[1]); }},
      {"z1z2+z2^3", 2, [](std::span<const cplx> z) { return z[0] * z[1] + z[1] * z[1] * z[1]; }},
      {"1/(1-(z1+z2+z3)/1.2)", 3,
       [](std::span<const cplx> z) { return 1.0 / (1.0 - (z[0] + z[1] + z[2]) / 1.2); }},
      {"cos(z1)(1+z2z3)+z3^2", 3,
       [](std::span<const cplx> z) { return std::cos(z[0]) * (1.0 + z[1] * z[2]) + z[2] * z[2]; }},
  };
}

// max |h| over the torus orbit of z, `grid` nodes per circle.
double orbit_max(const HoloFunction& h, const std::vector<cplx>& z, int grid) {
  std::vector<int> active;
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (z[i] != cplx{}) active.push_back(static_cast<int>(i));
  }
  std::vector<int> t(active.size(), 0);
  std::vector<cplx> w = z;
  double best = 0.0;
  while (true) {
    for (std::size_t a = 0; a < active.size(); ++a) {
      w[active[a]] = z[active[a]] * std::polar(1.0, 2.0 * std::numbers::pi * t[a] / grid);
    }
    best = std::max(best, std::abs(h(w)));
    std::size_t a = 0;
    while (a < t.size() && ++t[a] == grid) t[a++] = 0;
    if (a == t.size()) break;
  }
  return best;
}

// 4. Coefficient bound [h]_{0.9R} ≤ sampled sup on B(0.9R).
CriterionResult c4(const std::string&) {
  CriterionResult res = start(4, "coefficient bound by sampled sup");
  const double R = 1.0;
  const double rho = 0.9 * R;
  bool ok = true;
  double worst = 0.0;
  for (const auto& tf : coefficient_test_functions()) {
    const MonomialSeries h = extract(tf.h, tf.dim, R, 6);
    double M = 0.0;
    for (const auto& z : sample_l1_ball(tf.dim, rho, 4000, 404)) M = std::max(M, std::abs(tf.h(z)));
    for (const auto& [k, a] : h.coeffs) {
      std::vector<cplx> Z(static_cast<std::size_t>(tf.dim));
      for (const auto& e : k.entries()) Z[e.coord - 1] = rho * e.exp / k.order();
      M = std::max(M, orbit_max(tf.h, Z, 48));
    }
    const double a = coeff_bound(h, rho);
    worst = std::max(worst, a / M);
    res.table.push_back(fmt("%s N=%d terms=%zu coeff_bound=%.10g M=%.10g", tf.name, tf.dim, h.coeffs.size(), a, M));
    if (!(a <= M * (1.0 + 1e-6))) ok = false;
  }
  res.pass = ok;
  res.detail = fmt("5 series, max coeff_bound/M = %.9f (need <= 1+1e-6)", worst);
  return res;
}

MonomialSeries random_series(std::mt19937_64& rng, int dim, int max_grade, int terms, double radius) {
  const auto pool = indices_up_to(dim, max_grade);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  MonomialSeries h;
  h.radius = radius;
  while (static_cast<int>(h.coeffs.size()) < std::min<int>(terms, static_cast<int>(pool.size()))) {
    h.coeffs.emplace(pool[pick(rng)], cplx(u(rng), u(rng)));
  }
  h.stored_grade = max_grade;
  return h;
}

// 5. extract ∘ eval = identity on finite series.
CriterionResult c5(const std::string&) {
  CriterionResult res = start(5, "monomial round trip extract(eval)");
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(55);
  std::uniform_int_distribution<int> dim_d(1, 3);
  std::uniform_int_distribution<int> terms_d(2, 8);
  const double R = 4.0;
  const int grade = 6;
  double worst = 0.0;
  for (int s = 0; s < 20; ++s) {
    const int dim = dim_d(rng);
    const MonomialSeries h = random_series(rng, dim, grade, terms_d(rng), R);
    const HoloFunction f = [&h](std::span<const cplx> z) { return eval(h, Point::from_dense(z)).value; };
    const MonomialSeries back = extract(f, dim, R, grade);
    for (const auto& k : indices_up_to(dim, grade)) {
      const auto it = h.coeffs.find(k);
      const auto jt = back.coeffs.find(k);
      const cplx a = it == h.coeffs.end() ? cplx{} : it->second;
      const cplx b = jt == back.coeffs.end() ? cplx{} : jt->second;
      worst = std::max(worst, std::abs(a - b));
    }
  }
  const double t = elapsed(t0);
  res.pass = worst <= 1e-10 && t < 30.0;
  res.detail = fmt("20 series (R=4, grade 6), max coefficient error %.3g (need <= 1e-10), %.3f s (limit 30 s)", worst, t);
  return res;
}

// |a| r^n ∏ (k_ν/n)^{k_ν}, by direct products in long double.
long double direct_weight(const MultiIndex& k, cplx a, double r) {
  const int n = k.order();
  long double w = std::abs(a);
  for (int i = 0; i < n; ++i) w *= r;
  for (const auto& e : k.entries()) {
    const long double q = static_cast<long double>(e.exp) / n;
    for (int i = 0; i < e.exp; ++i) w *= q;
  }
  return w;
}

// 6. [h − ψ]_r ≤ ε for the entire split.
CriterionResult c6(const std::string&) {
  CriterionResult res = start(6, "entire split remainder <= epsilon");
  std::mt19937_64 rng(66);
  std::uniform_int_distribution<int> dim_d(1, 3);
  std::uniform_int_distribution<int> terms_d(10, 30);
  std::uniform_real_distribution<double> r_d(0.2, 0.9);
  std::uniform_real_distribution<double> log_mag(std::log(1e-3), std::log(10.0));
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  bool ok = true;
  double worst = 0.0;
  for (int s = 0; s < 20; ++s) {
    const int dim = dim_d(rng);
    MonomialSeries h = random_series(rng, dim, 6, terms_d(rng), 1.0);
    for (auto& [k, a] : h.coeffs) a = std::polar(std::exp(log_mag(rng)), phase(rng));
    const double r = r_d(rng);
    std::vector<long double> weights;
    for (const auto& [k, a] : h.coeffs) weights.push_back(direct_weight(k, a, r));
    std::sort(weights.begin(), weights.end());
    const double eps = static_cast<double>(weights[weights.size() / 2]) * std::uniform_real_distribution<double>(0.5, 2.0)(rng);
    const EntireSplit sp = entire_split(h, r, eps);
    const MonomialSeries rest = h - sp.psi;
    long double rest_max = 0.0L;
    for (const auto& [k, a] : h.coeffs) {
      const long double w = direct_weight(k, a, r);
      const bool kept = sp.kept.count(k) > 0;
      const bool tie = std::abs(w - eps) <= 1e-12L * eps;
      if (!tie && kept != (w >= eps)) ok = false;
      if (kept && !(sp.psi.coeffs.count(k) && sp.psi.coeffs.at(k) == a)) ok = false;
    }
    for (const auto& [k, a] : rest.coeffs) rest_max = std::max(rest_max, direct_weight(k, a, r));
    if (!(rest_max <= eps) || !(bracket_norm(rest, r) <= eps) || !(sp.remainder_norm <= eps)) ok = false;
    if (rest.coeffs.size() + sp.kept.size() != h.coeffs.size()) ok = false;
    worst = std::max(worst, static_cast<double>(rest_max / eps));
  }
  res.pass = ok;
  res.detail = fmt("20 series, max [h-psi]_r/eps = %.6f (need <= 1), partition checked independently", worst);
  return res;
}

// 7. Fejér means of |sin πt₁| + |sin πt₂|.
CriterionResult c7(const std::string&) {
  CriterionResult res = start(7, "fejer means converge, positive kernel");
  const int js[] = {1, 2, 4, 8, 16, 32, 64};
  bool ok = true;
  double err8 = 0.0;
  double err64 = 0.0;
  for (int g : {128, 256}) {
    const FejerDemo demo = fejer_demo(js, g);
    for (const auto& row : demo.rows) {
      if (!(row.min_kernel_weight >= 0.0)) ok = false;
      if (!verdict(row.sup_mean, demo.sup_v)) ok = false;
      if (g == 256 && row.j == 8) err8 = row.sup_error;
      if (g == 256 && row.j == 64) err64 = row.sup_error;
      res.table.push_back(fmt("g=%d j=%d sup_error=%.6g sup_mean=%.6g min_kernel=%.3g", g, row.j, row.sup_error,
                              row.sup_mean, row.min_kernel_weight));
    }
  }
  res.pass = ok && err64 < 0.25 * err8;
  res.detail = fmt("err(64)/err(8) = %.4f (need < 0.25), kernels >= 0 and |v^j| <= |v| on g=128,256: %s",
                   err64 / err8, ok ? "yes" : "no");
  return res;
}

// 8. Canonical solutions on the C² corpus.
CriterionResult c8(const std::string& data) {
  CriterionResult res = start(8, "canonical solver on C^2 corpus");
  const auto t0 = std::chrono::steady_clock::now();
  const auto corpus = load_forms(data + "/corpus_c2.json");
  const double r = 0.5;
  bool ok = corpus.size() == 10;
  double worst = 0.0;
  int checked = 0;
  for (const auto& f : corpus) {
    const CanonicalSolution sol = canonical_solve(f, r, 8);
    const Lemma51Constants c = lemma51_constants(f, r, 2);
    const Lemma51Result l = lemma51_check(f, r, 2, c.A, c.Q, 100);
    bool exact = true;
    for (const auto& chk : sol.report.bound_checks) {
      if ((chk.name == "dbar_exact" || chk.name == "normalized") && !chk.pass) exact = false;
    }
    if (!exact || !l.check.pass || l.samples != 100) ok = false;
    worst = std::max(worst, l.worst_ratio);
    checked += l.samples;
  }
  const double t = elapsed(t0);
  res.pass = ok && t < 60.0;
  res.detail = fmt("%zu forms, symbolic checks %s, canonical-vs-base bound at %d points worst lhs/rhs %.4f, %.3f s (limit 60 s)",
                   corpus.size(), ok ? "pass" : "FAIL", checked, worst, t);
  return res;
}

// 9. Restriction consistency and tower stabilisation on C³.
CriterionResult c9(const std::string& data) {
  CriterionResult res = start(9, "restriction consistency and tower on C^3");
  const auto c2 = load_forms(data + "/corpus_c2.json");
  const auto c3 = load_forms(data + "/corpus_c3.json");
  const double r = 0.5;
  bool ok = c2.size() == c3.size() && !c3.empty();
  int pairs = 0;
  for (std::size_t i = 0; ok && i < c3.size(); ++i) {
    ok = ok && restriction_consistency(c3[i], c2[i].with_dim(3), 2, r);
    ok = ok && restriction_consistency(c3[i], c3[i].restricted(1).with_dim(3), 1, r);
    const TowerReport tower = truncation_tower(c3[i], 1.0, r, {1, 2, 3});
    ok = ok && tower.stable && tower.all_pass();
    pairs += 2;
  }
  res.pass = ok;
  res.detail = fmt("%zu forms, %d restriction pairs and towers N=1,2,3 exact: %s", c3.size(), pairs, ok ? "yes" : "no");
  return res;
}

// 10. Bootstrap worked examples.
CriterionResult c10(const std::string& data) {
  CriterionResult res = start(10, "bootstrap examples N=2");
  bool ok = true;
  std::string detail;
  const double Z[] = {0.1, 0.1};
  for (const char* file : {"bootstrap_dz2.json", "bootstrap_zb1zb2.json"}) {
    const auto t0 = std::chrono::steady_clock::now();
    const PolyForm f = load_form(data + "/" + file);
    const BootstrapResult b = bootstrap_solve(f, Z, 1.0, 0.5);
    const auto& top = b.levels.front().report;
    bool slice_zero = false;
    bool lip = false;
    double lip_l = 0.0;
    double lip_r = 0.0;
    for (const auto& chk : top.bound_checks) {
      if (chk.name == "slice_zero") slice_zero = chk.pass;
      if (chk.name == "pi_lipschitz") {
        lip = chk.pass;
        lip_l = chk.lhs;
        lip_r = chk.rhs;
      }
    }
    const double resid = top.residual_sup;
    const double uz = std::abs(b.U_at_Z);
    const bool pass = resid < 1e-3 && uz < 1e-4 && slice_zero && lip;
    ok = ok && pass;
    res.table.push_back(fmt("%s residual=%.3g |U(Z)|=%.3g slice_zero=%d |pi|_1=%.4g<=%.4g %.2f s", file, resid, uz, slice_zero, lip_l,
                            lip_r, elapsed(t0)));
    detail += fmt("%s%s residual %.3g |U(Z)| %.3g", detail.empty() ? "" : "; ", file, resid, uz);
  }
  res.pass = ok;
  res.detail = detail;
  return res;
}

// 11. The divergence counterexample.
CriterionResult c11(const std::string&) {
  CriterionResult res = start(11, "counterexample divergence");
  const double R = 0.25;
  const auto rows = divergence_scan({1, R, doubling_list(4096)});
  double d16 = 0.0;
  double d4096 = 0.0;
  bool increasing = true;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].N == 16) d16 = rows[i].deviation;
    if (rows[i].N == 4096) d4096 = rows[i].deviation;
    if (i && !(rows[i].deviation > rows[i - 1].deviation)) increasing = false;
  }
  const auto lnln = [R](double n) { return std::log(std::log(n * n / (R * R))); };
  const double need = d16 + R * (lnln(4096) - lnln(16)) / 2.0 - 1e-12;
  const bool grows = d4096 >= need;

  std::mt19937_64 rng(911);
  std::uniform_real_distribution<double> rad(0.05, 0.5);
  std::uniform_real_distribution<double> ang(0.0, 2.0 * std::numbers::pi);
  double fd_err = 0.0;
  for (int i = 0; i < 20; ++i) {
    const cplx z = std::polar(rad(rng), ang(rng));
    const cplx phi = phi_fn(z, 1);
    fd_err = std::max(fd_err, std::abs(dbar_lambda_fd(z, 1, 1e-4 * std::abs(z)) - phi) / std::abs(phi));
  }
  bool holder = true;
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int p : {1, 2, 3}) {
    for (int i = 0; i < 10000; ++i) {
      const cplx z = std::polar(kCxRadius * std::sqrt(u01(rng)) * (1.0 - 1e-12), ang(rng));
      if (!(std::abs(phi_fn(z, p)) <= std::pow(std::abs(z), p - 1))) holder = false;
    }
  }
  res.pass = grows && increasing && fd_err < 1e-5 && holder;
  res.detail = fmt("dev(4096)=%.6f >= %.6f: %s; strictly increasing: %s; fd rel err %.3g (need < 1e-5); |phi|<=|z|^(p-1): %s",
                   d4096, need, grows ? "yes" : "no", increasing ? "yes" : "no", fd_err, holder ? "yes" : "no");
  for (const auto& row : rows) res.table.push_back(fmt("N=%d a_N=%.6f deviation=%.6f", row.N, row.a_N, row.deviation));
  return res;
}

// 12. N-independence probe of the constant C in sup|u| ≤ R C^{#z}.
CriterionResult c12(const std::string& data) {
  CriterionResult res = start(12, "canonical sup constant stable for N=1,2,3");
  const auto corpus = load_forms(data + "/corpus_c3.json");
  const auto rows = sup_constant_fit(corpus, 1.0, 0.5, {1, 2, 3});
  double lo = HUGE_VAL;
  double hi = 0.0;
  for (const auto& row : rows) {
    lo = std::min(lo, row.C);
    hi = std::max(hi, row.C);
    res.table.push_back(fmt("N=%d C=%.6f sup|u|=%.6g forms=%d samples=%d", row.N, row.C, row.sup_u, row.forms_used,
                            row.samples));
  }
  res.pass = lo > 0.0 && hi / lo < 2.0;
  res.detail = fmt("C in [%.4f, %.4f], max/min %.4f (need < 2; r'=0.75, not asserted beyond N=3)", lo, hi, hi / lo);
  return res;
}

}  // namespace

CriterionResult run_criterion(int id, const std::string& data_dir) {
  using Fn = CriterionResult (*)(const std::string&);
  static constexpr Fn fns[kCriterionCount] = {c1, c2, c3, c4, c5, c6, c7, c8, c9, c10, c11, c12};
  if (id < 1 || id > kCriterionCount) throw std::invalid_argument("acceptance: criterion id outside 1..12");
  const auto t0 = std::chrono::steady_clock::now();
  CriterionResult res;
  try {
    res = fns[id - 1](data_dir);
  } catch (const std::exception& e) {
    res.id = id;
    res.pass = false;
    res.detail = std::string("exception: ") + e.what();
  }
  res.seconds = elapsed(t0);
  return res;
}

std::vector<CriterionResult> run_acceptance(const std::string& data_dir, std::span<const int> ids) {
  std::vector<CriterionResult> out;
  if (ids.empty()) {
    for (int id = 1; id <= kCriterionCount; ++id) out.push_back(run_criterion(id, data_dir));
  } else {
    for (int id : ids) out.push_back(run_criterion(id, data_dir));
  }
  return out;
}

}  // namespace dbar

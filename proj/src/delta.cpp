#include "dbar/delta.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace dbar {

namespace {

constexpr double kE = 2.718281828459045;

double to_double_capped(long double v) {
  if (!(v < static_cast<long double>(DBL_MAX))) return HUGE_VAL;
  return static_cast<double>(v);
}

// Parameters shared by the enclosure routines; everything except the partial
// sum itself.
struct TailSetup {
  double norm = 0.0;
  double q_big = 1.0;
  double eta = 0.5;
  int n_split = 0;
  int s_eta = 0;
  int support = 0;
};

TailSetup tail_setup(cplx q, const Point& z) {
  TailSetup t;
  t.norm = z.l1_norm();
  if (!(t.norm < 1.0)) throw std::domain_error("delta: requires ||z|| < 1");
  t.support = z.support_size();
  t.q_big = std::max(1.0, std::abs(q));
  double eta = std::max(std::cbrt(t.norm), 0.5);
  while (eta * eta * eta < t.norm) eta = std::nextafter(eta, 2.0);
  if (!(eta < 1.0)) throw std::domain_error("delta: no eta < 1 satisfies eta^3 >= ||z||");
  t.eta = eta;

  // Put the largest moduli in the split part until the rest is small enough.
  auto mods = z.moduli();
  std::sort(mods.begin(), mods.end());
  const double budget = (eta - eta * eta) / (kE * t.q_big);
  double rest = 0.0;
  int kept_small = 0;
  for (double m : mods) {
    if ((rest + m) * (1.0 + kRoundingSlack) > budget) break;
    rest += m;
    ++kept_small;
  }
  t.n_split = t.support - kept_small;
  t.s_eta = minimal_s_eta(eta);
  return t;
}

// ln of the H-set tail Q^n e^{n s} eta^{D+1}/(1-eta).
long double log_tail_h(const TailSetup& t, int cap) {
  return t.n_split * std::log(static_cast<long double>(t.q_big)) + static_cast<long double>(t.n_split) * t.s_eta +
         (cap + 1) * std::log(static_cast<long double>(t.eta)) - std::log1p(-static_cast<long double>(t.eta));
}

// ln of the counting tail, +inf when the ratio bound does not close.
long double log_tail_counting(const TailSetup& t, int cap) {
  const int m = t.support;
  if (m == 0) return -INFINITY;
  const long double x = t.norm;
  const long double rho = x * (cap + 1.0L + m) / (cap + 2.0L);
  if (!(rho < 1.0L)) return INFINITY;
  const long double j = cap + 1.0L;
  const long double log_binom = std::lgamma(j + m) - std::lgamma(j + 1.0L) - std::lgamma(static_cast<long double>(m));
  return m * std::log(static_cast<long double>(t.q_big)) + log_binom + j * std::log(x) - std::log1p(-rho);
}

double tail_value(long double log_tail) {
  if (log_tail == -INFINITY) return 0.0;
  if (log_tail > 700.0L) return HUGE_VAL;
  return to_double_capped(std::exp(log_tail));
}

DeltaEnclosure assemble(cplx q, const Point& z, const TailSetup& t, int cap) {
  DeltaEnclosure e;
  e.degree_cap = cap;
  e.eta = t.eta;
  e.n_split = t.n_split;
  e.s_eta = t.s_eta;
  const auto mods = z.moduli();
  const auto terms = delta_grade_terms(std::abs(q), mods, cap);
  const long double partial = std::accumulate(terms.begin(), terms.end(), 0.0L);
  const double raw = to_double_capped(partial);
  e.lower = raw * (1.0 - kRoundingSlack);
  const double th = tail_value(log_tail_h(t, cap));
  const double tc = tail_value(log_tail_counting(t, cap));
  e.upper = raw * (1.0 + kRoundingSlack) + th * (1.0 + kRoundingSlack);
  e.upper_counting = raw * (1.0 + kRoundingSlack) + tc * (1.0 + kRoundingSlack);
  if (t.support == 0) {
    e.lower = e.upper = e.upper_counting = 1.0;
  }
  return e;
}

}  // namespace

int minimal_s_eta(double eta) {
  if (!(eta > 0.0 && eta < 1.0)) throw std::domain_error("s_eta: requires 0 < eta < 1");
  // f(s) = ln((e eta)^s s! / s^s); s_eta is one past the last s with f(s) ≥ 0.
  // f(s+1) - f(s) < ln eta + 1/(2s), so f decreases for s > 1/(2|ln eta|).
  const double le = std::log(eta);
  const double turn = 1.0 / (2.0 * std::abs(le));
  auto f = [&](double s) { return s * (1.0 + le) + std::lgamma(s + 1.0) - s * std::log(s); };
  int last_bad = 0;
  for (int s = 1;; ++s) {
    const double v = f(s);
    if (v > -1e-12 * std::max(1.0, static_cast<double>(s))) last_bad = s;
    if (s > turn + 1.0 && v < 0.0 && s > last_bad) break;
    if (s > 100000000) throw std::domain_error("s_eta: search did not terminate");
  }
  return last_bad + 1;
}

std::vector<long double> delta_grade_terms(double abs_q, std::span<const double> moduli, int cap) {
  if (cap < 0) throw std::invalid_argument("delta: negative degree cap");
  const std::size_t n = static_cast<std::size_t>(cap) + 1;
  std::vector<long double> cur(n, 0.0L);
  cur[0] = 1.0L;
  std::vector<long double> w(n), next(n);
  bool first = true;
  for (double a : moduli) {
    if (!(a > 0.0)) continue;
    w[0] = 1.0L;
    const long double la = std::log(static_cast<long double>(a));
    for (int m = 1; m <= cap; ++m) {
      // m! (e a / m)^m, the EGF weight of z_ν^m / m^m.
      const long double lm = m;
      w[m] = abs_q * std::exp(std::lgamma(lm + 1.0L) + lm + lm * (la - std::log(lm)));
    }
    if (first) {
      cur = w;
      first = false;
      continue;
    }
    for (int j = 0; j <= cap; ++j) {
      long double binom = 1.0L;
      long double acc = 0.0L;
      for (int i = 0; i <= j; ++i) {
        acc += binom * cur[i] * w[j - i];
        binom = binom * (j - i) / (i + 1);
      }
      next[j] = acc;
    }
    std::swap(cur, next);
  }
  for (int j = 1; j <= cap; ++j) {
    const long double lj = j;
    cur[j] *= std::exp(lj * std::log(lj) - std::lgamma(lj + 1.0L) - lj);
  }
  return cur;
}

double delta_partial(cplx q, const Point& z, int degree_cap) {
  if (!(z.l1_norm() < 1.0)) throw std::domain_error("delta: requires ||z|| < 1");
  const auto terms = delta_grade_terms(std::abs(q), z.moduli(), degree_cap);
  return to_double_capped(std::accumulate(terms.begin(), terms.end(), 0.0L));
}

DeltaEnclosure delta_enclose(cplx q, const Point& z, int degree_cap) {
  if (degree_cap < 0) throw std::invalid_argument("delta: negative degree cap");
  const auto t = tail_setup(q, z);
  return assemble(q, z, t, degree_cap);
}

DeltaEnclosure delta_enclose_to_width(cplx q, const Point& z, double target_width, int max_cap) {
  if (!(target_width > 0.0)) throw std::invalid_argument("delta: target width must be positive");
  const auto t = tail_setup(q, z);
  if (t.support == 0) return assemble(q, z, t, 0);
  // Leave half the width for the rounding slack on the partial sum.
  const long double budget = std::log(static_cast<long double>(target_width) / 2.0L);
  auto ok = [&](int cap) { return std::min(log_tail_h(t, cap), log_tail_counting(t, cap)) <= budget; };
  // H-tail is linear in the cap; solve it directly, then let the counting
  // tail improve on it by bisection.
  long double need = (budget - log_tail_h(t, 0)) / std::log(static_cast<long double>(t.eta));
  int hi = static_cast<int>(std::min<long double>(std::max<long double>(std::ceil(need), 0.0L), max_cap + 1.0L));
  if (!ok(hi)) {
    int probe = std::max(hi, 1);
    while (probe <= max_cap && !ok(probe)) probe *= 2;
    if (probe > max_cap) probe = max_cap;
    if (!ok(probe)) throw std::domain_error("delta: target width needs a degree cap beyond the limit");
    hi = probe;
  }
  int lo = -1;
  while (hi - lo > 1) {
    const int mid = lo + (hi - lo) / 2;
    (ok(mid) ? hi : lo) = mid;
  }
  if (hi > max_cap) throw std::domain_error("delta: target width needs a degree cap beyond the limit");
  auto e = assemble(q, z, t, hi);
  // The partial sum's rounding slack can push the width over; one more step fixes it.
  while (e.width() > target_width && e.degree_cap < max_cap) e = assemble(q, z, t, e.degree_cap + std::max(1, e.degree_cap / 8));
  return e;
}

double delta_upper(cplx q, const Point& z, double rel_tol) {
  if (!(rel_tol > 0.0)) throw std::invalid_argument("delta: rel_tol must be positive");
  // Δ ≥ 1, so an absolute width of rel_tol is also a relative one.
  return delta_enclose_to_width(q, z, rel_tol).best_upper();
}

double corollary43_measure(double theta, std::span<const DeltaSample> samples, int degree_cap) {
  if (!(theta > 0.0 && theta < 1.0)) throw std::domain_error("corollary43: theta must lie in (0, 1)");
  if (samples.empty()) throw std::invalid_argument("corollary43: no samples");
  double c = -HUGE_VAL;
  bool any = false;
  for (const auto& s : samples) {
    if (!(s.z.l1_norm() < theta)) throw std::invalid_argument("corollary43: sample with ||z|| >= theta");
    const int m = s.z.support_size();
    if (m == 0) continue;
    const auto e = delta_enclose(s.q, s.z, degree_cap);
    const double log_scale = std::max(0.0, m * std::log(std::abs(s.q)));
    c = std::max(c, (std::log(e.upper) - log_scale) / m);
    any = true;
  }
  return any ? c : 0.0;
}

}  // namespace dbar

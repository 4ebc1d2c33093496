#include "dbar/pompeiu.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dbar {

using cplx = std::complex<double>;

cplx pompeiu_solve_1d(const std::function<cplx(cplx)>& f, cplx z, double rho, int radial) {
  if (radial < kPompeiuMinRadial) throw std::invalid_argument("pompeiu: radial grid below the 16 x 32 minimum");
  if (!(std::abs(z) < rho)) throw std::domain_error("pompeiu: point outside the disc");
  const int angular = 2 * radial;
  const double dphi = 2.0 * std::numbers::pi / angular;
  const double c = rho * rho - std::norm(z);
  cplx total = 0.0;
  for (int a = 0; a < angular; ++a) {
    const double phi = a * dphi;
    const cplx dir = std::polar(1.0, phi);
    const double p = (std::conj(z) * dir).real();
    const double smax = -p + std::sqrt(p * p + c);
    const double ds = smax / radial;
    cplx inner = 0.0;
    for (int i = 0; i < radial; ++i) inner += f(z + (i + 0.5) * ds * dir);
    total += std::conj(dir) * inner * ds;
  }
  return -total * dphi / std::numbers::pi;
}

}  // namespace dbar

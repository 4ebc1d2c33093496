#pragma once

#include <complex>
#include <functional>

namespace dbar {

inline constexpr int kPompeiuMinRadial = 16;
inline constexpr int kPompeiuDefaultRadial = 32;

/// u(z) = −(1/π) ∬_{|ζ|<ρ} f(ζ)/(ζ − z) dA(ζ), so that ∂u/∂z̄ = f inside the disc.
///
/// Polar coordinates centred at z cancel the kernel: with ζ = z + s e^{iφ},
/// u(z) = −(1/π) ∫ e^{−iφ} ∫₀^{s_max(φ)} f(z + s e^{iφ}) ds dφ, where s_max
/// reaches the circle |ζ| = ρ. The radial integral uses `radial` midpoint
/// cells (the midpoint of each annular cell, so the kernel is never
/// evaluated at ζ = z) and the angle uses 2·radial trapezoid nodes.
/// Throws std::domain_error if |z| ≥ ρ, std::invalid_argument if radial < 16.
std::complex<double> pompeiu_solve_1d(const std::function<std::complex<double>(std::complex<double>)>& f,
                                      std::complex<double> z, double rho, int radial = kPompeiuDefaultRadial);

}  // namespace dbar

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <numbers>

namespace dbar::quad {

struct Options {
  double rel_tol = 1e-10;
  double abs_tol = 0.0;
  std::size_t max_intervals = 1'000'000;
};

struct Result {
  double value = 0.0;
  double error = 0.0;
  std::size_t intervals = 0;
};

/// One 15-point Gauss-Kronrod panel on [a, b]; error is |K15 - G7|.
Result gauss_kronrod15(const std::function<double(double)>& f, double a, double b);

/// Globally adaptive Gauss-Kronrod integration over a finite interval.
///
/// The panel with the largest error estimate is bisected until the summed
/// estimate drops below max(abs_tol, rel_tol * |value|). Throws
/// QuadratureError carrying the achieved estimate when the interval budget
/// runs out or the integrand produces non-finite values.
Result integrate(const std::function<double(double)>& f, double a, double b,
                 const Options& opts = {});

/// Integral over [a, inf) via r = a + t / (1 - t), t in [0, 1).
///
/// The tail is part of the adaptive error estimate rather than being cut off.
/// t is clamped below 1 - 1e-12.
Result integrate_half_line(const std::function<double(double)>& f, double a,
                           const Options& opts = {});

struct ComplexResult {
  std::complex<double> value{};
  double error = 0.0;
  std::size_t intervals = 0;
};

/// Complex-valued counterparts; the error estimate is |K15 - G7| in modulus.
ComplexResult integrate_complex(const std::function<std::complex<double>(double)>& f, double a,
                                double b, const Options& opts = {});
ComplexResult integrate_half_line_complex(const std::function<std::complex<double>(double)>& f,
                                  double a, const Options& opts = {});

/// Trapezoid rule with n equispaced nodes over one period [0, 2 pi).
/// Exact for trigonometric polynomials of degree < n.
template <class F>
auto periodic_trapezoid(F&& f, std::size_t n) {
  using value_type = decltype(f(0.0));
  value_type sum{};
  const double step = 2.0 * std::numbers::pi / static_cast<double>(n);
  for (std::size_t j = 0; j < n; ++j) sum += f(step * static_cast<double>(j));
  return sum * step;
}

}  // namespace dbar::quad

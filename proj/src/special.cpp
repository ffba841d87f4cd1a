#include "dbar/special.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include "dbar/errors.hpp"

namespace dbar {

namespace {

// B_{2k} / (2k (2k - 1)), k = 1..8, for the Stirling series of ln Gamma.
constexpr std::array<double, 8> kStirling = {
    1.0 / 12.0,          -1.0 / 360.0,     1.0 / 1260.0,  -1.0 / 1680.0,
    1.0 / 1188.0,        -691.0 / 360360.0, 1.0 / 156.0,  -3617.0 / 122400.0,
};

// Arguments at or above this are handled by the asymptotic series alone.
constexpr double kAsymptoticFloor = 20.0;

void require_positive(double x, const char* name) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    std::ostringstream msg;
    msg << name << " must be positive and finite, got " << x;
    throw ParameterError(msg.str());
  }
}

// Sum_k c_k (y + h)^{1-2k} - c_k y^{1-2k}.
double series_first_difference(double y, double h) {
  const double inv_a = 1.0 / (y + h);
  const double inv_b = 1.0 / y;
  const double a2 = inv_a * inv_a;
  const double b2 = inv_b * inv_b;
  double pa = inv_a;
  double pb = inv_b;
  double sum = 0.0;
  for (double c : kStirling) {
    sum += c * (pa - pb);
    pa *= a2;
    pb *= b2;
  }
  return sum;
}

// Sum_k c_k [(y+h)^{1-2k} - 2 y^{1-2k} + (y-h)^{1-2k}].
double series_second_difference(double y, double h) {
  // k = 1 in closed form: 1/(y+h) - 2/y + 1/(y-h) = 2h^2 / (y (y^2 - h^2)).
  double sum = kStirling[0] * (2.0 * h * h / (y * (y - h) * (y + h)));
  const double ia = 1.0 / (y + h);
  const double ib = 1.0 / y;
  const double ic = 1.0 / (y - h);
  double pa = ia * ia * ia;
  double pb = ib * ib * ib;
  double pc = ic * ic * ic;
  for (std::size_t k = 1; k < kStirling.size(); ++k) {
    sum += kStirling[k] * ((pa - pb) + (pc - pb));
    pa *= ia * ia;
    pb *= ib * ib;
    pc *= ic * ic;
  }
  return sum;
}

}  // namespace

double log_gamma(double x) {
  require_positive(x, "log_gamma argument");
#if defined(__GLIBC__)
  int sign = 0;
  return ::lgamma_r(x, &sign);
#else
  return std::lgamma(x);
#endif
}

double log_gamma_ratio(double x, double h) {
  require_positive(x, "log_gamma_ratio x");
  require_positive(h, "log_gamma_ratio h");

  // Shift upward with Gamma(t + 1) = t Gamma(t) until the series is accurate.
  double correction = 0.0;
  double y = x;
  while (y < kAsymptoticFloor) {
    correction += std::log1p(h / y);
    y += 1.0;
  }

  // (y + h - 1/2) ln(y + h) - (y - 1/2) ln y - h, rearranged to avoid
  // cancellation between the two large logarithms.
  const double leading = (y - 0.5) * std::log1p(h / y) + h * std::log(y + h) - h;
  return leading + series_first_difference(y, h) - correction;
}

double log_gamma_second_difference(double x, double h) {
  require_positive(x, "log_gamma_second_difference x");
  require_positive(h, "log_gamma_second_difference h");
  if (!(h < x)) {
    std::ostringstream msg;
    msg << "log_gamma_second_difference requires h < x, got x=" << x << " h=" << h;
    throw ParameterError(msg.str());
  }

  double correction = 0.0;
  double y = x;
  while (y - h < kAsymptoticFloor) {
    const double q = h / y;
    correction += std::log1p(-q * q);
    y += 1.0;
  }

  const double q = h / y;
  const double leading =
      (y - 0.5) * std::log1p(-q * q) + h * (std::log1p(q) - std::log1p(-q));
  return leading + series_second_difference(y, h) - correction;
}

}  // namespace dbar

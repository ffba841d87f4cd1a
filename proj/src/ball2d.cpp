#include "dbar/ball2d.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "dbar/errors.hpp"
#include "dbar/quadrature.hpp"
#include "dbar/special.hpp"

namespace dbar::ball {

namespace {

constexpr std::size_t kTermBudget = 1'000'000;

void check_args(double alpha, int n1, int n2) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    std::ostringstream msg;
    msg << "ball weight requires alpha >= 0, got " << alpha;
    throw ParameterError(msg.str());
  }
  if (n1 < 0 || n2 < 0) throw ParameterError("ball multi-index must be nonnegative");
}

void check_direction(int direction) {
  if (direction != 1 && direction != 2) {
    std::ostringstream msg;
    msg << "direction must be 1 or 2, got " << direction;
    throw ParameterError(msg.str());
  }
}

// ln c^2 in extended precision, every factor summed termwise.
long double log_moment_ext(double alpha, int n1, int n2) {
  const long double a = alpha;
  auto log_factorial = [](int n) {
    long double acc = 0.0L;
    for (int j = 2; j <= n; ++j) acc += std::log(static_cast<long double>(j));
    return acc;
  };
  // Grouped so that (n1, n2) and (n2, n1) give bit-identical results.
  long double sum = 2.0L * std::log(std::numbers::pi_v<long double>) +
                    (log_factorial(n1) + log_factorial(n2));
  for (int j = 1; j <= n1 + n2 + 2; ++j) sum -= std::log(a + j);
  return sum;
}

double ball_norm(const Point& p) { return std::sqrt(std::norm(p[0]) + std::norm(p[1])); }

void check_point(const Point& p, const char* name) {
  if (!(ball_norm(p) < 1.0)) {
    std::ostringstream msg;
    msg << name << "=(" << p[0] << ", " << p[1] << ") lies outside the open unit ball";
    throw DomainError(msg.str());
  }
}

}  // namespace

double ball_moment_log(double alpha, int n1, int n2) {
  check_args(alpha, n1, n2);
  return static_cast<double>(log_moment_ext(alpha, n1, n2));
}

double ball_moment_quadrature(double alpha, int n1, int n2, double rel_tol) {
  check_args(alpha, n1, n2);
  quad::Options inner_opts;
  inner_opts.rel_tol = rel_tol * 1e-2;
  quad::Options outer_opts;
  outer_opts.rel_tol = rel_tol;

  auto outer = [&](double s2) {
    if (s2 <= 0.0) return 0.0;
    auto inner = [&](double s1) { return std::pow(s2 - s1, n1) * std::pow(s1, alpha); };
    const double in = quad::integrate(inner, 0.0, s2, inner_opts).value;
    return std::pow(1.0 - s2, n2) * in;
  };
  const double value = quad::integrate(outer, 0.0, 1.0, outer_opts).value;
  return 2.0 * std::log(std::numbers::pi) + std::log(value);
}

double form_energy(double alpha, int n1, int n2, int direction) {
  check_args(alpha, n1, n2);
  check_direction(direction);
  const double s = alpha + n1 + n2;
  const double other = direction == 1 ? n2 : n1;
  return (alpha + other + 2.0) / ((s + 3.0) * (s + 2.0));
}

double form_energy_from_moments(double alpha, int n1, int n2, int direction) {
  check_args(alpha, n1, n2);
  check_direction(direction);
  // Step along the chosen coordinate.
  auto lm = [&](int step) {
    return direction == 1 ? log_moment_ext(alpha, n1 + step, n2)
                          : log_moment_ext(alpha, n1, n2 + step);
  };
  const int along = direction == 1 ? n1 : n2;
  const long double here = lm(0);
  const long double up = std::exp(lm(1) - here);
  if (along == 0) return static_cast<double>(up);
  const long double down = std::exp(here - lm(-1));
  return static_cast<double>(up - down);
}

double ball_hs_partial_sum(double alpha, int N) {
  check_args(alpha, 0, 0);
  if (N < 0) throw ParameterError("ball partial-sum bound must be nonnegative");
  double sum = 0.0;
  double carry = 0.0;
  for (int n1 = 1; n1 <= N; ++n1) {
    for (int n2 = 1; n2 <= N; ++n2) {
      const double x = form_energy(alpha, n1, n2, 1) + form_energy(alpha, n1, n2, 2);
      const double t = sum + x;
      carry += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
      sum = t;
    }
  }
  return sum + carry;
}

Complex ball_kernel_series(double alpha, const Point& z, const Point& w, double rel_tol) {
  check_args(alpha, 0, 0);
  if (!(rel_tol > 1e-14 && rel_tol < 1e-2)) {
    std::ostringstream msg;
    msg << "rel_tol must lie in (1e-14, 1e-2), got " << rel_tol;
    throw ParameterError(msg.str());
  }
  check_point(z, "z");
  check_point(w, "w");

  const Complex a = z[0] * std::conj(w[0]);
  const Complex b = z[1] * std::conj(w[1]);
  const double t = std::abs(a) + std::abs(b);  // < 1 by Cauchy-Schwarz

  Complex sum{};
  std::size_t terms = 0;
  for (int s = 0;; ++s) {
    // Diagonal n1 + n2 = s and its majorant sum |a|^n1 |b|^n2 / c^2.
    Complex diagonal{};
    double majorant = 0.0;
    for (int n1 = 0; n1 <= s; ++n1) {
      const int n2 = s - n1;
      const double inv_c2 = std::exp(-ball_moment_log(alpha, n1, n2));
      diagonal += inv_c2 * std::pow(a, n1) * std::pow(b, n2);
      majorant += inv_c2 * std::pow(std::abs(a), n1) * std::pow(std::abs(b), n2);
      ++terms;
    }
    sum += diagonal;
    // Majorant ratio between diagonals s+1 and s is t (alpha+s+3)/(s+1),
    // nonincreasing in s, so q bounds every later ratio.
    const double q = t * (alpha + s + 4.0) / (s + 2.0);
    if (q < 1.0 && majorant * q / (1.0 - q) <= rel_tol * std::abs(sum)) return sum;
    if (t == 0.0) return sum;
    if (terms > kTermBudget) break;
  }
  std::ostringstream msg;
  msg << "ball kernel series did not reach rel_tol " << rel_tol << " within " << kTermBudget
      << " terms";
  throw TruncationError(msg.str());
}

double ball_kernel_constant(double alpha) {
  return ball_kernel_series(alpha, {Complex{}, Complex{}}, {Complex{}, Complex{}}).real();
}

Complex ball_kernel_closed(double alpha, const Point& z, const Point& w) {
  check_args(alpha, 0, 0);
  check_point(z, "z");
  check_point(w, "w");
  const double constant = (alpha + 1.0) * (alpha + 2.0) / (std::numbers::pi * std::numbers::pi);
  const Complex inner = z[0] * std::conj(w[0]) + z[1] * std::conj(w[1]);
  return constant * std::pow(1.0 - inner, -(alpha + 3.0));
}

BallMomentGrid make_ball_grid(double alpha, int n_max) {
  check_args(alpha, n_max, 0);
  BallMomentGrid grid;
  grid.alpha = alpha;
  grid.n_max = n_max;
  const auto side = static_cast<std::size_t>(n_max) + 1;
  grid.log_moments.resize(side * side);
  for (int n1 = 0; n1 <= n_max; ++n1) {
    for (int n2 = 0; n2 <= n_max; ++n2) {
      grid.log_moments[static_cast<std::size_t>(n1) * side + n2] = ball_moment_log(alpha, n1, n2);
    }
  }
  return grid;
}

}  // namespace dbar::ball

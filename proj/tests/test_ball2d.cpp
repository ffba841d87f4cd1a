#include <cmath>
#include <numbers>

#include "dbar/ball2d.hpp"
#include "dbar/errors.hpp"
#include "doctest.h"
#include "oracles.hpp"

using doctest::Approx;
using namespace dbar::ball;

namespace {

const double kPi = std::numbers::pi;

// pi^2 int_{u+v<1} u^n1 v^n2 (1-u-v)^alpha du dv, Simpson in both variables.
double ball_moment_simpson(double alpha, int n1, int n2, int panels = 400) {
  auto outer = [&](double v) {
    const double top = 1.0 - v;
    auto inner = [&](double u) {
      return std::pow(u, n1) * std::pow(top - u, alpha);
    };
    return std::pow(v, n2) * oracle::simpson(inner, 0.0, top, panels);
  };
  return kPi * kPi * oracle::simpson(outer, 0.0, 1.0, panels);
}

// Moment from the factorial product, no logarithms.
long double ball_moment_product(long double alpha, int n1, int n2) {
  long double c = 1.0L;
  int i1 = 1, i2 = 1;
  for (int j = 1; j <= n1 + n2 + 2; ++j) {
    long double num = 1.0L;
    if (i1 <= n1) num *= i1++;
    else if (i2 <= n2) num *= i2++;
    c *= num / (alpha + j);
  }
  return static_cast<long double>(kPi) * kPi * c;
}

}  // namespace

TEST_SUITE("ball2d") {
  TEST_CASE("ball_moment_log examples") {
    CHECK(ball_moment_log(0.0, 0, 0) == Approx(std::log(kPi * kPi / 2)).epsilon(1e-15));
    CHECK(ball_moment_log(0.0, 1, 0) == Approx(std::log(kPi * kPi / 6)).epsilon(1e-15));
    for (double a : {0.0, 0.5, 3.0}) {
      for (int n1 = 0; n1 < 20; ++n1) {
        for (int n2 = 0; n2 < 20; ++n2) {
          CHECK(ball_moment_log(a, n1, n2) == ball_moment_log(a, n2, n1));
        }
      }
    }
    CHECK_THROWS_AS(ball_moment_log(-0.5, 0, 0), dbar::ParameterError);
    CHECK_THROWS_AS(ball_moment_log(0.0, -1, 0), dbar::ParameterError);
  }

  TEST_CASE("ball_moment_log against the factorial product") {
    for (double a : {0.0, 1.0, 2.5}) {
      for (int n1 = 0; n1 <= 30; n1 += 3) {
        for (int n2 = 0; n2 <= 30; n2 += 5) {
          const double want = std::log(static_cast<double>(ball_moment_product(a, n1, n2)));
          CHECK(ball_moment_log(a, n1, n2) == Approx(want).epsilon(1e-14));
        }
      }
    }
  }

  TEST_CASE("2-D Simpson oracle over the ball") {
    for (double a : {0.0, 1.0, 2.0}) {
      for (int n1 = 0; n1 <= 10; ++n1) {
        for (int n2 = 0; n1 + n2 <= 10; n2 += 2) {
          CAPTURE(a);
          CAPTURE(n1);
          CAPTURE(n2);
          const double want = ball_moment_simpson(a, n1, n2);
          CHECK(std::exp(ball_moment_log(a, n1, n2)) == Approx(want).epsilon(1e-8));
        }
      }
    }
  }

  TEST_CASE("nested quadrature matches the closed form") {
    for (double a : {0.0, 1.0, 2.5}) {
      for (int n1 = 0; n1 <= 10; ++n1) {
        for (int n2 = 0; n1 + n2 <= 10; ++n2) {
          CHECK(std::exp(ball_moment_quadrature(a, n1, n2)) ==
                Approx(std::exp(ball_moment_log(a, n1, n2))).epsilon(1e-9));
        }
      }
    }
  }

  TEST_CASE("form_energy examples") {
    CHECK(form_energy(0.0, 1, 1, 1) == Approx(3.0 / 20).epsilon(1e-15));
    CHECK(form_energy(0.0, 1, 1, 2) == Approx(3.0 / 20).epsilon(1e-15));
    CHECK(form_energy(1.0, 2, 0, 1) == Approx(0.1).epsilon(1e-15));
    CHECK(form_energy(1.5, 4, 7, 2) == form_energy(1.5, 7, 4, 1));
    CHECK_THROWS_AS(form_energy(-1.0, 1, 1, 1), dbar::ParameterError);
    CHECK_THROWS_AS(form_energy(0.0, 1, 1, 3), dbar::ParameterError);
  }

  TEST_CASE("form_energy equals the moment ratio difference") {
    for (double a : {0.0, 1.0, 2.0}) {
      for (int n1 = 1; n1 <= 50; ++n1) {
        for (int n2 = 0; n1 + n2 <= 50; ++n2) {
          // Ratio c_{n1+1,n2}^2 / c_{n1,n2}^2 = (n1+1)/(alpha+n1+n2+3).
          const long double r_hi = (n1 + 1.0L) / (a + n1 + n2 + 3.0L);
          const long double r_lo = static_cast<long double>(n1) / (a + n1 + n2 + 2.0L);
          const double oracle_value = static_cast<double>(r_hi - r_lo);
          CHECK(form_energy(a, n1, n2, 1) == Approx(oracle_value).epsilon(1e-12));
          CHECK(form_energy_from_moments(a, n1, n2, 1) ==
                Approx(form_energy(a, n1, n2, 1)).epsilon(1e-12));
          CHECK(form_energy_from_moments(a, n2, n1, 2) ==
                Approx(form_energy(a, n2, n1, 2)).epsilon(1e-12));
        }
      }
    }
  }

  TEST_CASE("ball_hs_partial_sum grows without bound") {
    CHECK(ball_hs_partial_sum(0.0, 1) == Approx(0.3).epsilon(1e-15));
    CHECK(ball_hs_partial_sum(2.0, 0) == 0.0);
    CHECK(ball_hs_partial_sum(0.0, 200) - ball_hs_partial_sum(0.0, 100) > 0.5);
    double prev = ball_hs_partial_sum(0.0, 49);
    double min_gap = 1e300;
    for (int N = 50; N <= 500; ++N) {
      const double s = ball_hs_partial_sum(0.0, N);
      CHECK(s > prev);
      min_gap = std::min(min_gap, s - 4.0 * std::log(N));
      prev = s;
    }
    // Lower envelope 4 ln N - C holds with C = -min_gap.
    CHECK(std::isfinite(min_gap));
    CHECK_THROWS_AS(ball_hs_partial_sum(0.0, -1), dbar::ParameterError);
  }

  TEST_CASE("kernel series examples") {
    const Point zero{};
    for (double a : {0.0, 1.0, 2.5}) {
      CHECK(ball_kernel_series(a, zero, zero).real() ==
            Approx((a + 1) * (a + 2) / (kPi * kPi)).epsilon(1e-15));
      CHECK(ball_kernel_constant(a) == Approx((a + 1) * (a + 2) / (kPi * kPi)).epsilon(1e-15));
    }
    const Point half{Complex(0.5, 0.0), Complex(0.0, 0.0)};
    const double want = 2.0 / (kPi * kPi) * 64.0 / 27.0;
    CHECK(ball_kernel_series(0.0, half, half).real() == Approx(want).epsilon(1e-12));
    CHECK(ball_kernel_closed(0.0, half, half).real() == Approx(want).epsilon(1e-15));
  }

  TEST_CASE("kernel series matches the closed form") {
    const Point z{Complex(0.3, 0.2), Complex(-0.4, 0.1)};
    const Point w{Complex(0.1, -0.5), Complex(0.2, 0.3)};
    for (double a : {0.0, 1.0, 2.5}) {
      const Complex s = ball_kernel_series(a, z, w);
      const Complex c = ball_kernel_closed(a, z, w);
      CHECK(std::abs(s - c) <= 1e-12 * std::abs(c));
    }
    const Point bad{Complex(0.8, 0.0), Complex(0.7, 0.0)};
    CHECK_THROWS_AS(ball_kernel_series(0.0, bad, z), dbar::DomainError);
  }

  TEST_CASE("moment grid") {
    const auto g = make_ball_grid(1.0, 12);
    CHECK(g.log_moments.size() == 13u * 13u);
    for (int i = 0; i <= 12; ++i) {
      for (int j = 0; j <= 12; ++j) {
        CHECK(g.at(i, j) == ball_moment_log(1.0, i, j));
        CHECK(g.at(i, j) == g.at(j, i));
      }
    }
  }
}

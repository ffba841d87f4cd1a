#include <cmath>
#include <numbers>

#include "dbar/errors.hpp"
#include "dbar/special.hpp"
#include "doctest.h"

using doctest::Approx;

namespace {

double rel_err(double got, double want) { return std::abs(got - want) / std::abs(want); }

}  // namespace

TEST_SUITE("special") {
  TEST_CASE("log_gamma at exact points") {
    CHECK(dbar::log_gamma(1.0) == 0.0);
    CHECK(dbar::log_gamma(2.0) == 0.0);
    CHECK(rel_err(dbar::log_gamma(0.5), 0.5 * std::log(std::numbers::pi)) < 1e-15);
    // ln(10!) from the exact integer factorial
    CHECK(rel_err(dbar::log_gamma(11.0), std::log(3628800.0)) < 1e-15);
  }

  TEST_CASE("log_gamma against high-precision reference values") {
    // 40-digit references.
    struct Ref {
      double x, value;
    };
    const Ref refs[] = {
        {1.5, -0.12078223763524522235},   {2.5, 0.28468287047291915963},
        {100.25, 360.28455963776423497},  {0.1, 2.252712651734205902},
        {1e-3, 6.9071788853838536617},    {170.5, 704.00442773420467079},
        {1e5, 1051287.7089736568949},
    };
    for (const Ref& r : refs) {
      CAPTURE(r.x);
      CHECK(rel_err(dbar::log_gamma(r.x), r.value) < 1e-13);
    }
  }

  TEST_CASE("log_gamma rejects nonpositive arguments") {
    CHECK_THROWS_AS(dbar::log_gamma(0.0), dbar::ParameterError);
    CHECK_THROWS_AS(dbar::log_gamma(-2.5), dbar::ParameterError);
    CHECK_THROWS_AS(dbar::log_gamma(std::nan("")), dbar::ParameterError);
  }

  TEST_CASE("log_gamma_ratio against references") {
    struct Ref {
      double x, h, value;
    };
    const Ref refs[] = {
        {0.75, 0.5, -0.30155278785310853295}, {3.0, 0.5, 0.5078264217871289154},
        {10.5, 2.0, 4.7937222925326820685},   {5001.0, 0.5, 4.2586715907084936883},
        {10001.0, 1.0, 9.2104403669765160444}, {0.3, 0.1, -0.2991201771162917798},
        {25.0, 20.0, 70.532541751244575935},  {1234.5, 0.02, 0.14236048671022978709},
    };
    for (const Ref& r : refs) {
      CAPTURE(r.x);
      CAPTURE(r.h);
      CHECK(rel_err(dbar::log_gamma_ratio(r.x, r.h), r.value) < 1e-14);
    }
  }

  TEST_CASE("log_gamma_ratio with unit step is ln x exactly enough") {
    CHECK(std::abs(dbar::log_gamma_ratio(1.0, 1.0)) < 1e-16);
    for (double x : {7.0, 123.0, 9999.0, 1e6}) {
      CAPTURE(x);
      CHECK(rel_err(dbar::log_gamma_ratio(x, 1.0), std::log(x)) < 2e-15);
    }
  }

  TEST_CASE("log_gamma_second_difference against references") {
    struct Ref {
      double x, h, value;
    };
    const Ref refs[] = {
        {0.75, 0.5, 0.78318878541367355294},
        {3.0, 0.5, 0.099362111700102765614},
        {10.5, 2.0, 0.40236433042991614705},
        {5001.0, 0.5, 0.000049995000416641667667},
        {10001.0, 1.0, 0.000099995000333308335333},
        {0.3, 0.1, 0.1291456504964172726},
        {25.0, 20.0, 18.925866183480202365},
        {1234.5, 0.02, 3.2414909086497800495e-7},
    };
    for (const Ref& r : refs) {
      CAPTURE(r.x);
      CAPTURE(r.h);
      CHECK(rel_err(dbar::log_gamma_second_difference(r.x, r.h), r.value) < 1e-13);
    }
    CHECK_THROWS_AS(dbar::log_gamma_second_difference(1.0, 1.0), dbar::ParameterError);
  }
}

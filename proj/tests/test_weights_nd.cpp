#include <cmath>
#include <vector>

#include "dbar/errors.hpp"
#include "dbar/weights_nd.hpp"
#include "doctest.h"

using doctest::Approx;
using namespace dbar::nd;

namespace {

double norm_sq(std::span<const Complex> z) {
  double s = 0.0;
  for (const auto& c : z) s += std::norm(c);
  return s;
}

PshWeight quadratic(int dim = 1) {
  return make_psh_weight(dim, [](std::span<const Complex> z) { return norm_sq(z); },
                         {10.0, 100.0, 1000.0});
}

PshWeight quartic() {
  return make_psh_weight(1, [](std::span<const Complex> z) { return std::pow(norm_sq(z), 2); },
                         {10.0, 100.0, 1000.0});
}

PshWeight linear() {
  return make_psh_weight(1, [](std::span<const Complex> z) { return std::sqrt(norm_sq(z)); },
                         {10.0, 100.0, 1000.0});
}

std::vector<Complex> pt(Complex a) { return {a}; }

}  // namespace

TEST_SUITE("weights_nd") {
  TEST_CASE("make_psh_weight validation") {
    auto p = [](std::span<const Complex>) { return 0.0; };
    CHECK_THROWS_AS(make_psh_weight(0, p, {1.0}), dbar::ParameterError);
    CHECK_THROWS_AS(make_psh_weight(4, p, {1.0}), dbar::ParameterError);
    CHECK_THROWS_AS(make_psh_weight(1, p, {2.0, 1.0}), dbar::ParameterError);
    CHECK_THROWS_AS(make_psh_weight(1, p, {-1.0}), dbar::ParameterError);
    CHECK_NOTHROW(make_psh_weight(3, p, {1.0, 2.0}));
  }

  TEST_CASE("conjugate transform examples") {
    const auto w = quadratic();
    CHECK(conjugate_transform(w, pt(2.0)) == Approx(1.0).epsilon(1e-3));
    CHECK(std::abs(conjugate_transform(w, pt(0.0))) <= 1e-12);
    for (Complex v : {Complex(1.0), Complex(2.0), Complex(1.0, 1.0), Complex(-0.7, 2.2)}) {
      CHECK(conjugate_transform(w, pt(v)) == Approx(std::norm(v) / 4).epsilon(1e-3));
    }
    // A search radius below |w|/2 leaves the maximiser on the boundary.
    CHECK_THROWS_AS(conjugate_transform(w, pt(4.0), 1.0), dbar::InconclusiveSupremumError);
  }

  TEST_CASE("conjugate transform in two dimensions") {
    const auto w = quadratic(2);
    const std::vector<Complex> v = {Complex(1.0, 0.0), Complex(0.0, 1.0)};
    CHECK(conjugate_transform(w, v, SupremumOptions{16, 2}) == Approx(0.5).epsilon(1e-3));
  }

  TEST_CASE("scaling sanity") {
    for (double tau : {0.5, 2.0}) {
      const auto scaled = make_psh_weight(
          1, [tau](std::span<const Complex> z) { return tau * norm_sq(z); }, {10.0, 100.0});
      const auto base = quadratic();
      for (Complex v : {Complex(1.0), Complex(0.5, -1.5)}) {
        const double lhs = conjugate_transform(scaled, pt(v));
        const double rhs = tau * conjugate_transform(base, pt(v / tau));
        CHECK(std::abs(lhs - rhs) <= 1e-3 * std::max(1.0, std::abs(rhs)));
      }
    }
  }

  TEST_CASE("double conjugate recovers convex radial weights") {
    for (const auto& w : {quadratic(), quartic()}) {
      for (double r : {0.5, 1.0, 2.0}) {
        const auto z = pt(Complex(r * 0.6, r * 0.8));
        const double want = w.p(z);
        CAPTURE(r);
        CHECK(std::abs(double_conjugate(w, z, 64.0) - want) <= 1e-3 * std::max(1.0, want));
      }
    }
  }

  TEST_CASE("sup_shift examples") {
    const auto w = quadratic();
    CHECK(sup_shift(w, pt(3.0)) == Approx(16.0).epsilon(1e-6));
    CHECK(sup_shift(w, pt(0.0)) == Approx(1.0).epsilon(1e-6));
    const double big = sup_shift(w, pt(1000.0)) / w.p(pt(1000.0));
    CHECK(big == Approx(1.002001).epsilon(1e-6));
    for (Complex z : {Complex(0.2, 0.1), Complex(-5.0, 2.0), Complex(0.0, 40.0)}) {
      CHECK(sup_shift(w, pt(z)) >= w.p(pt(z)));
      CHECK(sup_shift(linear(), pt(z)) >= linear().p(pt(z)));
    }
  }

  TEST_CASE("hypothesis checks") {
    const auto good = check_hs_hypotheses(quadratic(), 1.0, 2.0);
    REQUIRE(good.checks.size() == 4u);
    for (const auto& c : good.checks) {
      CAPTURE(c.name);
      CAPTURE(c.detail);
      CHECK(c.passed);
    }
    CHECK(good.all_passed);
    CHECK(good.conclusion.find("consistent with") != std::string::npos);

    const auto lin = check_hs_hypotheses(linear(), 1.0, 2.0);
    CHECK_FALSE(lin.all_passed);
    bool growth_failed = false;
    for (const auto& c : lin.checks) {
      if (c.name == "superlinear-growth") growth_failed = !c.passed;
    }
    CHECK(growth_failed);

    CHECK_THROWS_AS(check_hs_hypotheses(quadratic(), 2.0, 1.0), dbar::ParameterError);
    CHECK_THROWS_AS(check_hs_hypotheses(quadratic(), 1.0, 1.0), dbar::ParameterError);
  }
}

#include <cmath>
#include <numbers>

#include "dbar/errors.hpp"
#include "dbar/spectrum.hpp"
#include "doctest.h"

using doctest::Approx;
using dbar::MomentSequence;
using dbar::Verdict;
using dbar::WeightSpec;

TEST_SUITE("spectrum") {
  TEST_CASE("eigenvalue examples") {
    MomentSequence fock2(WeightSpec::fock(2.0));
    for (int n : {1, 2, 17, 500}) CHECK(dbar::eigenvalue(fock2, n) == Approx(1.0).epsilon(1e-14));

    MomentSequence disc0(WeightSpec::disc(0.0));
    CHECK(dbar::eigenvalue(disc0, 0) == Approx(0.5).epsilon(1e-15));
    CHECK(dbar::eigenvalue(disc0, 1) == Approx(1.0 / 6.0).epsilon(1e-15));
    CHECK_THROWS_AS(dbar::eigenvalue(disc0, -1), dbar::ParameterError);
  }

  TEST_CASE("eigenvalues from the quadrature route match the closed forms") {
    MomentSequence closed(WeightSpec::disc(0.0));
    MomentSequence numeric(WeightSpec::custom([](double) { return 1.0; }, 1.0));
    for (int n = 0; n <= 5; ++n) {
      CHECK(dbar::eigenvalue(numeric, n) == Approx(dbar::eigenvalue(closed, n)).epsilon(1e-8));
    }
  }

  TEST_CASE("disc eigenvalues match the ratio difference") {
    for (double alpha : {0.0, 1.0, 2.5}) {
      MomentSequence seq(WeightSpec::disc(alpha));
      for (int n = 1; n <= 1000; ++n) {
        const double expected = (n + 1.0) / (alpha + n + 2.0) - n / (alpha + n + 1.0);
        CHECK(std::abs(dbar::eigenvalue(seq, n) - expected) <= 1e-12);
      }
    }
  }

  TEST_CASE("hs_partial_sum examples and telescoping") {
    MomentSequence disc0(WeightSpec::disc(0.0));
    CHECK(dbar::hs_partial_sum(disc0, 2) == Approx(0.75).epsilon(1e-15));
    CHECK(dbar::hs_partial_sum(disc0, 0) == dbar::eigenvalue(disc0, 0));

    MomentSequence fock2(WeightSpec::fock(2.0));
    CHECK(dbar::hs_partial_sum(fock2, 9) == Approx(10.0).epsilon(1e-14));

    for (const auto& w : {WeightSpec::disc(2.5), WeightSpec::fock(3.0), WeightSpec::fock(1.0)}) {
      MomentSequence seq(w);
      for (int N : {10, 100, 1000}) {
        const double r = seq.ratio(N);
        CHECK(std::abs(dbar::hs_partial_sum(seq, N) - r) <= 1e-10 * std::max(1.0, r));
      }
    }
  }

  TEST_CASE("eigenvalues are nonnegative") {
    for (const auto& w : {WeightSpec::disc(0.0), WeightSpec::disc(7.0), WeightSpec::fock(0.5),
                          WeightSpec::fock(2.0), WeightSpec::fock(9.0)}) {
      MomentSequence seq(w);
      for (int n = 0; n <= 10000; n += 7) CHECK(dbar::eigenvalue(seq, n) >= -1e-12);
    }
  }

  TEST_CASE("stirling_surrogate") {
    CHECK(dbar::stirling_surrogate(2.0, 5) == Approx(1.0).epsilon(1e-15));
    CHECK(dbar::stirling_surrogate(4.0, 10000) ==
          Approx(std::sqrt(5000.5) - std::sqrt(5000.0)).epsilon(1e-12));
    CHECK(dbar::stirling_surrogate(4.0, 10000) == Approx(3.5355e-3).epsilon(1e-4));
    CHECK(dbar::stirling_surrogate(1.0, 100) == Approx(804.0).epsilon(1e-14));
    CHECK_THROWS_AS(dbar::stirling_surrogate(0.0, 5), dbar::ParameterError);
    CHECK_THROWS_AS(dbar::stirling_surrogate(2.0, 0), dbar::ParameterError);
  }

  TEST_CASE("gamma_ratio_difference") {
    CHECK(dbar::gamma_ratio_difference(2.0, 7) == Approx(1.0).epsilon(1e-15));
    CHECK(dbar::gamma_ratio_difference(1.0, 1) == Approx(14.0).epsilon(1e-14));
    // 1/Gamma(3/2) - Gamma(3/2) = 2/sqrt(pi) - sqrt(pi)/2
    const double sp = std::sqrt(std::numbers::pi);
    CHECK(dbar::gamma_ratio_difference(4.0, 2) == Approx(2.0 / sp - sp / 2.0).epsilon(1e-14));
    CHECK(dbar::gamma_ratio_difference(4.0, 2) == Approx(0.24215224164275456025).epsilon(1e-14));
    // 40-digit references
    CHECK(dbar::gamma_ratio_difference(3.0, 10) == Approx(0.2340977699799487351).epsilon(1e-13));
    CHECK(dbar::gamma_ratio_difference(4.0, 10000) == Approx(0.0035355339004084659629).epsilon(1e-11));
    CHECK(dbar::gamma_ratio_difference(1.0, 10000) == Approx(80006.0).epsilon(1e-13));
    CHECK(dbar::gamma_ratio_difference(2.5, 100) == Approx(0.2662171830418972374).epsilon(1e-13));
    CHECK_THROWS_AS(dbar::gamma_ratio_difference(-1.0, 3), dbar::ParameterError);
  }

  TEST_CASE("gamma_ratio_difference equals the Fock eigenvalue") {
    for (double m : {1.0, 2.0, 3.0, 4.0}) {
      MomentSequence seq(WeightSpec::fock(m));
      for (int k : {1, 10, 1000}) {
        CHECK(dbar::gamma_ratio_difference(m, k) == Approx(dbar::eigenvalue(seq, k)).epsilon(1e-14));
      }
    }
  }

  TEST_CASE("Fock trichotomy at k = 10^4") {
    CHECK(dbar::gamma_ratio_difference(1.0, 10000) > 1e3);
    CHECK(std::abs(dbar::gamma_ratio_difference(2.0, 10000) - 1.0) <= 1e-12);
    const double g4 = dbar::gamma_ratio_difference(4.0, 10000);
    CHECK(g4 < 1e-2);
    CHECK(std::abs(g4 - dbar::stirling_surrogate(4.0, 10000)) <= 1e-2 * g4);
  }

  TEST_CASE("classify built-in families") {
    for (double alpha : {0.0, 1.0, 2.5}) {
      CAPTURE(alpha);
      const auto c = dbar::classify(MomentSequence(WeightSpec::disc(alpha)));
      CHECK(c.verdict == Verdict::HilbertSchmidt);
      CHECK(c.evidence.tail_begin == 1000);
      CHECK(c.evidence.tail_end == 2000);
    }
    const auto m4 = dbar::classify(MomentSequence(WeightSpec::fock(4.0)));
    CHECK(m4.verdict == Verdict::CompactNotHilbertSchmidt);
    CHECK(m4.evidence.decay_exponent == Approx(0.5).epsilon(1e-2));

    const auto m3 = dbar::classify(MomentSequence(WeightSpec::fock(3.0)));
    CHECK(m3.verdict == Verdict::CompactNotHilbertSchmidt);

    const auto m2 = dbar::classify(MomentSequence(WeightSpec::fock(2.0)));
    CHECK(m2.verdict == Verdict::NonCompact);
    CHECK(m2.evidence.lambda_tail_min == Approx(1.0).epsilon(1e-12));

    const auto m1 = dbar::classify(MomentSequence(WeightSpec::fock(1.0)));
    CHECK(m1.verdict == Verdict::NonCompact);
    CHECK_FALSE(m1.evidence.note.empty());
  }

  TEST_CASE("classify preconditions") {
    MomentSequence seq(WeightSpec::disc(0.0));
    dbar::ClassifyOptions opts;
    opts.tail_len = 5;
    CHECK_THROWS_AS(dbar::classify(seq, opts), dbar::ParameterError);
    opts.tail_len = 1000;
    opts.tail_start = 20'000'000;
    CHECK_THROWS_AS(dbar::classify(seq, opts), dbar::ResourceError);
  }

  TEST_CASE("diagnose arrays are consistent") {
    MomentSequence seq(WeightSpec::disc(1.0));
    const auto d = dbar::diagnose(seq, 50);
    REQUIRE(d.lambdas.size() == 51);
    CHECK(d.partial_sums.back() == dbar::hs_partial_sum(seq, 50));
    CHECK(d.partial_sums.back() == Approx(d.ratios.back()).epsilon(1e-13));
    CHECK(d.classification.verdict == Verdict::HilbertSchmidt);
  }
}

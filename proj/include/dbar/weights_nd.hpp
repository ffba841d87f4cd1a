#pragma once

#include <complex>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace dbar::nd {

using Complex = std::complex<double>;

/// Weight function p on C^n (n <= 3) given by an evaluation rule, plus the
/// radii at which its asymptotic behaviour is probed.
struct PshWeight {
  int dimension = 1;
  std::function<double(std::span<const Complex>)> p;
  std::vector<double> sample_radii;
};

/// Validates dimension (1..3) and that sample_radii is positive and increasing.
PshWeight make_psh_weight(int dimension, std::function<double(std::span<const Complex>)> p,
                          std::vector<double> sample_radii);

struct SupremumOptions {
  int grid = 64;         // points per real dimension
  int refinements = 2;   // compass-search passes after the grid
};

/// p*(w) = sup { Re<z, w> - p(z) : |z| <= search_radius }.
///
/// Grid search followed by local ascent. Throws InconclusiveSupremumError if
/// the maximiser sits at the edge of the search ball.
double conjugate_transform(const PshWeight& weight, std::span<const Complex> w,
                           double search_radius, const SupremumOptions& opts = {});

/// conjugate_transform with the default radius 8 (1 + |w|).
double conjugate_transform(const PshWeight& weight, std::span<const Complex> w,
                           const SupremumOptions& opts = {});

/// p~(z) = sup { p(z + zeta) : |zeta| <= 1 }.
double sup_shift(const PshWeight& weight, std::span<const Complex> z,
                 const SupremumOptions& opts = {});

/// p**(z): the outer search runs over |w| <= outer_radius, each p*(w) with
/// its default radius.
double double_conjugate(const PshWeight& weight, std::span<const Complex> z, double outer_radius,
                        const SupremumOptions& opts = {});

struct HypothesisCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct HypothesisReport {
  double tau = 0.0;
  double sigma = 0.0;
  std::vector<HypothesisCheck> checks;  // conjugate-finite, superlinear-growth, shift-ratio, integrability
  bool all_passed = false;
  std::string conclusion;
};

struct HypothesisOptions {
  double growth_threshold = 10.0;  // final p(z)/|z| must exceed this
  double shift_ratio_tol = 1e-2;   // |p~/p - 1| at the largest sample radius
  SupremumOptions sup;
};

/// Numerically probes the hypotheses under which the canonical solution
/// operator A^2_(0,1)(C^n, tau p) -> L^2(C^n, sigma p) is Hilbert-Schmidt:
/// finite conjugate, superlinear growth, p~/p -> 1 and integrability of
/// exp((tau - sigma) p). A full pass is consistent with the hypotheses; it
/// does not prove them.
HypothesisReport check_hs_hypotheses(const PshWeight& weight, double tau, double sigma,
                                     const HypothesisOptions& opts = {});

}  // namespace dbar::nd

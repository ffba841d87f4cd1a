#pragma once

#include <complex>
#include <span>
#include <vector>

#include "dbar/weights.hpp"

namespace dbar {

using Complex = std::complex<double>;

/// Taylor coefficients a_0..a_d of a polynomial f(z) = sum a_k z^k.
/// Trailing zeros are dropped on construction; the zero polynomial has degree -1.
class HolomorphicCoeffs {
 public:
  HolomorphicCoeffs() = default;
  explicit HolomorphicCoeffs(std::vector<Complex> coeffs);

  std::span<const Complex> coeffs() const noexcept { return coeffs_; }
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  Complex coeff(int k) const noexcept;

  Complex operator()(Complex z) const;

  bool operator==(const HolomorphicCoeffs&) const = default;

 private:
  std::vector<Complex> coeffs_;
};

/// F(z) = conj(z) g(z) + h(z) with g, h holomorphic polynomials.
///
/// d/d(conj z) F = g identically, which is how the solution of the
/// dbar-equation is represented without sampling.
struct HybridFunction {
  HolomorphicCoeffs conj_factor;
  HolomorphicCoeffs holo_part;

  Complex operator()(Complex z) const { return std::conj(z) * conj_factor(z) + holo_part(z); }
};

/// ||f||^2 = sum |a_k|^2 c_k^2.
double norm_sq(const HolomorphicCoeffs& f, const MomentSequence& moments);

/// Canonical solution S(f) = conj(z) f(z) - sum_{k>=1} a_k (c_k^2 / c_{k-1}^2) z^{k-1}.
HybridFunction apply_solution_operator(const HolomorphicCoeffs& f, const MomentSequence& moments);

/// K(z, w) = sum_k z^k conj(w)^k / c_k^2 truncated once the ratio-test tail
/// bound drops below rel_tol * |partial sum|.
Complex kernel_eval(const MomentSequence& moments, Complex z, Complex w, double rel_tol = 1e-13);

/// Coefficients of P(conj(z) f(rho z)): entry k-1 is a_k r_{k-1} rho^k.
HolomorphicCoeffs project_dilated(const HolomorphicCoeffs& f, double rho,
                                  const MomentSequence& moments);

/// ||conj(z) f(rho z) - P(conj(z) f(rho z))||^2 from the coefficient formula.
/// rho = 1 gives ||S(f)||^2.
double defect_norm_sq(const HolomorphicCoeffs& f, double rho, const MomentSequence& moments);

/// max(lambda_0, max_{1<=k<=N} lambda_k).
double bound_constant(const MomentSequence& moments, int N);

/// <F, z^j> by radial orthogonality of the monomials.
Complex monomial_inner_product(const HybridFunction& F, int j, const MomentSequence& moments);

/// Central-difference approximation of the Wirtinger derivative
/// 1/2 (d/dx + i d/dy) of F at z.
Complex wirtinger_dbar(const HybridFunction& F, Complex z, double h);

/// max over points of |wirtinger_dbar(F)(z) - f(z)|.
double dbar_residual(const HybridFunction& F, const HolomorphicCoeffs& f,
                     std::span<const Complex> points, double h = 1e-5);

/// int K(z, w) f(w) d mu(w) by radial adaptive quadrature and an angular
/// trapezoid rule refined until stable. Equals f(z) for holomorphic f.
Complex reproduce_check(const MomentSequence& moments, const HolomorphicCoeffs& f, Complex z,
                        double rel_tol = 1e-8);

}  // namespace dbar

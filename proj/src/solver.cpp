#include "dbar/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dbar/errors.hpp"
#include "dbar/quadrature.hpp"
#include "dbar/spectrum.hpp"

namespace dbar {

namespace {

constexpr std::size_t kKernelTermBudget = 1'000'000;

void check_rel_tol(double rel_tol) {
  if (!(rel_tol > 1e-14 && rel_tol < 1e-2)) {
    std::ostringstream msg;
    msg << "rel_tol must lie in (1e-14, 1e-2), got " << rel_tol;
    throw ParameterError(msg.str());
  }
}

void check_in_support(const MomentSequence& moments, Complex z, const char* name) {
  const double support = moments.weight().support_radius();
  if (std::isfinite(support) && !(std::abs(z) < support)) {
    std::ostringstream msg;
    msg << name << "=" << z << " lies outside the open disc of radius " << support
        << " where the kernel series of " << moments.weight().describe() << " converges";
    throw DomainError(msg.str());
  }
}

}  // namespace

HolomorphicCoeffs::HolomorphicCoeffs(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
  while (!coeffs_.empty() && coeffs_.back() == Complex{}) coeffs_.pop_back();
}

Complex HolomorphicCoeffs::coeff(int k) const noexcept {
  if (k < 0 || k >= static_cast<int>(coeffs_.size())) return {};
  return coeffs_[static_cast<std::size_t>(k)];
}

Complex HolomorphicCoeffs::operator()(Complex z) const {
  Complex acc{};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

double norm_sq(const HolomorphicCoeffs& f, const MomentSequence& moments) {
  double sum = 0.0;
  for (int k = 0; k <= f.degree(); ++k) sum += std::norm(f.coeff(k)) * moments.moment(k);
  return sum;
}

HybridFunction apply_solution_operator(const HolomorphicCoeffs& f,
                                       const MomentSequence& moments) {
  std::vector<Complex> holo;
  if (f.degree() >= 1) {
    holo.resize(static_cast<std::size_t>(f.degree()));
    for (int k = 1; k <= f.degree(); ++k) {
      holo[static_cast<std::size_t>(k - 1)] = -f.coeff(k) * moments.ratio(k - 1);
    }
  }
  return {f, HolomorphicCoeffs(std::move(holo))};
}

Complex kernel_eval(const MomentSequence& moments, Complex z, Complex w, double rel_tol) {
  check_rel_tol(rel_tol);
  check_in_support(moments, z, "z");
  check_in_support(moments, w, "w");

  const Complex zw = z * std::conj(w);
  const double abs_zw = std::abs(zw);
  Complex term = std::exp(-moments.log_moment(0));
  Complex sum = term;
  for (std::size_t k = 0; k < kKernelTermBudget; ++k) {
    const int n = static_cast<int>(k);
    const double r = moments.ratio(n);
    // Successive term ratios |z w|/r_j are nonincreasing since r_j is.
    const double q = abs_zw / r;
    if (q < 1.0 && std::abs(term) * q / (1.0 - q) <= rel_tol * std::abs(sum)) return sum;
    term *= zw / r;
    sum += term;
  }
  std::ostringstream msg;
  msg << "kernel series at z=" << z << ", w=" << w << " did not reach rel_tol " << rel_tol
      << " within " << kKernelTermBudget << " terms";
  throw TruncationError(msg.str());
}

HolomorphicCoeffs project_dilated(const HolomorphicCoeffs& f, double rho,
                                  const MomentSequence& moments) {
  if (!(rho > 0.0 && rho < 1.0)) {
    std::ostringstream msg;
    msg << "rho must lie in (0, 1), got " << rho;
    throw ParameterError(msg.str());
  }
  std::vector<Complex> out;
  if (f.degree() >= 1) {
    out.resize(static_cast<std::size_t>(f.degree()));
    for (int k = 1; k <= f.degree(); ++k) {
      out[static_cast<std::size_t>(k - 1)] = f.coeff(k) * moments.ratio(k - 1) * std::pow(rho, k);
    }
  }
  return HolomorphicCoeffs(std::move(out));
}

double defect_norm_sq(const HolomorphicCoeffs& f, double rho, const MomentSequence& moments) {
  if (!(rho > 0.0 && rho <= 1.0)) {
    std::ostringstream msg;
    msg << "rho must lie in (0, 1], got " << rho;
    throw ParameterError(msg.str());
  }
  if (f.is_zero()) return 0.0;
  double sum = std::norm(f.coeff(0)) * moments.moment(1);
  for (int k = 1; k <= f.degree(); ++k) {
    const double a2 = std::norm(f.coeff(k));
    if (a2 == 0.0) continue;
    sum += a2 * moments.moment(k) * std::pow(rho, 2 * k) * eigenvalue(moments, k);
  }
  return sum;
}

double bound_constant(const MomentSequence& moments, int N) {
  if (N < 1) {
    std::ostringstream msg;
    msg << "bound_constant requires N >= 1, got " << N;
    throw ParameterError(msg.str());
  }
  double best = eigenvalue(moments, 0);
  for (int k = 1; k <= N; ++k) best = std::max(best, eigenvalue(moments, k));
  return best;
}

Complex monomial_inner_product(const HybridFunction& F, int j, const MomentSequence& moments) {
  if (j < 0) throw ParameterError("monomial index must be nonnegative");
  // <conj(z) z^k, z^j> = c_{j+1}^2 [k = j+1];  <z^i, z^j> = c_j^2 [i = j].
  const Complex scaled = F.conj_factor.coeff(j + 1) * moments.ratio(j) + F.holo_part.coeff(j);
  if (scaled == Complex{}) return {};
  return scaled * moments.moment(j);
}

Complex wirtinger_dbar(const HybridFunction& F, Complex z, double h) {
  const Complex dx = (F(z + h) - F(z - h)) / (2.0 * h);
  const Complex dy = (F(z + Complex(0.0, h)) - F(z - Complex(0.0, h))) / (2.0 * h);
  return 0.5 * (dx + Complex(0.0, 1.0) * dy);
}

double dbar_residual(const HybridFunction& F, const HolomorphicCoeffs& f,
                     std::span<const Complex> points, double h) {
  if (!(h > 1e-8 && h < 1e-3)) {
    std::ostringstream msg;
    msg << "finite-difference step must lie in (1e-8, 1e-3), got " << h;
    throw ParameterError(msg.str());
  }
  double worst = 0.0;
  for (const Complex& z : points) worst = std::max(worst, std::abs(wirtinger_dbar(F, z, h) - f(z)));
  return worst;
}

Complex reproduce_check(const MomentSequence& moments, const HolomorphicCoeffs& f, Complex z,
                        double rel_tol) {
  check_rel_tol(rel_tol);
  check_in_support(moments, z, "z");
  if (f.degree() > 10) {
    std::ostringstream msg;
    msg << "reproduce_check is meant for low-degree inputs (<= 10), got degree " << f.degree();
    throw ParameterError(msg.str());
  }
  const WeightSpec& weight = moments.weight();
  const double kernel_tol = 1e-13;
  const double angular_tol = std::max(rel_tol * 1e-2, 1e-14);

  // r * density(r) * int_0^{2 pi} K(z, r e^{it}) f(r e^{it}) dt
  auto radial = [&](double r) -> Complex {
    const double d = weight.density(r);
    if (d == 0.0 || r == 0.0) return Complex{};
    auto angular = [&](double t) {
      const Complex w = std::polar(r, t);
      return kernel_eval(moments, z, w, kernel_tol) * f(w);
    };
    std::size_t n = 32;
    Complex previous = quad::periodic_trapezoid(angular, n);
    for (;;) {
      n *= 2;
      const Complex current = quad::periodic_trapezoid(angular, n);
      if (std::abs(current - previous) <= angular_tol * std::max(std::abs(current), 1e-300) ||
          n >= 16384) {
        return current * (r * d);
      }
      previous = current;
    }
  };

  quad::Options opts;
  opts.rel_tol = rel_tol * 1e-2;
  const double support = weight.support_radius();
  const quad::ComplexResult res = std::isfinite(support)
                                      ? quad::integrate_complex(radial, 0.0, support, opts)
                                      : quad::integrate_half_line_complex(radial, 0.0, opts);
  return res.value;
}

}  // namespace dbar

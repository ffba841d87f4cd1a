#pragma once

#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace dbar {

/// (1 - |z|^2)^alpha on the unit disc, alpha >= 0.
struct DiscPolynomial {
  double alpha = 0.0;
};

/// exp(-|z|^m) on the whole plane, m > 0.
struct FockExponential {
  double m = 2.0;
};

/// A user-supplied radial density r -> density(r) >= 0 on [0, support_radius).
///
/// Radial symmetry makes the monomials orthogonal; completeness of the
/// monomials in the weighted space is assumed, not checked.
struct CustomRadial {
  std::function<double(double)> density;
  double support_radius = std::numeric_limits<double>::infinity();
  std::string label = "custom";
};

/// Immutable description of a radial weight d mu = density(|z|) d lambda(z).
class WeightSpec {
 public:
  using Variant = std::variant<DiscPolynomial, FockExponential, CustomRadial>;

  static WeightSpec disc(double alpha);
  static WeightSpec fock(double m);
  static WeightSpec custom(std::function<double(double)> density,
                           double support_radius = std::numeric_limits<double>::infinity(),
                           std::string label = "custom");

  /// Parses "disc:alpha=1" or "fock:m=4".
  static WeightSpec parse(const std::string& text);

  const Variant& variant() const noexcept { return variant_; }
  bool is_disc() const noexcept { return std::holds_alternative<DiscPolynomial>(variant_); }
  bool is_fock() const noexcept { return std::holds_alternative<FockExponential>(variant_); }
  bool is_custom() const noexcept { return std::holds_alternative<CustomRadial>(variant_); }

  double density(double r) const;
  double support_radius() const;
  std::string describe() const;

 private:
  explicit WeightSpec(Variant v) : variant_(std::move(v)) {}
  Variant variant_;
};

/// ln c_n^2 = ln(pi n! / ((alpha+n+1)...(alpha+1))), summed termwise.
double disc_moment_closed(double alpha, int n);

/// ln c_n^2 = ln(2 pi / m) + ln Gamma((2n + 2) / m).
double fock_moment_closed(double m, int n);

/// ln of 2 pi * int_0^R r^{2n+1} density(r) dr by adaptive quadrature.
double moment_quadrature(const WeightSpec& weight, int n, double rel_tol = 1e-10);

/// ln c_n^2: closed form for the built-in families, quadrature otherwise.
double moment_log(const WeightSpec& weight, int n);

/// Lazily extended, thread-safe cache of ln c_n^2 for one weight.
///
/// Copies share the cache. Every value is computed exactly once, in
/// ascending order, so results are independent of the order of queries.
class MomentSequence {
 public:
  explicit MomentSequence(WeightSpec weight, double quad_rel_tol = 1e-10);

  const WeightSpec& weight() const noexcept;

  double log_moment(int n) const;
  double moment(int n) const;

  /// ln r_n with r_n = c_{n+1}^2 / c_n^2.
  double log_ratio(int n) const;
  double ratio(int n) const;

  /// ln r_n - ln r_{n-1} for n >= 1; nonnegative by log-convexity.
  double log_ratio_step(int n) const;

  /// Makes ln c_k^2 available for every k <= n.
  void ensure(int n) const;
  int computed_upto() const;
  std::vector<double> log_moments() const;

 private:
  struct Cache;
  std::shared_ptr<Cache> cache_;
};

}  // namespace dbar

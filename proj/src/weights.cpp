#include "dbar/weights.hpp"

#include <cmath>
#include <mutex>
#include <numbers>
#include <sstream>

#include "dbar/errors.hpp"
#include "dbar/quadrature.hpp"
#include "dbar/special.hpp"

namespace dbar {

namespace {

constexpr double kLogPi = 1.1447298858494001741;  // ln(pi)
constexpr double kLog2Pi = 1.8378770664093454836;  // ln(2 pi)

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void check_alpha(double alpha) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    std::ostringstream msg;
    msg << "disc weight requires alpha >= 0, got " << alpha;
    throw ParameterError(msg.str());
  }
}

void check_m(double m) {
  if (!(m > 0.0) || !std::isfinite(m)) {
    std::ostringstream msg;
    msg << "Fock weight requires m > 0, got " << m;
    throw ParameterError(msg.str());
  }
}

void check_order(int n) {
  if (n < 0) {
    std::ostringstream msg;
    msg << "moment order must be nonnegative, got " << n;
    throw ParameterError(msg.str());
  }
}

// Sum_{j=1}^{n} log1p(alpha / j), accumulated in ascending j.
double disc_prefix_step(double prefix, double alpha, int j) {
  return prefix + std::log1p(alpha / static_cast<double>(j));
}

double disc_from_prefix(double prefix, double alpha, int n) {
  return kLogPi - prefix - std::log(alpha + static_cast<double>(n) + 1.0);
}

}  // namespace

// ---------------------------------------------------------------------------
// WeightSpec

WeightSpec WeightSpec::disc(double alpha) {
  check_alpha(alpha);
  return WeightSpec(DiscPolynomial{alpha});
}

WeightSpec WeightSpec::fock(double m) {
  check_m(m);
  return WeightSpec(FockExponential{m});
}

WeightSpec WeightSpec::custom(std::function<double(double)> density, double support_radius,
                              std::string label) {
  if (!density) throw ParameterError("custom weight requires a density function");
  if (!(support_radius > 0.0)) {
    std::ostringstream msg;
    msg << "custom weight requires a positive support radius, got " << support_radius;
    throw ParameterError(msg.str());
  }
  return WeightSpec(CustomRadial{std::move(density), support_radius, std::move(label)});
}

WeightSpec WeightSpec::parse(const std::string& text) {
  const auto colon = text.find(':');
  const std::string family = text.substr(0, colon);
  double value = std::numeric_limits<double>::quiet_NaN();
  std::string key;
  if (colon != std::string::npos) {
    const std::string rest = text.substr(colon + 1);
    const auto eq = rest.find('=');
    if (eq == std::string::npos) throw InputError("weight parameter must be key=value: " + text);
    key = rest.substr(0, eq);
    const std::string number = rest.substr(eq + 1);
    std::size_t used = 0;
    try {
      value = std::stod(number, &used);
    } catch (const std::exception&) {
      throw InputError("weight parameter is not a number: " + text);
    }
    if (used != number.size()) throw InputError("weight parameter is not a number: " + text);
  }
  if (family == "disc") {
    if (colon == std::string::npos) return disc(0.0);
    if (key != "alpha") throw InputError("disc weight takes alpha=<value>: " + text);
    return disc(value);
  }
  if (family == "fock") {
    if (colon == std::string::npos) return fock(2.0);
    if (key != "m") throw InputError("fock weight takes m=<value>: " + text);
    return fock(value);
  }
  throw InputError("unknown weight family '" + family + "' (expected disc or fock)");
}

double WeightSpec::density(double r) const {
  return std::visit(
      overloaded{
          [r](const DiscPolynomial& d) {
            if (r >= 1.0) return 0.0;
            return d.alpha == 0.0 ? 1.0 : std::pow((1.0 - r) * (1.0 + r), d.alpha);
          },
          [r](const FockExponential& f) { return std::exp(-std::pow(r, f.m)); },
          [r](const CustomRadial& c) { return r < c.support_radius ? c.density(r) : 0.0; },
      },
      variant_);
}

double WeightSpec::support_radius() const {
  return std::visit(overloaded{
                        [](const DiscPolynomial&) { return 1.0; },
                        [](const FockExponential&) {
                          return std::numeric_limits<double>::infinity();
                        },
                        [](const CustomRadial& c) { return c.support_radius; },
                    },
                    variant_);
}

std::string WeightSpec::describe() const {
  std::ostringstream out;
  out.precision(17);
  std::visit(overloaded{
                 [&out](const DiscPolynomial& d) { out << "disc:alpha=" << d.alpha; },
                 [&out](const FockExponential& f) { out << "fock:m=" << f.m; },
                 [&out](const CustomRadial& c) { out << "custom:" << c.label; },
             },
             variant_);
  return out.str();
}

// ---------------------------------------------------------------------------
// Moments

double disc_moment_closed(double alpha, int n) {
  check_alpha(alpha);
  check_order(n);
  double prefix = 0.0;
  for (int j = 1; j <= n; ++j) prefix = disc_prefix_step(prefix, alpha, j);
  return disc_from_prefix(prefix, alpha, n);
}

double fock_moment_closed(double m, int n) {
  check_m(m);
  check_order(n);
  return kLog2Pi - std::log(m) + log_gamma((2.0 * n + 2.0) / m);
}

double moment_quadrature(const WeightSpec& weight, int n, double rel_tol) {
  check_order(n);
  if (!(rel_tol > 1e-14 && rel_tol < 1e-2)) {
    std::ostringstream msg;
    msg << "rel_tol must lie in (1e-14, 1e-2), got " << rel_tol;
    throw ParameterError(msg.str());
  }
  const double power = 2.0 * n + 1.0;
  const double support = weight.support_radius();
  const bool bounded = std::isfinite(support);

  auto log_integrand = [&](double r) {
    const double d = weight.density(r);
    if (d < 0.0 || std::isnan(d)) {
      std::ostringstream msg;
      msg << weight.describe() << ": density is negative or NaN at r=" << r;
      throw ParameterError(msg.str());
    }
    if (d == 0.0) return -std::numeric_limits<double>::infinity();
    return power * std::log(r) + std::log(d);
  };

  // Locate the bulk of r^{2n+1} density(r) on a logarithmic probe grid so the
  // integrand can be rescaled to O(1) and the variable centred on its peak.
  double scale_r = bounded ? support : 1.0;
  double shift = -std::numeric_limits<double>::infinity();
  {
    const double r_lo = bounded ? support * 1e-6 : 1e-6;
    const double r_hi = bounded ? support : 1e30;
    const int probes = 400;
    const double ratio = std::log(r_hi / r_lo) / probes;
    int best = -1;
    for (int k = 0; k <= probes; ++k) {
      double r = r_lo * std::exp(ratio * k);
      if (bounded && k == probes) r = support * (1.0 - 1e-9);
      const double v = log_integrand(r);
      if (v > shift) {
        shift = v;
        scale_r = r;
        best = k;
      }
    }
    if (best < 0) {
      throw ParameterError(weight.describe() + ": density vanishes on every probe radius");
    }
    if (!bounded && best == probes) {
      std::ostringstream msg;
      msg << weight.describe() << ": moment of order " << n
          << " diverges (integrand still growing at r=" << r_hi << ")";
      throw DivergenceError(msg.str(), n);
    }
  }

  auto scaled = [&](double s) {
    const double v = log_integrand(scale_r * s);
    return std::isfinite(v) ? std::exp(v - shift) : 0.0;
  };

  quad::Options opts;
  opts.rel_tol = rel_tol;
  quad::Result res;
  try {
    res = bounded ? quad::integrate(scaled, 0.0, support / scale_r, opts)
                  : quad::integrate_half_line(scaled, 0.0, opts);
  } catch (const QuadratureError& e) {
    if (bounded) throw;
    std::ostringstream msg;
    msg << weight.describe() << ": moment of order " << n << " did not converge ("
        << e.what() << ")";
    throw DivergenceError(msg.str(), n);
  }
  if (!(res.value > 0.0)) {
    std::ostringstream msg;
    msg << weight.describe() << ": moment of order " << n << " is not positive";
    throw DivergenceError(msg.str(), n);
  }
  return kLog2Pi + std::log(res.value) + shift + std::log(scale_r);
}

double moment_log(const WeightSpec& weight, int n) {
  return std::visit(overloaded{
                        [n](const DiscPolynomial& d) { return disc_moment_closed(d.alpha, n); },
                        [n](const FockExponential& f) { return fock_moment_closed(f.m, n); },
                        [&weight, n](const CustomRadial&) {
                          return moment_quadrature(weight, n);
                        },
                    },
                    weight.variant());
}

// ---------------------------------------------------------------------------
// MomentSequence

struct MomentSequence::Cache {
  Cache(WeightSpec w, double tol) : weight(std::move(w)), quad_rel_tol(tol) {}

  const WeightSpec weight;
  const double quad_rel_tol;
  mutable std::mutex mutex;
  std::vector<double> log_moments;
  double disc_prefix = 0.0;

  // Caller holds the mutex.
  void extend_to(int n) {
    while (static_cast<int>(log_moments.size()) <= n) {
      const int k = static_cast<int>(log_moments.size());
      double value = 0.0;
      if (const auto* d = std::get_if<DiscPolynomial>(&weight.variant())) {
        if (k > 0) disc_prefix = disc_prefix_step(disc_prefix, d->alpha, k);
        value = disc_from_prefix(disc_prefix, d->alpha, k);
      } else if (const auto* f = std::get_if<FockExponential>(&weight.variant())) {
        value = fock_moment_closed(f->m, k);
      } else {
        value = moment_quadrature(weight, k, quad_rel_tol);
      }
      log_moments.push_back(value);
    }
  }
};

MomentSequence::MomentSequence(WeightSpec weight, double quad_rel_tol)
    : cache_(std::make_shared<Cache>(std::move(weight), quad_rel_tol)) {
  ensure(0);
}

const WeightSpec& MomentSequence::weight() const noexcept { return cache_->weight; }

void MomentSequence::ensure(int n) const {
  check_order(n);
  std::lock_guard lock(cache_->mutex);
  cache_->extend_to(n);
}

int MomentSequence::computed_upto() const {
  std::lock_guard lock(cache_->mutex);
  return static_cast<int>(cache_->log_moments.size()) - 1;
}

std::vector<double> MomentSequence::log_moments() const {
  std::lock_guard lock(cache_->mutex);
  return cache_->log_moments;
}

double MomentSequence::log_moment(int n) const {
  check_order(n);
  std::lock_guard lock(cache_->mutex);
  cache_->extend_to(n);
  return cache_->log_moments[static_cast<std::size_t>(n)];
}

double MomentSequence::moment(int n) const { return std::exp(log_moment(n)); }

double MomentSequence::log_ratio(int n) const {
  check_order(n);
  const auto& v = cache_->weight.variant();
  if (const auto* d = std::get_if<DiscPolynomial>(&v)) {
    // r_n = (n + 1) / (alpha + n + 2)
    return -std::log1p((d->alpha + 1.0) / (n + 1.0));
  }
  if (const auto* f = std::get_if<FockExponential>(&v)) {
    return log_gamma_ratio((2.0 * n + 2.0) / f->m, 2.0 / f->m);
  }
  return log_moment(n + 1) - log_moment(n);
}

double MomentSequence::ratio(int n) const { return std::exp(log_ratio(n)); }

double MomentSequence::log_ratio_step(int n) const {
  if (n < 1) {
    std::ostringstream msg;
    msg << "log_ratio_step requires n >= 1, got " << n;
    throw ParameterError(msg.str());
  }
  const auto& v = cache_->weight.variant();
  if (const auto* d = std::get_if<DiscPolynomial>(&v)) {
    // r_n / r_{n-1} = 1 + (alpha + 1) / (n (alpha + n + 2))
    return std::log1p((d->alpha + 1.0) / (n * (d->alpha + n + 2.0)));
  }
  if (const auto* f = std::get_if<FockExponential>(&v)) {
    return log_gamma_second_difference((2.0 * n + 2.0) / f->m, 2.0 / f->m);
  }
  const double prev = log_moment(n - 1);
  const double here = log_moment(n);
  const double next = log_moment(n + 1);
  return (next - here) - (here - prev);
}

}  // namespace dbar

#include "dbar/weights_nd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "dbar/errors.hpp"
#include "dbar/quadrature.hpp"
#include "dbar/special.hpp"

namespace dbar::nd {

namespace {

constexpr double kMaxGridPoints = 67'108'864.0;  // 2^26

using Reals = std::vector<double>;

std::vector<Complex> to_complex(const Reals& x) {
  std::vector<Complex> z(x.size() / 2);
  for (std::size_t j = 0; j < z.size(); ++j) z[j] = {x[2 * j], x[2 * j + 1]};
  return z;
}

double euclidean(const Reals& x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

double euclidean(std::span<const Complex> z) {
  double s = 0.0;
  for (const Complex& v : z) s += std::norm(v);
  return std::sqrt(s);
}

void project_to_ball(Reals& x, double radius) {
  const double norm = euclidean(x);
  if (norm > radius) {
    for (double& v : x) v *= radius / norm;
  }
}

void check_point(const PshWeight& weight, std::span<const Complex> z) {
  if (!weight.p) throw ParameterError("weight has no evaluation rule");
  if (static_cast<int>(z.size()) != weight.dimension) {
    std::ostringstream msg;
    msg << "point has " << z.size() << " coordinates, weight dimension is " << weight.dimension;
    throw ParameterError(msg.str());
  }
}

struct Maximum {
  Reals x;
  double value;
};

// Maximise f over the closed ball of `radius` in R^dims: lexicographic grid
// scan (strict improvement, so ties keep the smallest index) then compass
// search with projection back onto the ball.
template <class F>
Maximum maximise_on_ball(const F& f, std::size_t dims, double radius, const SupremumOptions& opts) {
  if (opts.grid < 2) throw ParameterError("grid must have at least 2 points per dimension");
  if (std::pow(static_cast<double>(opts.grid), static_cast<double>(dims)) > kMaxGridPoints) {
    std::ostringstream msg;
    msg << "grid of " << opts.grid << "^" << dims << " points exceeds the search budget";
    throw ResourceError(msg.str());
  }
  const double spacing = 2.0 * radius / (opts.grid - 1);

  Maximum best{Reals(dims, 0.0), f(Reals(dims, 0.0))};
  std::vector<int> index(dims, 0);
  Reals x(dims);
  for (bool done = false; !done;) {
    for (std::size_t d = 0; d < dims; ++d) x[d] = -radius + spacing * index[d];
    if (euclidean(x) <= radius) {
      const double v = f(x);
      if (v > best.value) best = {x, v};
    }
    // Odometer increment, last coordinate fastest.
    for (std::size_t d = dims;;) {
      if (d == 0) {
        done = true;
        break;
      }
      --d;
      if (++index[d] < opts.grid) break;
      index[d] = 0;
    }
  }

  const double min_step = 1e-13 * std::max(1.0, radius);
  double step = spacing;
  for (int pass = 0; pass < std::max(opts.refinements, 1); ++pass) {
    while (step > min_step) {
      bool moved = false;
      for (std::size_t d = 0; d < dims && !moved; ++d) {
        for (double sign : {1.0, -1.0}) {
          Reals trial = best.x;
          trial[d] += sign * step;
          project_to_ball(trial, radius);
          const double v = f(trial);
          if (v > best.value) {
            best = {std::move(trial), v};
            moved = true;
            break;
          }
        }
      }
      if (!moved) step *= 0.5;
    }
    step = spacing / 16.0;
  }
  return best;
}

}  // namespace

PshWeight make_psh_weight(int dimension, std::function<double(std::span<const Complex>)> p,
                          std::vector<double> sample_radii) {
  if (dimension < 1 || dimension > 3) {
    std::ostringstream msg;
    msg << "dimension must be 1, 2 or 3, got " << dimension;
    throw ParameterError(msg.str());
  }
  if (!p) throw ParameterError("weight has no evaluation rule");
  for (std::size_t i = 0; i < sample_radii.size(); ++i) {
    if (!(sample_radii[i] > 0.0) || (i > 0 && !(sample_radii[i] > sample_radii[i - 1]))) {
      throw ParameterError("sample_radii must be positive and strictly increasing");
    }
  }
  return {dimension, std::move(p), std::move(sample_radii)};
}

double conjugate_transform(const PshWeight& weight, std::span<const Complex> w,
                           double search_radius, const SupremumOptions& opts) {
  check_point(weight, w);
  if (!(search_radius > 0.0)) throw ParameterError("search_radius must be positive");
  const std::size_t dims = 2 * w.size();
  auto supremand = [&](const Reals& x) {
    const std::vector<Complex> z = to_complex(x);
    double re_inner = 0.0;
    for (std::size_t j = 0; j < z.size(); ++j) re_inner += (z[j] * std::conj(w[j])).real();
    return re_inner - weight.p(z);
  };
  const Maximum best = maximise_on_ball(supremand, dims, search_radius, opts);
  const double spacing = 2.0 * search_radius / (opts.grid - 1);
  if (euclidean(best.x) > search_radius - spacing) {
    std::ostringstream msg;
    msg << "supremum for p* is attained at |z|=" << euclidean(best.x)
        << ", on the edge of the search radius " << search_radius;
    throw InconclusiveSupremumError(msg.str());
  }
  return best.value;
}

double conjugate_transform(const PshWeight& weight, std::span<const Complex> w,
                           const SupremumOptions& opts) {
  return conjugate_transform(weight, w, 8.0 * (1.0 + euclidean(w)), opts);
}

double sup_shift(const PshWeight& weight, std::span<const Complex> z,
                 const SupremumOptions& opts) {
  check_point(weight, z);
  const std::size_t dims = 2 * z.size();
  auto shifted = [&](const Reals& x) {
    std::vector<Complex> point = to_complex(x);
    for (std::size_t j = 0; j < point.size(); ++j) point[j] += z[j];
    return weight.p(point);
  };
  return maximise_on_ball(shifted, dims, 1.0, opts).value;
}

double double_conjugate(const PshWeight& weight, std::span<const Complex> z, double outer_radius,
                        const SupremumOptions& opts) {
  check_point(weight, z);
  PshWeight conjugate;
  conjugate.dimension = weight.dimension;
  conjugate.p = [&weight, opts](std::span<const Complex> w) {
    return conjugate_transform(weight, w, opts);
  };
  return conjugate_transform(conjugate, z, outer_radius, opts);
}

HypothesisReport check_hs_hypotheses(const PshWeight& weight, double tau, double sigma,
                                     const HypothesisOptions& opts) {
  if (!(tau > 0.0) || !(sigma > 0.0) || !(tau < sigma)) {
    std::ostringstream msg;
    msg << "require 0 < tau < sigma, got tau=" << tau << " sigma=" << sigma;
    throw ParameterError(msg.str());
  }
  if (!weight.p) throw ParameterError("weight has no evaluation rule");
  if (weight.sample_radii.size() < 2) {
    throw ParameterError("at least two sample radii are needed for the asymptotic checks");
  }
  const int n = weight.dimension;
  HypothesisReport report;
  report.tau = tau;
  report.sigma = sigma;

  // Unit directions: first axis, and a mixed real/imaginary direction.
  std::vector<std::vector<Complex>> directions;
  {
    std::vector<Complex> e1(static_cast<std::size_t>(n));
    e1[0] = 1.0;
    directions.push_back(e1);
    std::vector<Complex> mixed(static_cast<std::size_t>(n));
    mixed[0] += Complex(1.0, 0.0) / std::sqrt(2.0);
    mixed[static_cast<std::size_t>(n - 1)] += Complex(0.0, 1.0) / std::sqrt(2.0);
    const double norm = euclidean(mixed);
    for (Complex& c : mixed) c /= norm;
    directions.push_back(mixed);
  }
  const char* direction_names[] = {"e1", "mixed"};
  auto sep = [](std::ostringstream& os) {
    if (os.tellp() > 0) os << "; ";
  };
  auto scaled = [](const std::vector<Complex>& u, double r) {
    std::vector<Complex> z = u;
    for (Complex& c : z) c *= r;
    return z;
  };

  // (a) p* finite at probe points.
  {
    HypothesisCheck check{"conjugate-finite", true, ""};
    std::ostringstream detail;
    detail.precision(10);
    for (Complex c : {Complex(0.0), Complex(1.0), Complex(2.0), Complex(1.0, 1.0)}) {
      std::vector<Complex> w(static_cast<std::size_t>(n));
      w[0] = c;
      try {
        const double v = conjugate_transform(weight, w, opts.sup);
        if (!std::isfinite(v)) check.passed = false;
        sep(detail);
        detail << "p*(" << c.real() << (c.imag() < 0 ? "" : "+") << c.imag() << "i)=" << v;
      } catch (const InconclusiveSupremumError&) {
        check.passed = false;
        sep(detail);
        detail << "p*(" << c.real() << (c.imag() < 0 ? "" : "+") << c.imag() << "i) unbounded on the search ball";
      }
    }
    check.detail = detail.str();
    report.checks.push_back(std::move(check));
  }

  // (b) p(z)/|z| increasing along the sample radii and eventually large.
  {
    HypothesisCheck check{"superlinear-growth", true, ""};
    std::ostringstream detail;
    detail.precision(10);
    for (std::size_t d = 0; d < directions.size(); ++d) {
      const auto& u = directions[d];
      double previous = -std::numeric_limits<double>::infinity();
      double last = 0.0;
      for (double r : weight.sample_radii) {
        const double v = weight.p(scaled(u, r)) / r;
        if (!(v > previous)) check.passed = false;
        previous = v;
        last = v;
      }
      if (!(last > opts.growth_threshold)) check.passed = false;
      sep(detail);
      detail << direction_names[d] << ": p/|z| at r=" << weight.sample_radii.back() << " is " << last;
    }
    check.detail = detail.str();
    report.checks.push_back(std::move(check));
  }

  // (c) p~/p approaches 1 monotonically.
  {
    HypothesisCheck check{"shift-ratio", true, ""};
    std::ostringstream detail;
    detail.precision(10);
    for (std::size_t d = 0; d < directions.size(); ++d) {
      const auto& u = directions[d];
      double previous_gap = std::numeric_limits<double>::infinity();
      double last_gap = 0.0;
      for (double r : weight.sample_radii) {
        const std::vector<Complex> z = scaled(u, r);
        const double base = weight.p(z);
        if (!(base > 0.0)) {
          check.passed = false;
          continue;
        }
        const double gap = std::abs(sup_shift(weight, z, opts.sup) / base - 1.0);
        if (gap > previous_gap * (1.0 + 1e-9)) check.passed = false;
        previous_gap = gap;
        last_gap = gap;
      }
      if (!(last_gap <= opts.shift_ratio_tol)) check.passed = false;
      sep(detail);
      detail << direction_names[d] << ": |p~/p - 1| at r=" << weight.sample_radii.back() << " is " << last_gap;
    }
    check.detail = detail.str();
    report.checks.push_back(std::move(check));
  }

  // (d) int exp((tau - sigma) p) d lambda < inf, radially along each direction.
  {
    HypothesisCheck check{"integrability", true, ""};
    std::ostringstream detail;
    detail.precision(10);
    const double sphere = 2.0 * std::pow(std::numbers::pi, n) / std::exp(log_gamma(n));
    for (std::size_t d = 0; d < directions.size(); ++d) {
      const auto& u = directions[d];
      auto integrand = [&](double r) {
        if (r == 0.0) return 0.0;
        const double e = (tau - sigma) * weight.p(scaled(u, r));
        return std::pow(r, 2 * n - 1) * std::exp(e);
      };
      try {
        quad::Options qo;
        qo.rel_tol = 1e-8;
        qo.max_intervals = 100'000;
        const double value = sphere * quad::integrate_half_line(integrand, 0.0, qo).value;
        if (!std::isfinite(value)) check.passed = false;
        sep(detail);
        detail << direction_names[d] << ": integral ~ " << value;
      } catch (const QuadratureError& e) {
        check.passed = false;
        sep(detail);
        detail << direction_names[d] << ": radial integral did not converge";
      }
    }
    check.detail = detail.str();
    report.checks.push_back(std::move(check));
  }

  report.all_passed = std::all_of(report.checks.begin(), report.checks.end(),
                                  [](const HypothesisCheck& c) { return c.passed; });
  report.conclusion =
      report.all_passed
          ? "numerical probes are consistent with the hypotheses; the Hilbert-Schmidt "
            "property of the solution operator is not computed here"
          : "at least one hypothesis is not supported by the numerical probes";
  return report;
}

}  // namespace dbar::nd

#include "dbar/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "dbar/errors.hpp"
#include "dbar/special.hpp"

namespace dbar {

namespace {

constexpr int kMaxClosedFormIndex = 10'000'000;
constexpr int kMaxQuadratureIndex = 100'000;

void check_fock_args(double m, int k) {
  if (!(m > 0.0) || !std::isfinite(m)) {
    std::ostringstream msg;
    msg << "m must be positive, got " << m;
    throw ParameterError(msg.str());
  }
  if (k < 1) {
    std::ostringstream msg;
    msg << "k must be >= 1, got " << k;
    throw ParameterError(msg.str());
  }
}

// Neumaier's variant of Kahan summation.
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      carry += (sum - t) + x;
    } else {
      carry += (x - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + carry; }
};

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::HilbertSchmidt:
      return "HilbertSchmidt";
    case Verdict::CompactNotHilbertSchmidt:
      return "CompactNotHilbertSchmidt";
    case Verdict::NonCompact:
      return "NonCompact";
  }
  return "unknown";
}

double eigenvalue(const MomentSequence& moments, int n) {
  if (n < 0) {
    std::ostringstream msg;
    msg << "eigenvalue index must be nonnegative, got " << n;
    throw ParameterError(msg.str());
  }
  if (n == 0) return moments.ratio(0);
  return moments.ratio(n - 1) * std::expm1(moments.log_ratio_step(n));
}

double hs_partial_sum(const MomentSequence& moments, int N) {
  if (N < 0) {
    std::ostringstream msg;
    msg << "partial sum bound must be nonnegative, got " << N;
    throw ParameterError(msg.str());
  }
  CompensatedSum acc;
  for (int n = 0; n <= N; ++n) acc.add(eigenvalue(moments, n));
  return acc.value();
}

Classification classify(const MomentSequence& moments, const ClassifyOptions& opts) {
  if (opts.tail_len < 10) {
    std::ostringstream msg;
    msg << "tail_len must be >= 10, got " << opts.tail_len;
    throw ParameterError(msg.str());
  }
  if (opts.tail_start < 1) throw ParameterError("tail_start must be >= 1");
  if (!(opts.eps_zero > 0.0) || !(opts.big > 0.0)) {
    throw ParameterError("eps_zero and big must be positive");
  }
  const int begin = opts.tail_start;
  const long long end_ll = static_cast<long long>(begin) + opts.tail_len;
  const int limit = moments.weight().is_custom() ? kMaxQuadratureIndex : kMaxClosedFormIndex;
  if (end_ll + 1 > limit) {
    std::ostringstream msg;
    msg << "classification window ends at " << end_ll << ", beyond the feasible moment index "
        << limit << " for " << moments.weight().describe();
    throw ResourceError(msg.str());
  }
  const int end = static_cast<int>(end_ll);

  Classification out;
  Evidence& ev = out.evidence;
  ev.tail_begin = begin;
  ev.tail_end = end;
  ev.lambda_tail_max = -std::numeric_limits<double>::infinity();
  ev.lambda_tail_min = std::numeric_limits<double>::infinity();

  // Least-squares fit of ln lambda against ln n over the window.
  bool all_positive = true;
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  double ratio_max = 0.0;
  for (int n = begin; n <= end; ++n) {
    const double lam = eigenvalue(moments, n);
    ev.lambda_tail_max = std::max(ev.lambda_tail_max, lam);
    ev.lambda_tail_min = std::min(ev.lambda_tail_min, lam);
    ratio_max = std::max(ratio_max, moments.ratio(n));
    if (lam > 0.0) {
      const double x = std::log(static_cast<double>(n));
      const double y = std::log(lam);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    } else {
      all_positive = false;
    }
  }
  const double count = static_cast<double>(end - begin + 1);
  const double r_begin = moments.ratio(begin);
  const double r_end = moments.ratio(end);
  const double lam_end = eigenvalue(moments, end);
  ev.ratio_tail = r_end;
  ev.ratio_drift = std::abs(r_end - r_begin) / std::max(1.0, r_end);

  if (all_positive) {
    const double denom = count * sxx - sx * sx;
    ev.decay_exponent = denom > 0.0 ? -(count * sxy - sx * sy) / denom : 0.0;
  } else {
    // Zero eigenvalues in the tail: treat as arbitrarily fast decay.
    ev.decay_exponent = std::numeric_limits<double>::infinity();
  }
  const double p = ev.decay_exponent;
  if (p > 1.0) {
    const double tail = std::isfinite(p) ? lam_end * end / (p - 1.0) : 0.0;
    ev.extrapolated_ratio = r_end + tail;
  } else {
    ev.extrapolated_ratio = std::numeric_limits<double>::infinity();
  }

  const bool bounded = ratio_max < opts.big && std::isfinite(ratio_max);
  const bool stabilised = ev.ratio_drift < opts.eps_zero || ev.extrapolated_ratio < opts.big;
  const bool vanishing = ev.lambda_tail_max < opts.eps_zero || p > opts.eps_zero;

  if (bounded && stabilised) {
    out.verdict = Verdict::HilbertSchmidt;
  } else if (vanishing) {
    out.verdict = Verdict::CompactNotHilbertSchmidt;
  } else {
    out.verdict = Verdict::NonCompact;
    if (p < -opts.eps_zero) {
      ev.note =
          "eigenvalues grow along the window: the diagonal of S*S is unbounded; "
          "boundedness of S itself is not asserted";
    }
  }
  return out;
}

SpectralDiagnostics diagnose(const MomentSequence& moments, int n_max,
                             const ClassifyOptions& opts) {
  if (n_max < 0) throw ParameterError("n_max must be nonnegative");
  SpectralDiagnostics d{moments.weight(), {}, {}, {}, {}};
  const auto size = static_cast<std::size_t>(n_max) + 1;
  d.lambdas.reserve(size);
  d.ratios.reserve(size);
  d.partial_sums.reserve(size);
  CompensatedSum acc;
  for (int n = 0; n <= n_max; ++n) {
    const double lam = eigenvalue(moments, n);
    acc.add(lam);
    d.lambdas.push_back(lam);
    d.ratios.push_back(moments.ratio(n));
    d.partial_sums.push_back(acc.value());
  }
  d.classification = classify(moments, opts);
  return d;
}

double stirling_surrogate(double m, int k) {
  check_fock_args(m, k);
  // b^p (expm1(p log1p(1/k))) with b = 2k/m, p = 2/m.
  const double p = 2.0 / m;
  const double base = std::pow(2.0 * k / m, p);
  return base * std::expm1(p * std::log1p(1.0 / k));
}

double gamma_ratio_difference(double m, int k) {
  check_fock_args(m, k);
  const double h = 2.0 / m;
  const double x = (2.0 * k + 2.0) / m;
  const double previous = std::exp(log_gamma_ratio(x - h, h));
  return previous * std::expm1(log_gamma_second_difference(x, h));
}

}  // namespace dbar

#include "dbar/quadrature.hpp"

#include <algorithm>
#include <array>
#include <queue>
#include <sstream>
#include <vector>

#include "dbar/errors.hpp"

namespace dbar::quad {

namespace {

// Kronrod abscissae (descending) and weights; Gauss weights pair with the
// odd-indexed abscissae and the centre.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000,
};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
};

constexpr double kHalfLineClamp = 1.0 - 1e-12;

template <class T>
struct Panel {
  double a;
  double b;
  T value;
  double error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

template <class T>
struct Estimate {
  T value;
  double error;
};

[[noreturn]] void fail(const char* why, double err, std::size_t intervals) {
  std::ostringstream msg;
  msg << "quadrature failed: " << why << " (error estimate " << err << " after "
      << intervals << " intervals)";
  throw QuadratureError(msg.str(), err);
}

bool finite(double x) { return std::isfinite(x); }
bool finite(std::complex<double> z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

template <class T, class F>
Estimate<T> kronrod_panel(const F& f, double a, double b) {
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const T fc = f(centre);
  T kronrod = kWgk[7] * fc;
  T gauss = kWg[3] * fc;
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const T pair = f(centre - dx) + f(centre + dx);
    kronrod += kWgk[j] * pair;
    if (j % 2 == 1) gauss += kWg[j / 2] * pair;
  }
  return {kronrod * half, std::abs((kronrod - gauss) * half)};
}

template <class T, class F>
Estimate<T> adaptive(const F& f, double a, double b, const Options& opts,
                     std::size_t& intervals) {
  using P = Panel<T>;
  std::priority_queue<P> heap;
  const Estimate<T> first = kronrod_panel<T>(f, a, b);
  heap.push({a, b, first.value, first.error});
  T total = first.value;
  double total_err = first.error;
  intervals = 1;

  auto converged = [&] {
    return total_err <= std::max(opts.abs_tol, opts.rel_tol * std::abs(total));
  };

  while (!converged()) {
    if (!finite(total) || !std::isfinite(total_err)) {
      fail("non-finite integrand", total_err, intervals);
    }
    if (intervals >= opts.max_intervals) {
      fail("subdivision budget exhausted", total_err, intervals);
    }
    const P worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      fail("interval below machine resolution", total_err, intervals);
    }
    const Estimate<T> left = kronrod_panel<T>(f, worst.a, mid);
    const Estimate<T> right = kronrod_panel<T>(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push({worst.a, mid, left.value, left.error});
    heap.push({mid, worst.b, right.value, right.error});
    ++intervals;

    // The running sums drift; resum in interval order before accepting.
    if (converged()) {
      std::vector<P> panels;
      panels.reserve(heap.size());
      while (!heap.empty()) {
        panels.push_back(heap.top());
        heap.pop();
      }
      std::sort(panels.begin(), panels.end(), [](const P& x, const P& y) { return x.a < y.a; });
      total = T{};
      total_err = 0.0;
      for (const P& p : panels) {
        total += p.value;
        total_err += p.error;
      }
      for (const P& p : panels) heap.push(p);
    }
  }
  if (!finite(total)) fail("non-finite integrand", total_err, intervals);
  return {total, total_err};
}

template <class T, class F>
Estimate<T> adaptive_interval(const F& f, double a, double b, const Options& opts,
                              std::size_t& intervals) {
  intervals = 0;
  if (a == b) return {T{}, 0.0};
  if (b < a) {
    Estimate<T> r = adaptive<T>(f, b, a, opts, intervals);
    r.value = -r.value;
    return r;
  }
  return adaptive<T>(f, a, b, opts, intervals);
}

template <class T, class F>
auto half_line_map(const F& f, double a) {
  return [&f, a](double t) -> T {
    t = std::min(t, kHalfLineClamp);
    const double s = 1.0 - t;
    const T value = f(a + t / s);
    if (value == T{}) return T{};
    return value / (s * s);
  };
}

// Beyond the clamp the tail is roughly r |f(r)|; it must be negligible.
template <class T, class F>
void check_tail(const F& f, double a, const Estimate<T>& e, const Options& opts,
                std::size_t intervals) {
  const double r_max = a + kHalfLineClamp / (1.0 - kHalfLineClamp);
  const double tail = r_max * std::abs(f(r_max));
  if (!(tail <= std::max(opts.abs_tol, opts.rel_tol * std::abs(e.value)))) {
    fail("integrand does not decay fast enough on the half line", tail, intervals);
  }
}

}  // namespace

Result gauss_kronrod15(const std::function<double(double)>& f, double a, double b) {
  const Estimate<double> e = kronrod_panel<double>(f, a, b);
  return {e.value, e.error, 1};
}

Result integrate(const std::function<double(double)>& f, double a, double b,
                 const Options& opts) {
  std::size_t n = 0;
  const Estimate<double> e = adaptive_interval<double>(f, a, b, opts, n);
  return {e.value, e.error, n};
}

Result integrate_half_line(const std::function<double(double)>& f, double a,
                           const Options& opts) {
  std::size_t n = 0;
  const auto mapped = half_line_map<double>(f, a);
  const Estimate<double> e = adaptive_interval<double>(mapped, 0.0, 1.0, opts, n);
  check_tail(f, a, e, opts, n);
  return {e.value, e.error, n};
}

ComplexResult integrate_complex(const std::function<std::complex<double>(double)>& f, double a,
                                double b, const Options& opts) {
  std::size_t n = 0;
  const auto e = adaptive_interval<std::complex<double>>(f, a, b, opts, n);
  return {e.value, e.error, n};
}

ComplexResult integrate_half_line_complex(const std::function<std::complex<double>(double)>& f,
                                  double a, const Options& opts) {
  std::size_t n = 0;
  const auto mapped = half_line_map<std::complex<double>>(f, a);
  const auto e = adaptive_interval<std::complex<double>>(mapped, 0.0, 1.0, opts, n);
  check_tail(f, a, e, opts, n);
  return {e.value, e.error, n};
}

}  // namespace dbar::quad

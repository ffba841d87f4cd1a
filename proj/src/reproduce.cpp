#include "dbar/reproduce.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>

#include "dbar/ball2d.hpp"
#include "dbar/errors.hpp"
#include "dbar/quadrature.hpp"
#include "dbar/spectrum.hpp"
#include "dbar/weights_nd.hpp"

namespace dbar::reproduce {

namespace {

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

std::string g6(double v) { return fmt("%.6g", v); }

std::vector<WeightSpec> builtin_weights() {
  return {WeightSpec::disc(0.0), WeightSpec::disc(1.0), WeightSpec::disc(2.5),
          WeightSpec::fock(2.0), WeightSpec::fock(3.0), WeightSpec::fock(4.0)};
}

std::mt19937_64 criterion_rng(const Options& opts, std::uint64_t salt) {
  std::seed_seq seq{static_cast<std::uint32_t>(opts.seed), static_cast<std::uint32_t>(opts.seed >> 32),
                    static_cast<std::uint32_t>(salt)};
  return std::mt19937_64(seq);
}

void add_check(CriterionResult& out, std::string name, bool passed, std::string detail) {
  out.checks.push_back({std::move(name), passed, std::move(detail)});
}

void finish(CriterionResult& out) {
  out.passed = !out.checks.empty() &&
               std::all_of(out.checks.begin(), out.checks.end(), [](const Check& c) { return c.passed; });
}

double rel_diff_from_logs(double a, double b) { return std::abs(std::expm1(a - b)); }

CriterionResult telescoping() {
  CriterionResult out{"telescoping", "Hilbert-Schmidt partial sums telescope to c_{N+1}^2/c_N^2", {}, {}, false, 10.0};
  out.table.columns = {"weight", "N", "partial_sum", "ratio", "abs_error", "bound"};
  for (const auto& w : builtin_weights()) {
    MomentSequence seq(w);
    double worst = 0.0;
    for (int N : {10, 100, 1000, 10000}) {
      const double s = hs_partial_sum(seq, N);
      const double r = seq.ratio(N);
      const double err = std::abs(s - r);
      const double bound = 1e-10 * std::max(1.0, r);
      worst = std::max(worst, err / bound);
      out.table.rows.push_back({w.describe(), std::int64_t{N}, s, r, err, bound});
    }
    add_check(out, "telescoping " + w.describe(), worst <= 1.0,
              "max error / bound = " + g6(worst));
  }
  finish(out);
  return out;
}

CriterionResult disc_hs() {
  CriterionResult out{"disc-hs", "Disc weights give a Hilbert-Schmidt solution operator", {}, {}, false, 0.0};
  out.table.columns = {"weight", "N", "partial_sum", "gap_to_limit"};
  for (double alpha : {0.0, 1.0, 2.5}) {
    MomentSequence seq(WeightSpec::disc(alpha));
    double gap = 0.0;
    for (int N : {10, 100, 1000, 10000}) {
      const double s = hs_partial_sum(seq, N);
      gap = std::abs(1.0 - s);
      out.table.rows.push_back({seq.weight().describe(), std::int64_t{N}, s, gap});
    }
    const Classification c = classify(seq);
    add_check(out, "verdict " + seq.weight().describe(), c.verdict == Verdict::HilbertSchmidt,
              to_string(c.verdict));
    add_check(out, "limit " + seq.weight().describe(), gap <= 2e-3, "|1 - S_10000| = " + g6(gap));
  }
  finish(out);
  return out;
}

CriterionResult fock_isometry(const Options& opts) {
  CriterionResult out{"fock-isometry", "Gaussian weight: flat spectrum and isometric solution operator", {}, {}, false, 0.0};
  out.table.columns = {"trial", "degree", "norm_sq", "defect_norm_sq", "ratio_minus_one"};
  MomentSequence seq(WeightSpec::fock(2.0));

  double flat = 0.0;
  for (int n = 1; n <= 10000; ++n) flat = std::max(flat, std::abs(eigenvalue(seq, n) - 1.0));
  add_check(out, "flat spectrum", flat <= 1e-12, "max |lambda_n - 1| over 1..10000 = " + g6(flat));

  auto rng = criterion_rng(opts, 3);
  std::uniform_int_distribution<int> degree_dist(0, 30);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const auto f = random_polynomial(rng, degree_dist(rng));
    const double n2 = norm_sq(f, seq);
    const double d = defect_norm_sq(f, 1.0, seq);
    const double dev = d / n2 - 1.0;
    worst = std::max(worst, std::abs(dev));
    out.table.rows.push_back({std::int64_t{trial}, std::int64_t{f.degree()}, n2, d, dev});
  }
  add_check(out, "isometry", worst <= 1e-10, "max |defect/norm - 1| = " + g6(worst));

  const Classification c = classify(seq);
  add_check(out, "verdict", c.verdict == Verdict::NonCompact, to_string(c.verdict));
  finish(out);
  return out;
}

CriterionResult fock_trichotomy() {
  CriterionResult out{"fock-trichotomy", "Fock weights exp(-|z|^m): eigenvalue growth, decay and surrogate", {}, {}, false, 0.0};
  out.table.columns = {"m", "k", "gamma_ratio_difference", "stirling_surrogate", "rel_diff"};
  for (double m : {1.0, 2.0, 3.0, 4.0}) {
    for (int k : {10, 100, 1000, 2000, 5000, 10000}) {
      const double g = gamma_ratio_difference(m, k);
      const double s = stirling_surrogate(m, k);
      out.table.rows.push_back({m, std::int64_t{k}, g, s, std::abs(g - s) / std::abs(g)});
    }
  }
  const double g1 = gamma_ratio_difference(1.0, 10000);
  add_check(out, "m=1 growth", g1 > 1e3, "difference at k=10000 = " + g6(g1));
  const double g4 = gamma_ratio_difference(4.0, 10000);
  add_check(out, "m=4 decay", g4 < 1e-2, "difference at k=10000 = " + g6(g4));

  double worst = 0.0;
  for (int k = 1000; k <= 10000; ++k) {
    const double g = gamma_ratio_difference(4.0, k);
    worst = std::max(worst, std::abs(g - stirling_surrogate(4.0, k)) / g);
  }
  add_check(out, "m=4 surrogate", worst <= 1e-2, "max relative difference over k in [1000, 10000] = " + g6(worst));

  MomentSequence seq(WeightSpec::fock(4.0));
  const Classification c = classify(seq);
  add_check(out, "m=4 verdict", c.verdict == Verdict::CompactNotHilbertSchmidt, to_string(c.verdict));
  const double s = hs_partial_sum(seq, 10000);
  add_check(out, "m=4 partial sum", s > 50.0, "S_10000 = " + g6(s));
  finish(out);
  return out;
}

CriterionResult ball_divergence() {
  CriterionResult out{"ball-divergence", "Unit ball of C^2: basis-form energies and divergent double sum", {}, {}, false, 30.0};
  out.table.columns = {"N", "partial_sum", "four_log_N"};

  double worst = 0.0;
  for (double alpha : {0.0, 1.0, 2.0}) {
    for (int n1 = 0; n1 <= 50; ++n1) {
      for (int n2 = 0; n1 + n2 <= 50; ++n2) {
        if (n1 >= 1) {
          const double e = ball::form_energy(alpha, n1, n2, 1);
          worst = std::max(worst, std::abs(ball::form_energy_from_moments(alpha, n1, n2, 1) - e) / e);
        }
        if (n2 >= 1) {
          const double e = ball::form_energy(alpha, n1, n2, 2);
          worst = std::max(worst, std::abs(ball::form_energy_from_moments(alpha, n1, n2, 2) - e) / e);
        }
      }
    }
  }
  add_check(out, "form energy", worst <= 1e-12, "max relative difference for n1+n2 <= 50 = " + g6(worst));

  bool increasing = true;
  double prev = 0.0, s100 = 0.0, s200 = 0.0;
  double envelope = -std::numeric_limits<double>::infinity();
  for (int N = 1; N <= 500; ++N) {
    const double s = ball::ball_hs_partial_sum(0.0, N);
    if (!(s > prev)) increasing = false;
    prev = s;
    if (N == 100) s100 = s;
    if (N == 200) s200 = s;
    if (N >= 50) envelope = std::max(envelope, 4.0 * std::log(N) - s);
    out.table.rows.push_back({std::int64_t{N}, s, 4.0 * std::log(N)});
  }
  add_check(out, "strictly increasing", increasing, "N = 1..500");
  add_check(out, "growth", s200 - s100 >= 0.5, "S_200 - S_100 = " + g6(s200 - s100));
  add_check(out, "log envelope", std::isfinite(envelope),
            "S_N >= 4 ln N - C on N = 50..500 with C = " + g6(envelope));
  finish(out);
  return out;
}

CriterionResult solver_exactness(const Options& opts) {
  CriterionResult out{"solver-exactness", "Solution operator: exact dbar, orthogonality, pointwise residual", {}, {}, false, 0.0};
  out.table.columns = {"weight", "trial", "degree", "norm", "max_inner_product", "dbar_residual", "max_abs_f"};
  auto rng = criterion_rng(opts, 6);
  std::uniform_int_distribution<int> degree_dist(0, 30);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Complex> points;
  for (int i = 0; i < 100; ++i) {
    points.push_back(std::polar(2.0 * std::sqrt(unit(rng)), 2.0 * std::numbers::pi * unit(rng)));
  }
  for (const auto& w : builtin_weights()) {
    MomentSequence seq(w);
    bool exact = true;
    double worst_ip = 0.0, worst_res = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
      const auto f = random_polynomial(rng, degree_dist(rng));
      const auto F = apply_solution_operator(f, seq);
      if (!(F.conj_factor == f)) exact = false;
      const double fn = std::sqrt(norm_sq(f, seq));
      double ip = 0.0;
      for (int j = 0; j <= f.degree() + 2; ++j) ip = std::max(ip, std::abs(monomial_inner_product(F, j, seq)));
      double fmax = 0.0;
      for (const auto& z : points) fmax = std::max(fmax, std::abs(f(z)));
      const double res = dbar_residual(F, f, points, 1e-5);
      worst_ip = std::max(worst_ip, ip / fn);
      worst_res = std::max(worst_res, res / std::max(1.0, fmax));
      out.table.rows.push_back({w.describe(), std::int64_t{trial}, std::int64_t{f.degree()}, fn, ip, res, fmax});
    }
    add_check(out, "conj factor " + w.describe(), exact, "conj_factor == f for 50 inputs");
    add_check(out, "orthogonality " + w.describe(), worst_ip <= 1e-12, "max |<F, z^j>| / ||f|| = " + g6(worst_ip));
    add_check(out, "dbar residual " + w.describe(), worst_res <= 1e-6,
              "max residual / max(1, max|f|) = " + g6(worst_res));
  }
  finish(out);
  return out;
}

CriterionResult norm_identity(const Options& opts) {
  CriterionResult out{"norm-identity", "Defect norm formula against 2-D quadrature", {}, {}, false, 60.0};
  out.table.columns = {"weight", "rho", "trial", "degree", "formula", "quadrature", "rel_diff"};
  auto rng = criterion_rng(opts, 7);
  std::uniform_int_distribution<int> degree_dist(0, 5);
  double worst = 0.0;
  for (double m : {2.0, 4.0}) {
    const WeightSpec w = WeightSpec::fock(m);
    MomentSequence seq(w);
    for (double rho : {0.5, 0.9}) {
      for (int trial = 0; trial < 3; ++trial) {
        const auto f = random_polynomial(rng, degree_dist(rng));
        const double formula = defect_norm_sq(f, rho, seq);
        const double quad = defect_norm_quadrature(f, rho, w);
        const double rel = std::abs(formula - quad) / std::abs(formula);
        worst = std::max(worst, rel);
        out.table.rows.push_back({w.describe(), rho, std::int64_t{trial}, std::int64_t{f.degree()}, formula, quad, rel});
      }
    }
  }
  add_check(out, "formula vs quadrature", worst <= 1e-8, "max relative difference = " + g6(worst));
  finish(out);
  return out;
}

CriterionResult oracle_equivalence() {
  CriterionResult out{"oracle-equivalence", "Closed-form moments against quadrature", {}, {}, false, 0.0};
  out.table.columns = {"weight", "index", "log_closed", "log_quadrature", "rel_diff"};

  double worst_1d = 0.0;
  bool convex = true;
  std::string convex_detail = "all sequences log-convex";
  auto mark_concave = [&](const std::string& where) {
    if (convex) convex_detail = "first violation: " + where;
    convex = false;
  };

  for (const auto& w : builtin_weights()) {
    std::vector<double> q;
    for (int n = 0; n <= 50; ++n) {
      const double closed = moment_log(w, n);
      q.push_back(moment_quadrature(w, n));
      const double rel = rel_diff_from_logs(q.back(), closed);
      worst_1d = std::max(worst_1d, rel);
      out.table.rows.push_back({w.describe(), std::to_string(n), closed, q.back(), rel});
    }
    for (int n = 1; n < 50; ++n) {
      if (q[n + 1] - 2.0 * q[n] + q[n - 1] < 0.0) mark_concave(w.describe() + " quadrature n=" + std::to_string(n));
    }
    MomentSequence seq(w);
    for (int n = 1; n <= 10000; ++n) {
      if (seq.log_ratio_step(n) < 0.0) {
        mark_concave(w.describe() + " closed form n=" + std::to_string(n));
        break;
      }
    }
  }
  add_check(out, "one variable", worst_1d <= 1e-9, "max relative difference for n <= 50 = " + g6(worst_1d));

  double worst_ball = 0.0;
  for (double alpha : {0.0, 1.0, 2.5}) {
    const std::string label = "ball:alpha=" + fmt("%.17g", alpha);
    std::vector<std::vector<double>> q(11, std::vector<double>(11, 0.0));
    for (int n1 = 0; n1 <= 10; ++n1) {
      for (int n2 = 0; n1 + n2 <= 10; ++n2) {
        const double closed = ball::ball_moment_log(alpha, n1, n2);
        q[n1][n2] = ball::ball_moment_quadrature(alpha, n1, n2);
        const double rel = rel_diff_from_logs(q[n1][n2], closed);
        worst_ball = std::max(worst_ball, rel);
        out.table.rows.push_back({label, std::to_string(n1) + "," + std::to_string(n2), closed, q[n1][n2], rel});
      }
    }
    for (int n1 = 0; n1 <= 10; ++n1) {
      for (int n2 = 0; n1 + n2 <= 10; ++n2) {
        if (n1 >= 1 && n1 + 1 + n2 <= 10 && q[n1 + 1][n2] - 2.0 * q[n1][n2] + q[n1 - 1][n2] < 0.0) {
          mark_concave(label + " quadrature direction 1");
        }
        if (n2 >= 1 && n1 + n2 + 1 <= 10 && q[n1][n2 + 1] - 2.0 * q[n1][n2] + q[n1][n2 - 1] < 0.0) {
          mark_concave(label + " quadrature direction 2");
        }
      }
    }
    const auto grid = ball::make_ball_grid(alpha, 50);
    for (int a = 1; a < 50; ++a) {
      for (int b = 0; b <= 50; ++b) {
        if (grid.at(a + 1, b) - 2.0 * grid.at(a, b) + grid.at(a - 1, b) < 0.0) mark_concave(label + " closed form");
      }
    }
  }
  add_check(out, "ball", worst_ball <= 1e-9, "max relative difference for n1+n2 <= 10 = " + g6(worst_ball));
  add_check(out, "log-convexity", convex, convex_detail);
  finish(out);
  return out;
}

CriterionResult reproducing() {
  CriterionResult out{"reproducing", "Reproducing property of the kernel by quadrature", {}, {}, false, 0.0};
  out.table.columns = {"weight", "degree", "z_re", "z_im", "value_re", "value_im", "expected_re", "expected_im", "rel_err"};
  struct Case {
    WeightSpec weight;
    std::vector<Complex> coeffs;
    Complex z;
  };
  const std::vector<Case> cases = {
      {WeightSpec::disc(0.0), {1.0}, {0.3, 0.1}},
      {WeightSpec::disc(1.0), {0.0, 1.0}, {0.5, 0.0}},
      {WeightSpec::fock(2.0), {0.0, 0.0, 1.0}, {1.0, 0.5}},
      {WeightSpec::disc(2.5), {{1.0, 0.0}, {0.0, 2.0}, {-1.0, 0.0}}, {0.4, -0.3}},
      {WeightSpec::fock(4.0), {{0.5, 0.0}, {1.0, 0.0}}, {0.7, 0.2}},
      {WeightSpec::fock(3.0), {{0.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}}, {0.0, -0.5}},
  };
  double worst = 0.0;
  for (const auto& c : cases) {
    MomentSequence seq(c.weight);
    const HolomorphicCoeffs f(c.coeffs);
    const Complex value = reproduce_check(seq, f, c.z);
    const Complex expected = f(c.z);
    const double rel = std::abs(value - expected) / std::abs(expected);
    worst = std::max(worst, rel);
    out.table.rows.push_back({c.weight.describe(), std::int64_t{f.degree()}, c.z.real(), c.z.imag(), value.real(),
                              value.imag(), expected.real(), expected.imag(), rel});
  }
  add_check(out, "reproducing property", worst <= 1e-6, "max relative error = " + g6(worst));
  finish(out);
  return out;
}

CriterionResult psh_hypotheses() {
  CriterionResult out{"psh-hypotheses", "Hypothesis checks for plurisubharmonic weights on C^n", {}, {}, false, 0.0};
  out.table.columns = {"item", "value", "expected", "status"};
  auto abs2 = [](std::span<const Complex> z) {
    double s = 0.0;
    for (const auto& c : z) s += std::norm(c);
    return s;
  };
  const auto quadratic = nd::make_psh_weight(1, abs2, {10.0, 100.0, 1000.0});
  const auto linear =
      nd::make_psh_weight(1, [abs2](std::span<const Complex> z) { return std::sqrt(abs2(z)); }, {10.0, 100.0, 1000.0});

  const auto report = nd::check_hs_hypotheses(quadratic, 1.0, 2.0);
  for (const auto& c : report.checks) {
    out.table.rows.push_back({"|z|^2 " + c.name, c.detail, std::string("pass"), std::string(c.passed ? "pass" : "fail")});
  }
  add_check(out, "|z|^2 hypotheses", report.all_passed, report.conclusion);

  double worst = 0.0;
  for (Complex w : {Complex(1.0, 0.0), Complex(2.0, 0.0), Complex(1.0, 1.0)}) {
    const Complex pt[] = {w};
    const double value = nd::conjugate_transform(quadratic, pt);
    const double expected = std::norm(w) / 4.0;
    const double err = std::abs(value - expected) / std::max(1.0, expected);
    worst = std::max(worst, err);
    out.table.rows.push_back({"p*(" + fmt("%g", w.real()) + (w.imag() != 0.0 ? "+" + fmt("%gi", w.imag()) : "") + ")",
                              value, expected, std::string(err <= 1e-3 ? "pass" : "fail")});
  }
  add_check(out, "conjugate of |z|^2", worst <= 1e-3, "max error = " + g6(worst));

  const auto lin = nd::check_hs_hypotheses(linear, 1.0, 2.0);
  bool growth_failed = false;
  for (const auto& c : lin.checks) {
    if (c.name == "superlinear-growth") growth_failed = !c.passed;
    out.table.rows.push_back({"|z| " + c.name, c.detail, std::string(c.name == "superlinear-growth" ? "fail" : "any"),
                              std::string(c.passed ? "pass" : "fail")});
  }
  add_check(out, "|z| growth rejected", growth_failed, "superlinear-growth check fails for |z|");
  finish(out);
  return out;
}

}  // namespace

HolomorphicCoeffs random_polynomial(std::mt19937_64& rng, int degree) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Complex> c(static_cast<std::size_t>(degree) + 1);
  for (auto& v : c) {
    const double re = u(rng);
    v = {re, u(rng)};
  }
  if (c.back() == Complex{}) c.back() = 1.0;
  return HolomorphicCoeffs(std::move(c));
}

double defect_norm_quadrature(const HolomorphicCoeffs& f, double rho, const WeightSpec& weight, double rel_tol) {
  constexpr std::size_t kAngles = 64;
  const double support = weight.support_radius();
  auto g = [&](Complex z) { return std::conj(z) * f(rho * z); };

  // Cauchy-Schwarz bounds |<u, v>| by sqrt(<u, u> <v, v>), which sets the
  // absolute floor for integrals that cancel to zero.
  auto inner = [&](const std::function<Complex(Complex)>& u, const std::function<Complex(Complex)>& v,
                   double scale) {
    auto radial = [&](double r) -> Complex {
      const double d = weight.density(r);
      if (d == 0.0 || r == 0.0) return Complex{};
      auto ring = [&](double t) {
        const Complex z = std::polar(r, t);
        return u(z) * std::conj(v(z));
      };
      return quad::periodic_trapezoid(ring, kAngles) * (r * d);
    };
    quad::Options qopts;
    qopts.rel_tol = rel_tol;
    qopts.abs_tol = rel_tol * scale;
    return std::isfinite(support) ? quad::integrate_complex(radial, 0.0, support, qopts).value
                                  : quad::integrate_half_line_complex(radial, 0.0, qopts).value;
  };

  const double g_norm = inner(g, g, 0.0).real();
  const int max_j = std::max(f.degree(), 0) + 2;
  std::vector<Complex> proj(static_cast<std::size_t>(max_j) + 1);
  for (int j = 0; j <= max_j; ++j) {
    auto mono = [j](Complex z) { return std::pow(z, j); };
    const double mono_norm = inner(mono, mono, 0.0).real();
    proj[static_cast<std::size_t>(j)] = inner(g, mono, std::sqrt(g_norm * mono_norm)) / mono_norm;
  }
  const HolomorphicCoeffs pg(std::move(proj));
  auto defect = [&](Complex z) { return g(z) - pg(z); };
  return inner(defect, defect, 0.0).real();
}

const std::vector<std::string>& criterion_ids() {
  static const std::vector<std::string> ids = {
      "telescoping",        "disc-hs",   "fock-isometry",      "fock-trichotomy", "ball-divergence",
      "solver-exactness",   "norm-identity", "oracle-equivalence", "reproducing",  "psh-hypotheses"};
  return ids;
}

CriterionResult run_criterion(const std::string& id, const Options& opts) {
  if (id == "telescoping") return telescoping();
  if (id == "disc-hs") return disc_hs();
  if (id == "fock-isometry") return fock_isometry(opts);
  if (id == "fock-trichotomy") return fock_trichotomy();
  if (id == "ball-divergence") return ball_divergence();
  if (id == "solver-exactness") return solver_exactness(opts);
  if (id == "norm-identity") return norm_identity(opts);
  if (id == "oracle-equivalence") return oracle_equivalence();
  if (id == "reproducing") return reproducing();
  if (id == "psh-hypotheses") return psh_hypotheses();
  std::string known;
  for (const auto& k : criterion_ids()) known += (known.empty() ? "" : ", ") + k;
  throw ParameterError("unknown criterion '" + id + "' (known: " + known + ")");
}

std::vector<CriterionResult> run_all(const Options& opts) {
  std::vector<CriterionResult> results;
  for (const auto& id : criterion_ids()) results.push_back(run_criterion(id, opts));
  return results;
}

}  // namespace dbar::reproduce

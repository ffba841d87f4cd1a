#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dbar/ball2d.hpp"
#include "dbar/errors.hpp"
#include "dbar/reproduce.hpp"
#include "dbar/solver.hpp"
#include "dbar/spectrum.hpp"
#include "dbar/weights.hpp"
#include "dbar/weights_nd.hpp"
#include "json.hpp"
#include "output.hpp"

namespace {

using json = nlohmann::ordered_json;
using dbar::Complex;
using Footer = std::vector<std::pair<std::string, std::string>>;

enum ExitCode { kOk = 0, kParameter = 2, kInput = 3, kNumerical = 4, kAcceptance = 5 };

struct Settings {
  std::string weight = "disc:alpha=0";
  int n_max = 10;
  double tol = 1e-10;
  std::string format = "csv";
  std::string out;
  std::uint64_t seed = 20240611;
  std::string only;
};

struct Report {
  std::string command;
  json config = json::object();
  cli::Table table;
  Footer footer;
  json extra = json::object();
  std::string verdict;
  bool has_pass = false;
  bool pass = false;
};

std::string g17(double v) { return cli::csv_cell(v); }

cli::Format parse_format(const std::string& s) {
  if (s == "csv") return cli::Format::Csv;
  if (s == "json") return cli::Format::Json;
  throw dbar::InputError("--format must be csv or json, got '" + s + "'");
}

void write_report(std::ostream& os, const Report& r, cli::Format format) {
  if (format == cli::Format::Csv) {
    Footer footer = r.footer;
    if (!r.verdict.empty()) footer.emplace_back("verdict", r.verdict);
    if (r.has_pass) footer.emplace_back("result", r.pass ? "PASS" : "FAIL");
    cli::write_csv(os, r.table, footer);
    return;
  }
  json j;
  j["command"] = r.command;
  j["config"] = r.config;
  j["rows"] = cli::rows_json(r.table);
  if (!r.verdict.empty()) j["verdict"] = r.verdict;
  if (r.has_pass) j["pass"] = r.pass;
  for (const auto& [key, value] : r.extra.items()) j[key] = value;
  os << j.dump(2) << '\n';
}

void emit(const Report& r, const Settings& s) {
  const cli::Format format = parse_format(s.format);
  if (s.out.empty()) {
    write_report(std::cout, r, format);
    return;
  }
  std::ofstream file(s.out, std::ios::binary);
  if (!file) throw dbar::InputError("cannot open output file " + s.out);
  write_report(file, r, format);
}

json base_config(const Settings& s) {
  json c;
  c["weight"] = s.weight;
  c["n_max"] = s.n_max;
  return c;
}

void require_n_max(int n_max, int min = 0) {
  if (n_max < min) {
    throw dbar::ParameterError("--n-max must be >= " + std::to_string(min) + ", got " + std::to_string(n_max));
  }
}

Complex parse_complex(const std::string& text) {
  auto number = [&](const std::string& part) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(part, &used);
    } catch (const std::exception&) {
      throw dbar::InputError("expected a complex number 're' or 're,im', got '" + text + "'");
    }
    if (used != part.size()) throw dbar::InputError("expected a complex number 're' or 're,im', got '" + text + "'");
    return v;
  };
  const auto comma = text.find(',');
  if (comma == std::string::npos) return {number(text), 0.0};
  return {number(text.substr(0, comma)), number(text.substr(comma + 1))};
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

json coeffs_json(const dbar::HolomorphicCoeffs& f) {
  json a = json::array();
  for (const auto& c : f.coeffs()) a.push_back(complex_json(c));
  return a;
}

dbar::HolomorphicCoeffs read_coefficients(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw dbar::InputError("cannot read coefficient file " + path);
  json doc;
  try {
    doc = json::parse(file);
  } catch (const json::parse_error& e) {
    throw dbar::InputError("coefficient file " + path + " is not valid JSON: " + e.what());
  }
  if (!doc.is_array()) throw dbar::InputError("coefficient file must hold a JSON array of [re, im] pairs");
  std::vector<Complex> coeffs;
  for (std::size_t k = 0; k < doc.size(); ++k) {
    const auto& pair = doc[k];
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number()) {
      throw dbar::InputError("coefficient " + std::to_string(k) + " is not a [re, im] number pair");
    }
    const Complex c(pair[0].get<double>(), pair[1].get<double>());
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw dbar::InputError("coefficient " + std::to_string(k) + " is not finite");
    }
    coeffs.push_back(c);
  }
  return dbar::HolomorphicCoeffs(std::move(coeffs));
}

Report cmd_moments(const Settings& s, bool with_quadrature) {
  require_n_max(s.n_max);
  const auto weight = dbar::WeightSpec::parse(s.weight);
  dbar::MomentSequence seq(weight);
  Report r{"moments", base_config(s)};
  r.config["weight"] = weight.describe();
  r.table.columns = {"n", "log_c2", "c2", "ratio"};
  if (with_quadrature) {
    r.table.columns.push_back("log_c2_quadrature");
    r.config["tol"] = s.tol;
  }
  for (int n = 0; n <= s.n_max; ++n) {
    std::vector<cli::Cell> row = {std::int64_t{n}, seq.log_moment(n), cli::LogNumber{seq.log_moment(n)},
                                  cli::LogNumber{seq.log_ratio(n)}};
    if (with_quadrature) row.emplace_back(dbar::moment_quadrature(weight, n, s.tol));
    r.table.rows.push_back(std::move(row));
  }
  return r;
}

Report cmd_spectrum(const Settings& s, const dbar::ClassifyOptions& opts) {
  require_n_max(s.n_max);
  const auto weight = dbar::WeightSpec::parse(s.weight);
  dbar::MomentSequence seq(weight);
  const auto d = dbar::diagnose(seq, s.n_max, opts);
  const auto* fock = std::get_if<dbar::FockExponential>(&weight.variant());

  Report r{"spectrum", base_config(s)};
  r.config["weight"] = weight.describe();
  r.config["tail_start"] = opts.tail_start;
  r.config["tail_len"] = opts.tail_len;
  r.config["eps_zero"] = opts.eps_zero;
  r.config["big"] = opts.big;
  r.table.columns = {"n", "lambda_n", "partial_sum", "ratio", "stirling_surrogate"};
  for (int n = 0; n <= s.n_max; ++n) {
    const auto i = static_cast<std::size_t>(n);
    cli::Cell surrogate;
    if (fock && n >= 1) surrogate = dbar::stirling_surrogate(fock->m, n);
    r.table.rows.push_back({std::int64_t{n}, d.lambdas[i], d.partial_sums[i], d.ratios[i], surrogate});
  }

  const auto& e = d.classification.evidence;
  r.verdict = dbar::to_string(d.classification.verdict);
  r.footer = {{"tail_begin", std::to_string(e.tail_begin)},
              {"tail_end", std::to_string(e.tail_end)},
              {"lambda_tail_max", g17(e.lambda_tail_max)},
              {"lambda_tail_min", g17(e.lambda_tail_min)},
              {"ratio_tail", g17(e.ratio_tail)},
              {"ratio_drift", g17(e.ratio_drift)},
              {"decay_exponent", g17(e.decay_exponent)},
              {"extrapolated_ratio", g17(e.extrapolated_ratio)}};
  if (!e.note.empty()) r.footer.emplace_back("note", e.note);
  if (s.n_max >= 1) r.footer.emplace_back("bound_constant", g17(dbar::bound_constant(seq, s.n_max)));

  json ev = json::object();
  ev["tail_begin"] = e.tail_begin;
  ev["tail_end"] = e.tail_end;
  for (const auto& [key, value] : {std::pair{"lambda_tail_max", e.lambda_tail_max},
                                   {"lambda_tail_min", e.lambda_tail_min},
                                   {"ratio_tail", e.ratio_tail},
                                   {"ratio_drift", e.ratio_drift},
                                   {"decay_exponent", e.decay_exponent},
                                   {"extrapolated_ratio", e.extrapolated_ratio}}) {
    ev[key] = cli::json_cell(value);
  }
  if (!e.note.empty()) ev["note"] = e.note;
  r.extra["evidence"] = ev;
  if (s.n_max >= 1) r.extra["bound_constant"] = dbar::bound_constant(seq, s.n_max);
  return r;
}

struct SolveArgs {
  std::string coeffs;
  double rho = 1.0;
  int points = 100;
  double radius = 0.0;
  double step = 1e-5;
};

Report cmd_solve(const Settings& s, const SolveArgs& a) {
  const auto weight = dbar::WeightSpec::parse(s.weight);
  const auto f = read_coefficients(a.coeffs);
  dbar::MomentSequence seq(weight);
  const auto F = dbar::apply_solution_operator(f, seq);

  if (a.points < 1) throw dbar::ParameterError("--points must be positive");
  const double radius = a.radius > 0.0 ? a.radius : std::min(2.0, 0.9 * weight.support_radius());
  std::mt19937_64 rng(s.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Complex> pts;
  for (int i = 0; i < a.points; ++i) {
    pts.push_back(std::polar(radius * std::sqrt(unit(rng)), 2.0 * std::numbers::pi * unit(rng)));
  }

  double orth = 0.0;
  for (int j = 0; j <= f.degree() + 2; ++j) orth = std::max(orth, std::abs(dbar::monomial_inner_product(F, j, seq)));
  const double residual = dbar::dbar_residual(F, f, pts, a.step);
  const double defect = dbar::defect_norm_sq(f, a.rho, seq);
  const double fnorm = dbar::norm_sq(f, seq);

  Report r{"solve", json::object()};
  r.config["weight"] = weight.describe();
  r.config["coeffs"] = a.coeffs;
  r.config["rho"] = a.rho;
  r.config["points"] = a.points;
  r.config["radius"] = radius;
  r.config["step"] = a.step;
  r.config["seed"] = s.seed;

  r.table.columns = {"k", "g_re", "g_im", "h_re", "h_im"};
  const int top = std::max(F.conj_factor.degree(), F.holo_part.degree());
  for (int k = 0; k <= top; ++k) {
    const Complex g = F.conj_factor.coeff(k), h = F.holo_part.coeff(k);
    r.table.rows.push_back({std::int64_t{k}, g.real(), g.imag(), h.real(), h.imag()});
  }
  r.footer = {{"norm_sq", g17(defect)},
              {"f_norm_sq", g17(fnorm)},
              {"max_orthogonality_residual", g17(orth)},
              {"dbar_residual", g17(residual)}};
  if (f.degree() >= 1) r.footer.emplace_back("bound_constant", g17(dbar::bound_constant(seq, f.degree())));

  r.extra["hybrid"] = {{"g", coeffs_json(F.conj_factor)}, {"h", coeffs_json(F.holo_part)}};
  r.extra["norm_sq"] = defect;
  r.extra["f_norm_sq"] = fnorm;
  r.extra["max_orthogonality_residual"] = orth;
  r.extra["dbar_residual"] = residual;
  if (a.rho < 1.0) {
    const auto p = dbar::project_dilated(f, a.rho, seq);
    r.extra["projection"] = coeffs_json(p);
    std::ostringstream text;
    for (std::size_t k = 0; k < p.coeffs().size(); ++k) {
      text << (k ? " " : "") << g17(p.coeffs()[k].real()) << (p.coeffs()[k].imag() < 0 ? "" : "+")
           << g17(p.coeffs()[k].imag()) << "i";
    }
    r.footer.emplace_back("projection", text.str());
  }
  return r;
}

Report cmd_kernel(const Settings& s, const std::string& z_text, const std::string& w_text,
                  const std::string& coeffs, double tol) {
  const auto weight = dbar::WeightSpec::parse(s.weight);
  dbar::MomentSequence seq(weight);
  const Complex z = parse_complex(z_text), w = parse_complex(w_text);
  const double kernel_tol = std::clamp(tol, 2e-14, 1e-3);
  const Complex k = dbar::kernel_eval(seq, z, w, kernel_tol);

  Report r{"kernel", json::object()};
  r.config["weight"] = weight.describe();
  r.config["z"] = complex_json(z);
  r.config["w"] = complex_json(w);
  r.config["tol"] = kernel_tol;
  r.table.columns = {"z_re", "z_im", "w_re", "w_im", "kernel_re", "kernel_im"};
  std::vector<cli::Cell> row = {z.real(), z.imag(), w.real(), w.imag(), k.real(), k.imag()};
  if (!coeffs.empty()) {
    const auto f = read_coefficients(coeffs);
    const Complex value = dbar::reproduce_check(seq, f, z);
    const Complex expected = f(z);
    r.config["coeffs"] = coeffs;
    for (const char* c : {"reproduced_re", "reproduced_im", "expected_re", "expected_im"}) r.table.columns.push_back(c);
    row.insert(row.end(), {value.real(), value.imag(), expected.real(), expected.imag()});
  }
  r.table.rows.push_back(std::move(row));
  return r;
}

Report cmd_gamma(double m, int k_min, int k_max) {
  if (k_min < 1 || k_max < k_min) throw dbar::ParameterError("need 1 <= --k-min <= --k-max");
  Report r{"gamma", json::object()};
  r.config["m"] = m;
  r.config["k_min"] = k_min;
  r.config["k_max"] = k_max;
  r.table.columns = {"k", "gamma_ratio_difference", "stirling_surrogate", "rel_diff"};
  for (int k = k_min; k <= k_max; ++k) {
    const double g = dbar::gamma_ratio_difference(m, k);
    const double sur = dbar::stirling_surrogate(m, k);
    r.table.rows.push_back({std::int64_t{k}, g, sur, std::abs(g - sur) / std::abs(g)});
  }
  return r;
}

Report cmd_ball(double alpha, int n_max, bool with_quadrature) {
  require_n_max(n_max);
  const auto grid = dbar::ball::make_ball_grid(alpha, n_max);
  Report r{"ball", json::object()};
  r.config["alpha"] = alpha;
  r.config["n_max"] = n_max;
  r.table.columns = {"n1", "n2", "log_c2", "c2", "energy_1", "energy_2"};
  if (with_quadrature) r.table.columns.push_back("log_c2_quadrature");
  for (int n1 = 0; n1 <= n_max; ++n1) {
    for (int n2 = 0; n2 <= n_max; ++n2) {
      std::vector<cli::Cell> row = {std::int64_t{n1}, std::int64_t{n2}, grid.at(n1, n2), cli::LogNumber{grid.at(n1, n2)},
                                    dbar::ball::form_energy(alpha, n1, n2, 1),
                                    dbar::ball::form_energy(alpha, n1, n2, 2)};
      if (with_quadrature) row.emplace_back(dbar::ball::ball_moment_quadrature(alpha, n1, n2));
      r.table.rows.push_back(std::move(row));
    }
  }
  return r;
}

Report cmd_ball_sums(double alpha, int n_max) {
  require_n_max(n_max);
  Report r{"ball-sums", json::object()};
  r.config["alpha"] = alpha;
  r.config["n_max"] = n_max;
  r.table.columns = {"N", "partial_sum"};
  for (int N = 0; N <= n_max; ++N) {
    r.table.rows.push_back({std::int64_t{N}, dbar::ball::ball_hs_partial_sum(alpha, N)});
  }
  return r;
}

Report cmd_ball_kernel(double alpha, const std::vector<std::string>& z_text, const std::vector<std::string>& w_text,
                       double tol) {
  auto point = [](const std::vector<std::string>& parts) {
    if (parts.size() != 2) throw dbar::InputError("a point of C^2 needs two complex coordinates");
    return dbar::ball::Point{parse_complex(parts[0]), parse_complex(parts[1])};
  };
  const auto z = point(z_text), w = point(w_text);
  const double series_tol = std::clamp(tol, 2e-14, 1e-3);
  const Complex series = dbar::ball::ball_kernel_series(alpha, z, w, series_tol);
  const Complex closed = dbar::ball::ball_kernel_closed(alpha, z, w);
  Report r{"ball-kernel", json::object()};
  r.config["alpha"] = alpha;
  r.config["z"] = json::array({complex_json(z[0]), complex_json(z[1])});
  r.config["w"] = json::array({complex_json(w[0]), complex_json(w[1])});
  r.config["tol"] = series_tol;
  r.table.columns = {"series_re", "series_im", "closed_re", "closed_im", "rel_diff", "constant"};
  r.table.rows.push_back({series.real(), series.imag(), closed.real(), closed.imag(),
                          std::abs(series - closed) / std::abs(closed), dbar::ball::ball_kernel_constant(alpha)});
  return r;
}

struct PshArgs {
  double power = 2.0;
  int dimension = 1;
  double tau = 1.0;
  double sigma = 2.0;
  int grid = 64;
  int refinements = 2;
  std::vector<double> radii = {10.0, 100.0, 1000.0};
  std::string conjugate_at;
  std::string shift_at;
  std::string double_at;
  double outer_radius = 64.0;
};

Report cmd_psh(const PshArgs& a) {
  if (!(a.power > 0.0)) throw dbar::ParameterError("--power must be positive");
  const double k = a.power;
  const auto weight = dbar::nd::make_psh_weight(
      a.dimension,
      [k](std::span<const Complex> z) {
        double s = 0.0;
        for (const auto& c : z) s += std::norm(c);
        return std::pow(s, k / 2.0);
      },
      a.radii);
  dbar::nd::HypothesisOptions opts;
  opts.sup = {a.grid, a.refinements};
  const auto report = dbar::nd::check_hs_hypotheses(weight, a.tau, a.sigma, opts);

  Report r{"psh", json::object()};
  r.config["p"] = "|z|^" + g17(k);
  r.config["dimension"] = a.dimension;
  r.config["tau"] = a.tau;
  r.config["sigma"] = a.sigma;
  r.config["grid"] = a.grid;
  r.config["refinements"] = a.refinements;
  r.config["sample_radii"] = a.radii;
  r.table.columns = {"item", "passed", "detail"};
  for (const auto& c : report.checks) {
    r.table.rows.push_back({c.name, std::string(c.passed ? "true" : "false"), c.detail});
  }
  auto at = [&](const std::string& text) {
    std::vector<Complex> z(static_cast<std::size_t>(a.dimension));
    z[0] = parse_complex(text);
    return z;
  };
  if (!a.conjugate_at.empty()) {
    r.table.rows.push_back({"conjugate", std::string(), g17(dbar::nd::conjugate_transform(weight, at(a.conjugate_at), opts.sup))});
  }
  if (!a.shift_at.empty()) {
    r.table.rows.push_back({"sup-shift", std::string(), g17(dbar::nd::sup_shift(weight, at(a.shift_at), opts.sup))});
  }
  if (!a.double_at.empty()) {
    r.table.rows.push_back({"double-conjugate", std::string(),
                            g17(dbar::nd::double_conjugate(weight, at(a.double_at), a.outer_radius, opts.sup))});
  }
  r.verdict = report.conclusion;
  r.has_pass = true;
  r.pass = report.all_passed;
  return r;
}

cli::Table to_cli_table(const dbar::reproduce::Table& t) {
  cli::Table out{t.columns, {}};
  for (const auto& row : t.rows) {
    std::vector<cli::Cell> cells;
    for (const auto& c : row) std::visit([&](const auto& v) { cells.emplace_back(v); }, c);
    out.rows.push_back(std::move(cells));
  }
  return out;
}

int cmd_reproduce(const Settings& s) {
  namespace rp = dbar::reproduce;
  const cli::Format format = parse_format(s.format);
  const std::string dir = s.out.empty() ? "reproduce-output" : s.out;
  std::vector<std::string> ids = rp::criterion_ids();
  if (!s.only.empty()) {
    if (std::find(ids.begin(), ids.end(), s.only) == ids.end()) rp::run_criterion(s.only);
    ids = {s.only};
  }
  std::filesystem::create_directories(dir);

  rp::Options opts;
  opts.seed = s.seed;
  cli::Table summary{{"criterion", "result"}, {}};
  bool all = true;
  for (const auto& id : ids) {
    const auto res = rp::run_criterion(id, opts);
    all = all && res.passed;
    Report r{"reproduce", json::object()};
    r.config["criterion"] = id;
    r.config["seed"] = s.seed;
    r.table = to_cli_table(res.table);
    json checks = json::array();
    for (const auto& c : res.checks) {
      r.footer.emplace_back("check " + c.name, std::string(c.passed ? "PASS" : "FAIL") + " " + c.detail);
      checks.push_back({{"name", c.name}, {"pass", c.passed}, {"detail", c.detail}});
    }
    r.extra["title"] = res.title;
    r.extra["checks"] = checks;
    r.has_pass = true;
    r.pass = res.passed;

    const std::string path = dir + "/" + id + (format == cli::Format::Csv ? ".csv" : ".json");
    std::ofstream file(path, std::ios::binary);
    if (!file) throw dbar::InputError("cannot write " + path);
    write_report(file, r, format);
    summary.rows.push_back({id, std::string(res.passed ? "PASS" : "FAIL")});
    std::cout << (res.passed ? "PASS " : "FAIL ") << id << '\n';
  }

  Report sum{"reproduce", json::object()};
  sum.config["seed"] = s.seed;
  sum.config["only"] = s.only.empty() ? json(nullptr) : json(s.only);
  sum.table = summary;
  sum.has_pass = true;
  sum.pass = all;
  std::ofstream file(dir + "/summary" + (format == cli::Format::Csv ? ".csv" : ".json"), std::ios::binary);
  write_report(file, sum, format);
  return all ? kOk : kAcceptance;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weighted Bergman space toolkit: moments, spectra and the canonical dbar solution operator"};
  app.require_subcommand(1);
  Settings s;

  auto add_common = [&](CLI::App* sub, bool weight = true) {
    if (weight) sub->add_option("--weight", s.weight, "disc:alpha=<a> or fock:m=<m>")->capture_default_str();
    sub->add_option("--format", s.format, "csv or json")->capture_default_str();
    sub->add_option("--out", s.out, "output path (default: standard output)");
  };

  int exit_code = kOk;
  auto run = [&](auto&& body) {
    return [&, body]() {
      Report r = body();
      emit(r, s);
    };
  };

  auto* moments = app.add_subcommand("moments", "ln c_n^2, c_n^2 and ratios");
  add_common(moments);
  moments->add_option("--n-max", s.n_max)->capture_default_str();
  moments->add_option("--tol", s.tol, "quadrature tolerance for --quadrature")->capture_default_str();
  bool moments_quad = false;
  moments->add_flag("--quadrature", moments_quad, "add a quadrature column");
  moments->callback(run([&] { return cmd_moments(s, moments_quad); }));

  auto* spectrum = app.add_subcommand("spectrum", "eigenvalues, partial sums and classification");
  add_common(spectrum);
  spectrum->add_option("--n-max", s.n_max)->capture_default_str();
  dbar::ClassifyOptions copts;
  spectrum->add_option("--tail-start", copts.tail_start)->capture_default_str();
  spectrum->add_option("--tail-len", copts.tail_len)->capture_default_str();
  spectrum->add_option("--eps-zero", copts.eps_zero)->capture_default_str();
  spectrum->add_option("--big", copts.big)->capture_default_str();
  spectrum->callback(run([&] { return cmd_spectrum(s, copts); }));

  auto* solve = app.add_subcommand("solve", "apply the solution operator to a polynomial");
  add_common(solve);
  SolveArgs sargs;
  solve->add_option("coeffs", sargs.coeffs, "JSON file with [re, im] Taylor coefficients")->required();
  solve->add_option("--rho", sargs.rho, "dilation for the defect norm")->capture_default_str();
  solve->add_option("--points", sargs.points, "sample points for the dbar residual")->capture_default_str();
  solve->add_option("--radius", sargs.radius, "sample radius (default min(2, 0.9 R))");
  solve->add_option("--step", sargs.step, "finite-difference step")->capture_default_str();
  solve->add_option("--seed", s.seed)->capture_default_str();
  solve->callback(run([&] { return cmd_solve(s, sargs); }));

  auto* kernel = app.add_subcommand("kernel", "kernel K(z, w) and the reproducing check");
  add_common(kernel);
  std::string kz = "0", kw = "0", kcoeffs;
  kernel->add_option("--z", kz, "re or re,im")->capture_default_str();
  kernel->add_option("--w", kw, "re or re,im")->capture_default_str();
  kernel->add_option("--coeffs", kcoeffs, "polynomial to reproduce at z");
  double series_tol = 1e-13;
  kernel->add_option("--tol", series_tol, "series tolerance")->capture_default_str();
  kernel->callback(run([&] { return cmd_kernel(s, kz, kw, kcoeffs, series_tol); }));

  auto* gamma = app.add_subcommand("gamma", "Fock eigenvalue differences and their surrogate");
  add_common(gamma, false);
  double gm = 4.0;
  int k_min = 1, k_max = 10;
  gamma->add_option("--m", gm)->capture_default_str();
  gamma->add_option("--k-min", k_min)->capture_default_str();
  gamma->add_option("--k-max", k_max)->capture_default_str();
  gamma->callback(run([&] { return cmd_gamma(gm, k_min, k_max); }));

  auto* ball = app.add_subcommand("ball", "moments and form energies on the unit ball of C^2");
  add_common(ball, false);
  double alpha = 0.0;
  bool ball_quad = false;
  ball->add_option("--alpha", alpha)->capture_default_str();
  ball->add_option("--n-max", s.n_max)->capture_default_str();
  ball->add_flag("--quadrature", ball_quad, "add a quadrature column");
  ball->callback(run([&] { return cmd_ball(alpha, s.n_max, ball_quad); }));

  auto* ball_sums = app.add_subcommand("ball-sums", "Hilbert-Schmidt partial sums on the unit ball");
  add_common(ball_sums, false);
  ball_sums->add_option("--alpha", alpha)->capture_default_str();
  ball_sums->add_option("--n-max", s.n_max)->capture_default_str();
  ball_sums->callback(run([&] { return cmd_ball_sums(alpha, s.n_max); }));

  auto* ball_kernel = app.add_subcommand("ball-kernel", "ball kernel by series and closed form");
  add_common(ball_kernel, false);
  std::vector<std::string> bz = {"0", "0"}, bw = {"0", "0"};
  ball_kernel->add_option("--alpha", alpha)->capture_default_str();
  ball_kernel->add_option("--z", bz, "two coordinates, each re or re,im")->expected(2);
  ball_kernel->add_option("--w", bw, "two coordinates, each re or re,im")->expected(2);
  ball_kernel->add_option("--tol", series_tol, "series tolerance")->capture_default_str();
  ball_kernel->callback(run([&] { return cmd_ball_kernel(alpha, bz, bw, series_tol); }));

  auto* psh = app.add_subcommand("psh", "hypothesis checks for p(z) = |z|^k on C^n");
  add_common(psh, false);
  PshArgs pargs;
  psh->add_option("--power", pargs.power, "k in p(z) = |z|^k")->capture_default_str();
  psh->add_option("--dimension", pargs.dimension)->capture_default_str();
  psh->add_option("--tau", pargs.tau)->capture_default_str();
  psh->add_option("--sigma", pargs.sigma)->capture_default_str();
  psh->add_option("--grid", pargs.grid)->capture_default_str();
  psh->add_option("--refinements", pargs.refinements)->capture_default_str();
  psh->add_option("--radii", pargs.radii)->delimiter(',')->capture_default_str();
  psh->add_option("--conjugate-at", pargs.conjugate_at, "p*(w e1)");
  psh->add_option("--shift-at", pargs.shift_at, "p~(z e1)");
  psh->add_option("--double-at", pargs.double_at, "p**(z e1)");
  psh->add_option("--outer-radius", pargs.outer_radius)->capture_default_str();
  psh->callback(run([&] { return cmd_psh(pargs); }));

  auto* reproduce = app.add_subcommand("reproduce", "run the acceptance suite and write one artifact per criterion");
  add_common(reproduce, false);
  reproduce->add_option("--seed", s.seed)->capture_default_str();
  reproduce->add_option("--only", s.only, "run a single criterion");
  reproduce->callback([&] { exit_code = cmd_reproduce(s); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInput;
  } catch (const dbar::ParameterError& e) {
    std::cerr << "parameter error: " << e.what() << '\n';
    return kParameter;
  } catch (const dbar::DomainError& e) {
    std::cerr << "parameter error: " << e.what() << '\n';
    return kParameter;
  } catch (const dbar::ResourceError& e) {
    std::cerr << "parameter error: " << e.what() << '\n';
    return kParameter;
  } catch (const dbar::InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInput;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInput;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  }
  return exit_code;
}
